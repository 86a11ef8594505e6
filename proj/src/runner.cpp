#include "dendrite/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <memory>

#include "dendrite/diagnostics.hpp"
#include "dendrite/io.hpp"

namespace dendrite {

SimCase make_sim_case(const RunConfig& cfg) {
  cfg.validate();
  SimCase c;
  c.grid = cfg.grid;
  c.params = cfg.params;
  c.kind = cfg.scheme;
  auto [phi0, u0] = build_initial(cfg.ic, cfg.grid);
  c.phi0 = std::move(phi0);
  c.u0 = std::move(u0);
  c.t_final = cfg.t_final;
  if (cfg.ic.type == IcType::Mms)
    c.forcing = make_mms_forcing(cfg.grid, effective_params(cfg.params, cfg.scheme));
  return c;
}

int run(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  const SimCase c = make_sim_case(cfg);
  const Params eff = effective_params(cfg.params, cfg.scheme);

  fs::create_directories(cfg.output_dir);
  std::unique_ptr<CsvWriter> csv;
  if (cfg.outputs.csv)
    csv = std::make_unique<CsvWriter>(cfg.output_dir + "/energy.csv");

  auto heavy_outputs = [&](const State& s) {
    char stamp[32];
    std::snprintf(stamp, sizeof stamp, "%08ld", s.step);
    if (cfg.outputs.fields) {
      dump_field(s.phi, cfg.output_dir + "/phi_" + stamp + ".f64", "phi", s.t);
      dump_field(s.u, cfg.output_dir + "/u_" + stamp + ".f64", "u", s.t);
    }
    if (cfg.outputs.images)
      render_image(s.phi, cfg.output_dir + "/phi_" + stamp + ".pgm");
  };

  // sample the initial state as step 0
  {
    State s0 = startup(c.phi0, c.u0, eff, cfg.scheme);
    if (csv) csv->write(make_energy_record(s0, SolverStats{}, eff));
    heavy_outputs(s0);
  }

  StepCallback cb = [&](const State& s, const SolverStats& stats) {
    if (csv && (s.step % cfg.sample_every == 0))
      csv->write(make_energy_record(s, stats, eff));
    if (s.step % cfg.outputs.render_every == 0) heavy_outputs(s);
  };

  RunOutcome out = run_case(c, cb);
  if (out.diverged) {
    if (csv) csv->comment("diverged at step " + std::to_string(out.diverged_step) +
                          ": " + out.reason);
    std::fprintf(stderr, "run diverged at step %ld: %s\n", out.diverged_step,
                 out.reason.c_str());
    return kRunDiverged;
  }
  // make sure the final state is always on record
  if (csv && (out.state.step % cfg.sample_every != 0))
    csv->write(make_energy_record(out.state, SolverStats{}, eff));
  heavy_outputs(out.state);
  return kRunOk;
}

} // namespace dendrite
