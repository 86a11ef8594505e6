#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dendrite/diagnostics.hpp"
#include "dendrite/io.hpp"
#include "dendrite/runner.hpp"

using namespace dendrite;

namespace {

struct Overrides {
  double dt = -1.0;
  std::string scheme;
  double t_final = -1.0;
  std::string out_dir;
  bool full_scale = false;
  int m = -1;
  double K = -1.0;
  long render_every = -1;
  long sample_every = -1;
  bool images = false;
  bool fields = false;
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--dt", ov.dt, "time step");
  cmd->add_option("--scheme", ov.scheme, "ls | sls | ieq | sieq");
  cmd->add_option("--t-final", ov.t_final, "final time");
  cmd->add_option("--out", ov.out_dir, "output directory");
  cmd->add_option("--m", ov.m, "anisotropy fold count");
  cmd->add_option("--K", ov.K, "latent heat coefficient");
  cmd->add_option("--render-every", ov.render_every,
                  "steps between rendered images (enables images)");
  cmd->add_option("--sample-every", ov.sample_every,
                  "steps between energy samples");
  cmd->add_flag("--images", ov.images, "write PGM snapshots of phi");
  cmd->add_flag("--fields", ov.fields, "write raw field dumps");
}

void apply_overrides(RunConfig& cfg, const Overrides& ov) {
  if (ov.dt > 0.0) cfg.params.dt = ov.dt;
  if (!ov.scheme.empty()) {
    auto k = scheme_from_name(ov.scheme);
    if (!k) throw ConfigError("unknown scheme \"" + ov.scheme + "\"");
    cfg.scheme = *k;
  }
  if (ov.t_final > 0.0) cfg.t_final = ov.t_final;
  if (!ov.out_dir.empty()) cfg.output_dir = ov.out_dir;
  if (ov.m > 0) cfg.params.m = ov.m;
  if (ov.K > 0.0) cfg.params.bigK = ov.K;
  if (ov.render_every > 0) {
    cfg.outputs.render_every = ov.render_every;
    cfg.outputs.images = true;
  }
  if (ov.sample_every > 0) cfg.sample_every = ov.sample_every;
  if (ov.images) cfg.outputs.images = true;
  if (ov.fields) cfg.outputs.fields = true;
  cfg.validate();
}

std::vector<SchemeKind> parse_scheme_list(const std::string& csv) {
  std::vector<SchemeKind> kinds;
  std::string token;
  for (char ch : csv + ",") {
    if (ch == ',') {
      if (!token.empty()) {
        auto k = scheme_from_name(token);
        if (!k) throw ConfigError("unknown scheme \"" + token + "\"");
        kinds.push_back(*k);
        token.clear();
      }
    } else {
      token += ch;
    }
  }
  return kinds;
}

int do_run(RunConfig cfg, const Overrides& ov, bool print_config) {
  apply_overrides(cfg, ov);
  if (print_config) {
    std::fputs(config_to_json_text(cfg).c_str(), stdout);
    return kRunOk;
  }
  const int status = run(cfg);
  if (status == kRunOk)
    std::printf("run complete: t = %g, outputs in %s\n", cfg.t_final,
                cfg.output_dir.c_str());
  return status;
}

int do_mms_convergence(const std::string& schemes_csv,
                       std::vector<double> dts, int n, double t_final) {
  RunConfig base = preset("accuracy-2d");
  Grid grid = Grid::make_2d(n, n, base.grid.length[0], base.grid.length[1]);

  if (dts.empty()) dts = {1.0e-2, 5.0e-3, 2.5e-3, 1.25e-3};

  for (SchemeKind kind : parse_scheme_list(schemes_csv)) {
    std::vector<double> errs_phi, errs_u;
    std::printf("scheme %s\n", scheme_name(kind));
    std::printf("  %-10s %-14s %-14s\n", "dt", "err_phi", "err_u");
    for (double dt : dts) {
      MmsErrors e = mms_run(grid, base.params, kind, dt, t_final);
      if (e.diverged) {
        std::printf("  %-10g diverged at step %ld\n", dt, e.diverged_step);
        errs_phi.clear();
        break;
      }
      std::printf("  %-10g %-14.6e %-14.6e\n", dt, e.err_phi, e.err_u);
      errs_phi.push_back(e.err_phi);
      errs_u.push_back(e.err_u);
    }
    if (errs_phi.size() == dts.size() && dts.size() >= 3) {
      ConvergenceReport rep = convergence_order(dts, errs_phi, errs_u);
      std::printf("  fitted order: phi %.3f, u %.3f\n", rep.order_phi,
                  rep.order_u);
    }
  }
  return 0;
}

int do_stability_sweep(const std::string& preset_name,
                       const std::string& schemes_csv, std::vector<double> dts,
                       double t_final) {
  RunConfig cfg = preset(preset_name);
  if (t_final > 0.0) cfg.t_final = t_final;
  SimCase base = make_sim_case(cfg);

  if (dts.empty()) dts = {1.0, 1.0e-1, 1.0e-2, 1.0e-3};
  std::vector<SchemeKind> kinds = parse_scheme_list(schemes_csv);

  std::printf("%-6s %-10s %-22s %-16s\n", "scheme", "dt", "outcome",
              "final_energy");
  for (const SweepEntry& row : stability_sweep(base, kinds, dts)) {
    char outcome[64];
    if (row.converged) std::snprintf(outcome, sizeof outcome, "converged");
    else
      std::snprintf(outcome, sizeof outcome, "diverged at step %ld",
                    row.diverged_step);
    std::printf("%-6s %-10g %-22s %-16.8g\n", scheme_name(row.kind), row.dt,
                outcome, row.final_energy);
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral solver for anisotropic dendritic "
               "crystal growth with energy-stable time stepping"};
  app.require_subcommand(1);

  // run <config>
  auto* cmd_run = app.add_subcommand("run", "run a JSON config file");
  std::string config_path;
  cmd_run->add_option("config", config_path, "path to config JSON")
      ->required();
  Overrides ov_run;
  add_override_flags(cmd_run, ov_run);
  bool print_run = false;
  cmd_run->add_flag("--print-config", print_run,
                    "print the effective config and exit");

  // preset <name>
  auto* cmd_preset =
      app.add_subcommand("preset", "run a named benchmark preset");
  std::string preset_name;
  cmd_preset->add_option("name", preset_name, "preset name")->required();
  Overrides ov_preset;
  add_override_flags(cmd_preset, ov_preset);
  cmd_preset->add_flag("--full-scale", ov_preset.full_scale,
                       "use the full benchmark resolution");
  bool print_preset = false;
  cmd_preset->add_flag("--print-config", print_preset,
                       "print the effective config and exit");

  // presets
  auto* cmd_list = app.add_subcommand("presets", "list available presets");

  // mms-convergence
  auto* cmd_mms =
      app.add_subcommand("mms-convergence", "temporal convergence study "
                                            "against manufactured solutions");
  std::string mms_schemes = "sls,sieq";
  std::vector<double> mms_dts;
  int mms_n = 128;
  double mms_T = 1.0;
  cmd_mms->add_option("--schemes", mms_schemes, "comma-separated scheme list");
  cmd_mms->add_option("--dts", mms_dts, "time steps (decreasing)");
  cmd_mms->add_option("--n", mms_n, "grid points per axis");
  cmd_mms->add_option("--t-final", mms_T, "final time");

  // stability-sweep
  auto* cmd_sweep = app.add_subcommand(
      "stability-sweep", "run (scheme, dt) pairs to completion or blow-up");
  std::string sweep_preset = "circle-sieq";
  std::string sweep_schemes = "ls,sls,ieq,sieq";
  std::vector<double> sweep_dts;
  double sweep_T = -1.0;
  cmd_sweep->add_option("--preset", sweep_preset, "scenario preset");
  cmd_sweep->add_option("--schemes", sweep_schemes,
                        "comma-separated scheme list");
  cmd_sweep->add_option("--dts", sweep_dts, "time steps to try");
  cmd_sweep->add_option("--t-final", sweep_T, "final time override");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed())
      return do_run(load_config(config_path), ov_run, print_run);
    if (cmd_preset->parsed())
      return do_run(preset(preset_name, ov_preset.full_scale), ov_preset,
                    print_preset);
    if (cmd_list->parsed()) {
      for (const auto& name : preset_names()) std::printf("%s\n", name.c_str());
      return 0;
    }
    if (cmd_mms->parsed())
      return do_mms_convergence(mms_schemes, mms_dts, mms_n, mms_T);
    if (cmd_sweep->parsed())
      return do_stability_sweep(sweep_preset, sweep_schemes, sweep_dts,
                                sweep_T);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kRunIoError;
  } catch (const IoError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kRunIoError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kRunIoError;
  }
  return 0;
}
