#include "dendrite/simulation.hpp"

#include <cmath>

namespace dendrite {

RunOutcome run_case(const SimCase& c, const StepCallback& after_step) {
  const Params p = effective_params(c.params, c.kind);
  p.validate();

  RunOutcome out;
  out.state = startup(c.phi0, c.u0, p, c.kind);

  const long n_steps = std::max<long>(1, std::llround(c.t_final / p.dt));
  const ForcingFn* forcing = c.forcing ? &c.forcing : nullptr;
  const bool quad = uses_quadratization(c.kind);

  // the step functions only mutate the state once the new fields pass their
  // health checks, so the pre-throw state is always intact
  for (long i = 0; i < n_steps; ++i) {
    try {
      SolverStats stats = quad
                              ? step_scheme2(out.state, p, forcing, c.gmres)
                              : step_scheme1(out.state, p, forcing);
      if (after_step) after_step(out.state, stats);
    } catch (const DivergenceError& e) {
      out.diverged = true;
      out.diverged_step = e.step;
      out.reason = e.what();
      return out;
    } catch (const SolverError& e) {
      out.diverged = true;
      out.diverged_step = out.state.step + 1;
      out.reason = e.what();
      return out;
    }
  }
  return out;
}

} // namespace dendrite
