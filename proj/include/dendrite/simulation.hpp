#pragma once

#include <functional>
#include <string>

#include "dendrite/schemes.hpp"

namespace dendrite {

// Everything needed to march one simulation to its final time.
struct SimCase {
  Grid grid;
  Params params;
  SchemeKind kind = SchemeKind::SIEQ;
  ScalarField phi0, u0;
  double t_final = 1.0;
  ForcingFn forcing; // empty unless manufactured solutions are in play
  GmresOptions gmres;
};

struct RunOutcome {
  State state; // last successfully completed state
  bool diverged = false;
  long diverged_step = -1;
  std::string reason;
};

using StepCallback = std::function<void(const State&, const SolverStats&)>;

// Marches round(t_final/dt) steps; a divergence or solver failure stops the
// run and is reported as an outcome, not rethrown.
RunOutcome run_case(const SimCase& c, const StepCallback& after_step = {});

} // namespace dendrite
