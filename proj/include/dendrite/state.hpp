#pragma once

#include <string>

#include "dendrite/grid.hpp"

namespace dendrite {

// Two time levels of (phi, u), plus two levels of the auxiliary variable U
// for the quadratized schemes. All fields share one grid.
struct State {
  ScalarField phi, phi_prev;
  ScalarField u, u_prev;
  ScalarField bigU, bigU_prev; // empty unless has_bigU
  bool has_bigU = false;
  double t = 0.0;
  long step = 0;
};

// Per-sample diagnostics of a run.
struct EnergyRecord {
  long step = 0;
  double time = 0.0;
  double e_original = 0.0;
  double e_modified = 0.0;   // valid only if has_modified
  bool has_modified = false;
  double radius = 0.0;
  double phi_min = 0.0;
  double phi_max = 0.0;
  int solver_iters = 0;
  double solver_residual = 0.0;
};

// A step produced a non-finite field or |phi| left the physical range by a
// wide margin; carries the offending step index.
struct DivergenceError : std::runtime_error {
  long step;
  DivergenceError(long step_, const std::string& what)
      : std::runtime_error(what), step(step_) {}
};

// The iterative linear solver did not reach its tolerance.
struct SolverError : std::runtime_error {
  int iterations;
  double residual;
  SolverError(int iters, double res, const std::string& what)
      : std::runtime_error(what), iterations(iters), residual(res) {}
};

} // namespace dendrite
