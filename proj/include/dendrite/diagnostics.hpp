#pragma once

#include <utility>
#include <vector>

#include "dendrite/simulation.hpp"

namespace dendrite {

// Equivalent radius of the solid region: A = integral of (phi+1)/2; a disk
// in 2D, a ball in 3D. Negative area from undershoots is clamped to zero
// with a warning on stderr.
double crystal_radius(const ScalarField& phi);

struct RadiusSeries {
  std::vector<double> times;
  std::vector<double> radii;
};

struct ConvergenceReport {
  std::vector<double> dts;
  std::vector<double> errors_phi, errors_u;
  std::vector<double> slopes_phi, slopes_u; // pairwise log ratios
  double order_phi = 0.0, order_u = 0.0;    // least-squares fits
};

// Needs at least 3 strictly decreasing step sizes.
ConvergenceReport convergence_order(const std::vector<double>& dts,
                                    const std::vector<double>& errors_phi,
                                    const std::vector<double>& errors_u);

// Manufactured solution phi = sin(x) cos(y) cos(t), u = cos(x) sin(y) cos(t)
// on a periodic 2D grid, with its analytic time derivatives.
ScalarField mms_phi(const Grid& g, double t);
ScalarField mms_u(const Grid& g, double t);
ScalarField mms_phi_t(const Grid& g, double t);
ScalarField mms_u_t(const Grid& g, double t);

// Source fields that make the manufactured solution exact: the residual of
// the governing system evaluated on the exact fields.
std::pair<ScalarField, ScalarField> mms_forcing(const Grid& g, double t,
                                                const Params& p);
ForcingFn make_mms_forcing(const Grid& g, const Params& p);

struct MmsErrors {
  double err_phi = 0.0, err_u = 0.0; // L2 errors at the final time
  bool diverged = false;
  long diverged_step = -1;
};

// Runs one manufactured-solution case and measures final-time L2 errors.
MmsErrors mms_run(const Grid& g, const Params& p, SchemeKind kind, double dt,
                  double t_final);

struct SweepEntry {
  SchemeKind kind;
  double dt;
  bool converged = false;
  long diverged_step = -1;
  double final_energy = 0.0; // original energy of the last completed state
};

// Runs every (scheme, dt) pair of the scenario to final time or divergence.
std::vector<SweepEntry> stability_sweep(const SimCase& base,
                                        const std::vector<SchemeKind>& kinds,
                                        const std::vector<double>& dts);

// One ledger row for the current state.
EnergyRecord make_energy_record(const State& s, const SolverStats& stats,
                                const Params& p);

} // namespace dendrite
