#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "dendrite/gmres.hpp"
#include "dendrite/grid.hpp"
#include "dendrite/params.hpp"
#include "dendrite/state.hpp"

namespace dendrite {

// LS is SLS with both stabilizers zeroed, IEQ likewise for SIEQ; the pairs
// share one code path each.
enum class SchemeKind { LS, SLS, IEQ, SIEQ };

const char* scheme_name(SchemeKind k);
std::optional<SchemeKind> scheme_from_name(const std::string& name);
bool uses_quadratization(SchemeKind k); // IEQ | SIEQ
bool is_stabilized(SchemeKind k);       // SLS | SIEQ

// LS/IEQ force s1 = s2 = 0 regardless of configured values; SLS/SIEQ with
// both stabilizers zero triggers a warning on stderr.
Params effective_params(Params p, SchemeKind k);

struct SolverStats {
  int iterations = 0;
  double final_residual = 0.0;
  bool converged = true;
};

// Manufactured-solution source terms (f_phi, f_u) evaluated at a given time.
using ForcingFn =
    std::function<std::pair<ScalarField, ScalarField>(double t)>;

// Duplicates the initial data into both history levels; quadratized schemes
// also get U(0) = quadratize_U(phi0) in both levels. The degenerate first
// BDF2 step reduces to a first-order implicit step.
State startup(const ScalarField& phi0, const ScalarField& u0, const Params& p,
              SchemeKind kind);

// Second-order extrapolations 2 v^n - v^{n-1} of phi and u.
std::pair<ScalarField, ScalarField> extrapolate(const State& s);

// Stabilized-explicit BDF2 step: two decoupled constant-coefficient solves.
SolverStats step_scheme1(State& s, const Params& p,
                         const ForcingFn* forcing = nullptr);

// Quadratized BDF2 step: one coupled solve for (phi, u) by preconditioned
// GMRES, then the algebraic update of U.
SolverStats step_scheme2(State& s, const Params& p,
                         const ForcingFn* forcing = nullptr,
                         const GmresOptions& opts = {});

// The frozen-coefficient linear system of one quadratized step,
//   r1 = Q(phi) + (lambda/eps) p'* u,
//   r2 = (lambda/(eps K)) u - (2 dt/3)(lambda D/(eps K)) lap u
//        - (lambda/eps) p'_heat* phi,
// with Q(phi) = (3 tau/(2 dt) + S1/eps^2) phi - S2 lap phi
//             + (1/2) Z* (Z* phi).
struct CoupledOperator {
  Params params;
  ScalarField zstar;
  ScalarField pprime_star;      // enters r1
  ScalarField pprime_heat_star; // enters r2 (all-ones under UnitDerivative)
  double zsq_mean = 0.0;        // spatial mean of Z*^2/2

  static CoupledOperator make(const Params& p, ScalarField zstar,
                              ScalarField pprime_star,
                              ScalarField pprime_heat_star);

  ScalarField apply_Q(const ScalarField& phi) const;
  void apply(const ScalarField& phi, const ScalarField& u, ScalarField& r1,
             ScalarField& r2) const;
  // Exact Fourier inverse of the constant-coefficient block diagonal; the
  // variable part of Q enters through the spatial mean of Z*^2/2.
  void precondition(const ScalarField& w1, const ScalarField& w2,
                    ScalarField& phi, ScalarField& u) const;
};

} // namespace dendrite
