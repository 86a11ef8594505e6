#pragma once

#include <array>
#include <utility>

#include "dendrite/grid.hpp"
#include "dendrite/params.hpp"
#include "dendrite/state.hpp"

namespace dendrite {

// Double well F = (phi^2-1)^2 and its scaled derivative f = F'/4 = phi^3 - phi.
std::pair<ScalarField, ScalarField> double_well(const ScalarField& phi);

// Latent heat function p and its derivative p'.
// Quintic: p = phi^5/5 - 2 phi^3/3 + phi, p' = (1-phi^2)^2.
// Cubic:   p = phi - phi^3/3,             p' = 1-phi^2.
std::pair<ScalarField, ScalarField> latent(const ScalarField& phi,
                                           const Params& p);
ScalarField latent_pprime(const ScalarField& phi, const Params& p);

// Pointwise anisotropy factor and its derivative with respect to the
// gradient vector. Fourfold uses the quartic-ratio form; other fold counts
// in 2D use 1 + eps4*cos(m*Theta) with the full-angle Theta = atan2(gy, gx).
// Below the |g|^2 < eta threshold: kappa = 1, H = 0.
double kappa_point(const std::array<double, 3>& g, int dims, const Params& p);
std::array<double, 3> kappa_deriv_point(const std::array<double, 3>& g,
                                        int dims, const Params& p);

ScalarField aniso_kappa(const VectorField& grad, const Params& p);
VectorField aniso_kappa_deriv(const VectorField& grad, const Params& p);

// div( kappa^2 grad(phi) + kappa |grad(phi)|^2 H ), gradients spectral,
// flux assembled pointwise in real space.
ScalarField aniso_divergence(const ScalarField& phi, const Params& p);

// Free energy: integral of 1/2 |kappa grad(phi)|^2 + F/(4 eps^2)
//            + lambda/(2 eps K) u^2.
double energy_original(const ScalarField& phi, const ScalarField& u,
                       const Params& p);

// U = sqrt(1/2 |kappa grad(phi)|^2 + F/(4 eps^2) + B), pointwise.
ScalarField quadratize_U(const ScalarField& phi, const Params& p);

// Z = (-aniso_divergence(phi) + f/eps^2) / U; denominator >= sqrt(B).
ScalarField z_of(const ScalarField& phi, const Params& p);

// Strong-form residual of the governing system for given fields and time
// derivatives; used for manufactured solutions and equilibrium checks.
//   r_phi = tau phi_t - aniso_divergence(phi) + f/eps^2 + (lambda/eps) p' u
//   r_u   = u_t - D lap(u) - K p'_heat phi_t
// where p'_heat is p' or 1 under LatentVariant::UnitDerivative.
std::pair<ScalarField, ScalarField> residual(const ScalarField& phi,
                                             const ScalarField& u,
                                             const ScalarField& phi_t,
                                             const ScalarField& u_t,
                                             const Params& p);

// BDF2 Lyapunov functional of the quadratized scheme, evaluated from the
// current and previous levels held by the state. Requires U levels.
double energy_modified(const State& s, const Params& p);

} // namespace dendrite
