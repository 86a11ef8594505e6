#include "dendrite/model.hpp"

#include <cmath>

#include "dendrite/spectral.hpp"

namespace dendrite {
namespace {

void check_fold_count(int dims, const Params& p) {
  if (dims == 3 && p.m != 4)
    throw std::invalid_argument(
        "anisotropy: 3D supports fourfold (m = 4) only");
  if (p.m < 3) throw std::invalid_argument("anisotropy: m must be >= 3");
}

} // namespace

std::pair<ScalarField, ScalarField> double_well(const ScalarField& phi) {
  ScalarField F(phi.grid), f(phi.grid);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(phi.size()); ++i) {
    const double v = phi[i];
    const double w = v * v - 1.0;
    F[i] = w * w;
    f[i] = v * v * v - v;
  }
  return {std::move(F), std::move(f)};
}

std::pair<ScalarField, ScalarField> latent(const ScalarField& phi,
                                           const Params& p) {
  ScalarField pv(phi.grid), pprime(phi.grid);
  const bool quintic = p.p_choice == LatentChoice::Quintic;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(phi.size()); ++i) {
    const double v = phi[i];
    if (quintic) {
      pv[i] = v * v * v * v * v / 5.0 - 2.0 * v * v * v / 3.0 + v;
      const double w = 1.0 - v * v;
      pprime[i] = w * w;
    } else {
      pv[i] = v - v * v * v / 3.0;
      pprime[i] = 1.0 - v * v;
    }
  }
  return {std::move(pv), std::move(pprime)};
}

ScalarField latent_pprime(const ScalarField& phi, const Params& p) {
  return latent(phi, p).second;
}

double kappa_point(const std::array<double, 3>& g, [[maybe_unused]] int dims,
                   const Params& p) {
  const double g2 = g[0] * g[0] + g[1] * g[1] + g[2] * g[2];
  if (g2 < p.eta) return 1.0;
  if (p.m == 4) {
    const double s4 = g[0] * g[0] * g[0] * g[0] + g[1] * g[1] * g[1] * g[1] +
                      g[2] * g[2] * g[2] * g[2];
    return (1.0 - 3.0 * p.eps4) + 4.0 * p.eps4 * s4 / (g2 * g2);
  }
  const double theta = std::atan2(g[1], g[0]);
  return 1.0 + p.eps4 * std::cos(p.m * theta);
}

std::array<double, 3> kappa_deriv_point(const std::array<double, 3>& g,
                                        int dims, const Params& p) {
  const double g2 = g[0] * g[0] + g[1] * g[1] + g[2] * g[2];
  if (g2 < p.eta) return {0.0, 0.0, 0.0};
  if (p.m == 4) {
    const double s4 = g[0] * g[0] * g[0] * g[0] + g[1] * g[1] * g[1] * g[1] +
                      g[2] * g[2] * g[2] * g[2];
    const double c = 16.0 * p.eps4 / (g2 * g2 * g2);
    std::array<double, 3> h{0.0, 0.0, 0.0};
    for (int a = 0; a < dims; ++a) h[a] = c * g[a] * (g[a] * g[a] * g2 - s4);
    return h;
  }
  const double theta = std::atan2(g[1], g[0]);
  const double c = p.m * p.eps4 * std::sin(p.m * theta) / g2;
  return {c * g[1], -c * g[0], 0.0};
}

ScalarField aniso_kappa(const VectorField& grad, const Params& p) {
  check_fold_count(grad.grid.dims, p);
  const int dims = grad.grid.dims;
  ScalarField k(grad.grid);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(k.size()); ++i) {
    std::array<double, 3> g{grad[0][i], grad[1][i],
                            dims == 3 ? grad[2][i] : 0.0};
    k[i] = kappa_point(g, dims, p);
  }
  return k;
}

VectorField aniso_kappa_deriv(const VectorField& grad, const Params& p) {
  check_fold_count(grad.grid.dims, p);
  const int dims = grad.grid.dims;
  VectorField h(grad.grid);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(grad[0].size()); ++i) {
    std::array<double, 3> g{grad[0][i], grad[1][i],
                            dims == 3 ? grad[2][i] : 0.0};
    const std::array<double, 3> hv = kappa_deriv_point(g, dims, p);
    for (int a = 0; a < dims; ++a) h[a][i] = hv[a];
  }
  return h;
}

ScalarField aniso_divergence(const ScalarField& phi, const Params& p) {
  check_fold_count(phi.grid.dims, p);
  const int dims = phi.grid.dims;
  VectorField g = gradient(phi);
  VectorField flux(phi.grid);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(phi.size()); ++i) {
    std::array<double, 3> gv{g[0][i], g[1][i], dims == 3 ? g[2][i] : 0.0};
    const double g2 = gv[0] * gv[0] + gv[1] * gv[1] + gv[2] * gv[2];
    const double kap = kappa_point(gv, dims, p);
    const std::array<double, 3> h = kappa_deriv_point(gv, dims, p);
    for (int a = 0; a < dims; ++a)
      flux[a][i] = kap * kap * gv[a] + kap * g2 * h[a];
  }
  if (p.dealias) {
    // optional robustness filter on the nonlinear flux before the divergence
    for (int a = 0; a < dims; ++a) flux[a] = dealias_23(flux[a]);
  }
  return divergence(flux);
}

double energy_original(const ScalarField& phi, const ScalarField& u,
                       const Params& p) {
  require_same_grid(phi.grid, u.grid, "energy_original");
  const int dims = phi.grid.dims;
  VectorField g = gradient(phi);
  const double cf = 1.0 / (4.0 * p.eps * p.eps);
  const double cu = p.lambda / (2.0 * p.eps * p.bigK);
  double sum = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    std::array<double, 3> gv{g[0][i], g[1][i], dims == 3 ? g[2][i] : 0.0};
    const double g2 = gv[0] * gv[0] + gv[1] * gv[1] + gv[2] * gv[2];
    const double kap = kappa_point(gv, dims, p);
    const double w = phi[i] * phi[i] - 1.0;
    sum += 0.5 * kap * kap * g2 + cf * w * w + cu * u[i] * u[i];
  }
  return sum * phi.grid.cell_volume();
}

ScalarField quadratize_U(const ScalarField& phi, const Params& p) {
  const int dims = phi.grid.dims;
  VectorField g = gradient(phi);
  ScalarField U(phi.grid);
  const double cf = 1.0 / (4.0 * p.eps * p.eps);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(phi.size()); ++i) {
    std::array<double, 3> gv{g[0][i], g[1][i], dims == 3 ? g[2][i] : 0.0};
    const double g2 = gv[0] * gv[0] + gv[1] * gv[1] + gv[2] * gv[2];
    const double kap = kappa_point(gv, dims, p);
    const double w = phi[i] * phi[i] - 1.0;
    U[i] = std::sqrt(0.5 * kap * kap * g2 + cf * w * w + p.bigB);
  }
  return U;
}

ScalarField z_of(const ScalarField& phi, const Params& p) {
  check_fold_count(phi.grid.dims, p);
  const int dims = phi.grid.dims;
  // one gradient feeds both the flux divergence and the quadratized variable
  VectorField g = gradient(phi);
  VectorField flux(phi.grid);
  ScalarField U(phi.grid);
  const double cf = 1.0 / (4.0 * p.eps * p.eps);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(phi.size()); ++i) {
    std::array<double, 3> gv{g[0][i], g[1][i], dims == 3 ? g[2][i] : 0.0};
    const double g2 = gv[0] * gv[0] + gv[1] * gv[1] + gv[2] * gv[2];
    const double kap = kappa_point(gv, dims, p);
    const std::array<double, 3> h = kappa_deriv_point(gv, dims, p);
    for (int a = 0; a < dims; ++a)
      flux[a][i] = kap * kap * gv[a] + kap * g2 * h[a];
    const double w = phi[i] * phi[i] - 1.0;
    U[i] = std::sqrt(0.5 * kap * kap * g2 + cf * w * w + p.bigB);
  }
  if (p.dealias)
    for (int a = 0; a < dims; ++a) flux[a] = dealias_23(flux[a]);
  ScalarField div = divergence(flux);

  ScalarField z(phi.grid);
  const double ieps2 = 1.0 / (p.eps * p.eps);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(phi.size()); ++i) {
    const double v = phi[i];
    const double f = v * v * v - v;
    z[i] = (-div[i] + ieps2 * f) / U[i];
  }
  return z;
}

std::pair<ScalarField, ScalarField> residual(const ScalarField& phi,
                                             const ScalarField& u,
                                             const ScalarField& phi_t,
                                             const ScalarField& u_t,
                                             const Params& p) {
  require_same_grid(phi.grid, u.grid, "residual");
  ScalarField div = aniso_divergence(phi, p);
  ScalarField lap_u = laplacian(u);
  ScalarField pprime = latent_pprime(phi, p);
  const bool unit = p.latent_variant == LatentVariant::UnitDerivative;

  ScalarField r_phi(phi.grid), r_u(phi.grid);
  const double ieps2 = 1.0 / (p.eps * p.eps);
  const double le = p.lambda / p.eps;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(phi.size()); ++i) {
    const double v = phi[i];
    const double f = v * v * v - v;
    r_phi[i] = p.tau * phi_t[i] - div[i] + ieps2 * f + le * pprime[i] * u[i];
    const double ph = unit ? 1.0 : pprime[i];
    r_u[i] = u_t[i] - p.diffD * lap_u[i] - p.bigK * ph * phi_t[i];
  }
  return {std::move(r_phi), std::move(r_u)};
}

double energy_modified(const State& s, const Params& p) {
  if (!s.has_bigU)
    throw std::invalid_argument(
        "energy_modified: state carries no auxiliary U levels");
  const Grid& g = s.phi.grid;
  ScalarField diff(g), two_minus_u(g), two_minus_U(g);
  for (std::size_t i = 0; i < diff.size(); ++i) {
    diff[i] = s.phi[i] - s.phi_prev[i];
    two_minus_u[i] = 2.0 * s.u[i] - s.u_prev[i];
    two_minus_U[i] = 2.0 * s.bigU[i] - s.bigU_prev[i];
  }
  const double nU = inner(s.bigU, s.bigU);
  const double nU2 = inner(two_minus_U, two_minus_U);
  const double nu = inner(s.u, s.u);
  const double nu2 = inner(two_minus_u, two_minus_u);
  const double ndiff = inner(diff, diff);

  double ngrad = 0.0;
  if (p.s2 != 0.0) {
    VectorField gd = gradient(diff);
    for (int a = 0; a < g.dims; ++a) ngrad += inner(gd[a], gd[a]);
  }

  const double cu = p.lambda / (2.0 * p.eps * p.bigK);
  return 0.5 * (nU + nU2) + cu * 0.5 * (nu + nu2) +
         0.5 * p.s1 / (p.eps * p.eps) * ndiff + 0.5 * p.s2 * ngrad;
}

} // namespace dendrite
