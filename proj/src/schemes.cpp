#include "dendrite/schemes.hpp"

#include <cmath>
#include <cstdio>

#include "dendrite/model.hpp"
#include "dendrite/spectral.hpp"

namespace dendrite {
namespace {

// phi is a [-1, 1] order parameter; legitimate spectral overshoot stays
// within a few percent of that range, so crossing 2 means the run is lost.
constexpr double kBlowupThreshold = 2.0;

void check_step_health(const ScalarField& phi, const ScalarField& u,
                       long step) {
  double m = 0.0;
  bool finite = true;
  for (double v : phi.values) {
    if (!std::isfinite(v)) { finite = false; break; }
    m = std::fmax(m, std::fabs(v));
  }
  if (finite)
    for (double v : u.values)
      if (!std::isfinite(v)) { finite = false; break; }
  if (!finite)
    throw DivergenceError(step, "non-finite field values at step " +
                                    std::to_string(step));
  if (m > kBlowupThreshold)
    throw DivergenceError(step, "max|phi| = " + std::to_string(m) +
                                    " exceeded blow-up threshold at step " +
                                    std::to_string(step));
}

void require_finite(const ScalarField& f, long step, const char* what) {
  if (!f.all_finite())
    throw DivergenceError(step, std::string(what) +
                                    " is non-finite at step " +
                                    std::to_string(step));
}

} // namespace

const char* scheme_name(SchemeKind k) {
  switch (k) {
    case SchemeKind::LS: return "ls";
    case SchemeKind::SLS: return "sls";
    case SchemeKind::IEQ: return "ieq";
    case SchemeKind::SIEQ: return "sieq";
  }
  return "?";
}

std::optional<SchemeKind> scheme_from_name(const std::string& name) {
  if (name == "ls") return SchemeKind::LS;
  if (name == "sls") return SchemeKind::SLS;
  if (name == "ieq") return SchemeKind::IEQ;
  if (name == "sieq") return SchemeKind::SIEQ;
  return std::nullopt;
}

bool uses_quadratization(SchemeKind k) {
  return k == SchemeKind::IEQ || k == SchemeKind::SIEQ;
}

bool is_stabilized(SchemeKind k) {
  return k == SchemeKind::SLS || k == SchemeKind::SIEQ;
}

Params effective_params(Params p, SchemeKind k) {
  if (!is_stabilized(k)) {
    p.s1 = 0.0;
    p.s2 = 0.0;
  } else if (p.s1 == 0.0 && p.s2 == 0.0) {
    std::fprintf(stderr,
                 "warning: %s configured with S1 = S2 = 0; this is the "
                 "unstabilized scheme\n",
                 scheme_name(k));
  }
  return p;
}

State startup(const ScalarField& phi0, const ScalarField& u0, const Params& p,
              SchemeKind kind) {
  require_same_grid(phi0.grid, u0.grid, "startup");
  State s;
  s.phi = phi0;
  s.phi_prev = phi0;
  s.u = u0;
  s.u_prev = u0;
  if (uses_quadratization(kind)) {
    s.bigU = quadratize_U(phi0, p);
    s.bigU_prev = s.bigU;
    s.has_bigU = true;
  }
  s.t = 0.0;
  s.step = 0;
  return s;
}

std::pair<ScalarField, ScalarField> extrapolate(const State& s) {
  ScalarField phi_s(s.phi.grid), u_s(s.phi.grid);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(phi_s.size()); ++i) {
    phi_s[i] = 2.0 * s.phi[i] - s.phi_prev[i];
    u_s[i] = 2.0 * s.u[i] - s.u_prev[i];
  }
  return {std::move(phi_s), std::move(u_s)};
}

SolverStats step_scheme1(State& s, const Params& p, const ForcingFn* forcing) {
  const Grid& g = s.phi.grid;
  const double dt = p.dt;
  const double ieps2 = 1.0 / (p.eps * p.eps);
  const double t_new = (s.step + 1) * dt;

  auto [phi_s, u_s] = extrapolate(s);
  require_finite(phi_s, s.step + 1, "extrapolated phi");

  std::pair<ScalarField, ScalarField> force;
  if (forcing) force = (*forcing)(t_new);

  // step 1: ((3 tau / 2 dt) + S1/eps^2 - S2 lap) phi_new = explicit sources
  ScalarField adiv = aniso_divergence(phi_s, p);
  ScalarField f = double_well(phi_s).second;
  ScalarField pp_s = latent_pprime(phi_s, p);

  ScalarField hist(g); // 2 phi^n - phi^{n-1}
  ScalarField rhs(g);
  const double c_tau = p.tau / (2.0 * dt);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(rhs.size()); ++i) {
    hist[i] = 2.0 * s.phi[i] - s.phi_prev[i];
    rhs[i] = c_tau * (4.0 * s.phi[i] - s.phi_prev[i]) +
             p.s1 * ieps2 * hist[i] + adiv[i] - ieps2 * f[i] -
             (p.lambda / p.eps) * pp_s[i] * u_s[i];
  }
  if (p.s2 != 0.0) {
    ScalarField lap_hist = laplacian(hist);
    for (std::size_t i = 0; i < rhs.size(); ++i)
      rhs[i] -= p.s2 * lap_hist[i];
  }
  if (forcing)
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += force.first[i];
  require_finite(rhs, s.step + 1, "phase equation source");
  ScalarField phi_new =
      solve_helmholtz(3.0 * p.tau / (2.0 * dt) + p.s1 * ieps2, p.s2, rhs);

  // step 2: ((3 / 2 dt) - D lap) u_new = BDF2 history + latent heat release
  ScalarField pp_new = p.latent_variant == LatentVariant::UnitDerivative
                           ? ScalarField(g, 1.0)
                           : latent_pprime(phi_new, p);
  ScalarField rhs_u(g);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(rhs_u.size()); ++i) {
    const double bdf2_phi =
        (3.0 * phi_new[i] - 4.0 * s.phi[i] + s.phi_prev[i]) / (2.0 * dt);
    rhs_u[i] = (4.0 * s.u[i] - s.u_prev[i]) / (2.0 * dt) +
               p.bigK * pp_new[i] * bdf2_phi;
  }
  if (forcing)
    for (std::size_t i = 0; i < rhs_u.size(); ++i) rhs_u[i] += force.second[i];
  require_finite(rhs_u, s.step + 1, "heat equation source");
  ScalarField u_new = solve_helmholtz(3.0 / (2.0 * dt), p.diffD, rhs_u);

  check_step_health(phi_new, u_new, s.step + 1);

  s.phi_prev = std::move(s.phi);
  s.phi = std::move(phi_new);
  s.u_prev = std::move(s.u);
  s.u = std::move(u_new);
  ++s.step;
  s.t = s.step * dt;
  return SolverStats{0, 0.0, true};
}

ScalarField CoupledOperator::apply_Q(const ScalarField& phi) const {
  const Params& p = params;
  const double a =
      3.0 * p.tau / (2.0 * p.dt) + p.s1 / (p.eps * p.eps);
  ScalarField out(phi.grid);
  if (p.s2 != 0.0) {
    ScalarField lap = laplacian(phi);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = a * phi[i] - p.s2 * lap[i] +
               0.5 * zstar[i] * zstar[i] * phi[i];
  } else {
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = a * phi[i] + 0.5 * zstar[i] * zstar[i] * phi[i];
  }
  return out;
}

void CoupledOperator::apply(const ScalarField& phi, const ScalarField& u,
                            ScalarField& r1, ScalarField& r2) const {
  const Params& p = params;
  r1 = apply_Q(phi);
  const double le = p.lambda / p.eps;
  for (std::size_t i = 0; i < r1.size(); ++i)
    r1[i] += le * pprime_star[i] * u[i];

  const double cu = p.lambda / (p.eps * p.bigK);
  ScalarField lap_u = laplacian(u);
  r2 = ScalarField(phi.grid);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(r2.size()); ++i)
    r2[i] = cu * u[i] - (2.0 * p.dt / 3.0) * cu * p.diffD * lap_u[i] -
            le * pprime_heat_star[i] * phi[i];
}

CoupledOperator CoupledOperator::make(const Params& p, ScalarField zstar,
                                      ScalarField pprime_star,
                                      ScalarField pprime_heat_star) {
  double s = 0.0;
  for (double z : zstar.values) s += 0.5 * z * z;
  s /= double(zstar.size());
  return CoupledOperator{p, std::move(zstar), std::move(pprime_star),
                         std::move(pprime_heat_star), s};
}

void CoupledOperator::precondition(const ScalarField& w1,
                                   const ScalarField& w2, ScalarField& phi,
                                   ScalarField& u) const {
  const Params& p = params;
  const double a1 =
      3.0 * p.tau / (2.0 * p.dt) + p.s1 / (p.eps * p.eps) + zsq_mean;
  phi = solve_helmholtz(a1, p.s2, w1);
  const double cu = p.lambda / (p.eps * p.bigK);
  u = solve_helmholtz(cu, (2.0 * p.dt / 3.0) * cu * p.diffD, w2);
}

SolverStats step_scheme2(State& s, const Params& p, const ForcingFn* forcing,
                         const GmresOptions& opts) {
  if (!s.has_bigU)
    throw std::invalid_argument("step_scheme2: state carries no U levels");
  const Grid& g = s.phi.grid;
  const std::size_t n = g.npoints();
  const double dt = p.dt;
  const double ieps2 = 1.0 / (p.eps * p.eps);
  const double t_new = (s.step + 1) * dt;

  auto [phi_s, u_s] = extrapolate(s);
  require_finite(phi_s, s.step + 1, "extrapolated phi");

  ScalarField zs = z_of(phi_s, p);
  if (p.dealias) zs = dealias_23(zs);
  require_finite(zs, s.step + 1, "Z*");
  ScalarField pp_s = latent_pprime(phi_s, p);
  ScalarField pp_heat = p.latent_variant == LatentVariant::UnitDerivative
                            ? ScalarField(g, 1.0)
                            : pp_s;

  // A1 = (4 U^n - U^{n-1})/3 - (1/2) Z* (4 phi^n - phi^{n-1})/3
  ScalarField a1(g), hist(g);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(n); ++i) {
    hist[i] = 2.0 * s.phi[i] - s.phi_prev[i];
    a1[i] = (4.0 * s.bigU[i] - s.bigU_prev[i]) / 3.0 -
            zs[i] * (4.0 * s.phi[i] - s.phi_prev[i]) / 6.0;
  }

  // f1, f2: history sides of the eliminated system
  ScalarField f1(g), f2(g);
  const double c_tau = p.tau / (2.0 * dt);
  const double le = p.lambda / p.eps;
  const double cu = p.lambda / (p.eps * p.bigK);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(n); ++i) {
    f1[i] = c_tau * (4.0 * s.phi[i] - s.phi_prev[i]) +
            p.s1 * ieps2 * hist[i] - zs[i] * a1[i];
    f2[i] = (cu / 3.0) * (4.0 * s.u[i] - s.u_prev[i]) -
            (le / 3.0) * pp_heat[i] * (4.0 * s.phi[i] - s.phi_prev[i]);
  }
  if (p.s2 != 0.0) {
    ScalarField lap_hist = laplacian(hist);
    for (std::size_t i = 0; i < n; ++i) f1[i] -= p.s2 * lap_hist[i];
  }
  if (forcing) {
    auto [f_phi, f_u] = (*forcing)(t_new);
    for (std::size_t i = 0; i < n; ++i) {
      f1[i] += f_phi[i];
      f2[i] += (2.0 * dt / 3.0) * cu * f_u[i];
    }
  }
  require_finite(f1, s.step + 1, "coupled system source");

  CoupledOperator op = CoupledOperator::make(p, std::move(zs), std::move(pp_s),
                                             std::move(pp_heat));

  auto pack = [n](const ScalarField& a, const ScalarField& b,
                  std::vector<double>& out) {
    out.resize(2 * n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i];
    for (std::size_t i = 0; i < n; ++i) out[n + i] = b[i];
  };
  auto unpack = [n, &g](const std::vector<double>& v, ScalarField& a,
                        ScalarField& b) {
    a = ScalarField(g);
    b = ScalarField(g);
    for (std::size_t i = 0; i < n; ++i) a[i] = v[i];
    for (std::size_t i = 0; i < n; ++i) b[i] = v[n + i];
  };

  // Row equilibration: the phi equation carries a 3 tau/(2 dt) mass term
  // while the u equation sits at lambda/(eps K). Scaling both rows to unit
  // diagonal keeps the relative GMRES tolerance meaningful for each block;
  // otherwise the u block is solved ever more loosely as dt shrinks.
  const double row1 = 2.0 * dt / (3.0 * p.tau);
  const double row2 = (p.eps * p.bigK) / p.lambda;

  std::vector<double> b, x;
  pack(f1, f2, b);
  for (std::size_t i = 0; i < n; ++i) {
    b[i] *= row1;
    b[n + i] *= row2;
  }
  pack(phi_s, u_s, x); // warm start from the extrapolation

  ScalarField ta(g), tb(g), ra(g), rb(g);
  LinearMap apply_A = [&](const std::vector<double>& in,
                          std::vector<double>& out) {
    unpack(in, ta, tb);
    op.apply(ta, tb, ra, rb);
    pack(ra, rb, out);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] *= row1;
      out[n + i] *= row2;
    }
  };
  LinearMap apply_Minv = [&](const std::vector<double>& in,
                             std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i) {
      ta[i] = in[i] / row1;
      tb[i] = in[n + i] / row2;
    }
    op.precondition(ta, tb, ra, rb);
    pack(ra, rb, out);
  };

  GmresResult res = gmres(apply_A, apply_Minv, b, x, opts);
  if (!res.converged)
    throw SolverError(res.iterations, res.relative_residual,
                      "coupled solve failed to converge at step " +
                          std::to_string(s.step + 1));

  ScalarField phi_new(g), u_new(g);
  unpack(x, phi_new, u_new);

#ifndef NDEBUG
  {
    // substitution check: the solution must satisfy the assembled system
    // (measured in the equilibrated norm the solver converged in)
    ScalarField r1(g), r2(g);
    op.apply(phi_new, u_new, r1, r2);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d1 = row1 * (r1[i] - f1[i]);
      const double d2 = row2 * (r2[i] - f2[i]);
      num += d1 * d1 + d2 * d2;
      den += row1 * f1[i] * row1 * f1[i] + row2 * f2[i] * row2 * f2[i];
    }
    if (den > 0.0 && std::sqrt(num / den) > 100.0 * opts.tol)
      throw SolverError(res.iterations, std::sqrt(num / den),
                        "substitution residual exceeds tolerance");
  }
#endif

  check_step_health(phi_new, u_new, s.step + 1);

  // U update from the eliminated relation
  ScalarField bigU_new(g);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(n); ++i)
    bigU_new[i] = 0.5 * op.zstar[i] * phi_new[i] + a1[i];

  s.phi_prev = std::move(s.phi);
  s.phi = std::move(phi_new);
  s.u_prev = std::move(s.u);
  s.u = std::move(u_new);
  s.bigU_prev = std::move(s.bigU);
  s.bigU = std::move(bigU_new);
  ++s.step;
  s.t = s.step * dt;
  return SolverStats{res.iterations, res.relative_residual, true};
}

} // namespace dendrite
