// Acceptance suite: every benchmark claim the artifact must reproduce, one
// test case per criterion, each printing a [PASS]/[FAIL] line.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "dendrite/config.hpp"
#include "dendrite/diagnostics.hpp"
#include "dendrite/model.hpp"
#include "dendrite/runner.hpp"
#include "dendrite/spectral.hpp"
#include "test_helpers.hpp"

using namespace dendrite;
using namespace dendrite::testing;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void report(int id, const char* title, bool ok, double seconds) {
  std::printf("[%s] criterion %d: %s (%.1f s)\n", ok ? "PASS" : "FAIL", id,
              title, seconds);
  std::fflush(stdout);
  CHECK_MESSAGE(ok, "criterion ", id, ": ", title);
}

// largest step-to-step increase of a series, relative to 1 + |value|
double max_relative_increase(const std::vector<double>& e) {
  double worst = -1e300;
  for (std::size_t i = 1; i < e.size(); ++i)
    worst = std::fmax(worst, (e[i] - e[i - 1]) / (1.0 + std::fabs(e[i - 1])));
  return worst;
}

SimCase circle_case(SchemeKind kind, double dt, double t_final) {
  RunConfig cfg = preset("circle-sieq");
  SimCase c = make_sim_case(cfg);
  c.kind = kind;
  c.params.dt = dt;
  c.t_final = t_final;
  return c;
}

std::array<double, 3> fd_kappa_gradient(const std::array<double, 3>& g,
                                        int dims, const Params& p) {
  const double h = 1e-6;
  std::array<double, 3> out{0.0, 0.0, 0.0};
  for (int a = 0; a < dims; ++a) {
    std::array<double, 3> gp = g, gm = g;
    gp[a] += h;
    gm[a] -= h;
    out[a] = (kappa_point(gp, dims, p) - kappa_point(gm, dims, p)) / (2.0 * h);
  }
  return out;
}

} // namespace

TEST_CASE("criterion 1: second-order temporal convergence of SLS and SIEQ") {
  Timer timer;
  Grid grid = Grid::make_2d(128, 128, two_pi, two_pi);
  Params p = preset("accuracy-2d").params;
  const std::vector<double> dts{1e-2, 5e-3, 2.5e-3, 1.25e-3};

  bool ok = true;
  for (SchemeKind kind : {SchemeKind::SLS, SchemeKind::SIEQ}) {
    std::vector<double> ephi, eu;
    for (double dt : dts) {
      MmsErrors e = mms_run(grid, p, kind, dt, 1.0);
      if (e.diverged) {
        ok = false;
        break;
      }
      ephi.push_back(e.err_phi);
      eu.push_back(e.err_u);
    }
    if (ephi.size() != dts.size()) {
      ok = false;
      continue;
    }
    ConvergenceReport rep = convergence_order(dts, ephi, eu);
    std::printf("  %s: fitted order phi %.3f, u %.3f\n", scheme_name(kind),
                rep.order_phi, rep.order_u);
    ok = ok && rep.order_phi >= 1.8 && rep.order_phi <= 2.2 &&
         rep.order_u >= 1.8 && rep.order_u <= 2.2;
  }
  report(1, "MMS temporal order in [1.8, 2.2] for SLS and SIEQ", ok,
         timer.seconds());
}

TEST_CASE("criterion 2: stabilizers decide survival at dt = 5e-2") {
  Timer timer;
  Grid grid = Grid::make_2d(128, 128, two_pi, two_pi);
  Params p = preset("accuracy-2d").params;

  MmsErrors ls = mms_run(grid, p, SchemeKind::LS, 5e-2, 1.0);
  MmsErrors ieq = mms_run(grid, p, SchemeKind::IEQ, 5e-2, 1.0);
  MmsErrors sls = mms_run(grid, p, SchemeKind::SLS, 5e-2, 1.0);
  MmsErrors sieq = mms_run(grid, p, SchemeKind::SIEQ, 5e-2, 1.0);

  std::printf("  ls: %s, ieq: %s, sls err %.3e, sieq err %.3e\n",
              ls.diverged ? "diverged" : "completed",
              ieq.diverged ? "diverged" : "completed", sls.err_phi,
              sieq.err_phi);
  const bool ok = ls.diverged && ieq.diverged && !sls.diverged &&
                  !sieq.diverged && std::isfinite(sls.err_phi) &&
                  std::isfinite(sls.err_u) && std::isfinite(sieq.err_phi) &&
                  std::isfinite(sieq.err_u);
  report(2, "LS and IEQ diverge, SLS and SIEQ complete with finite errors",
         ok, timer.seconds());
}

TEST_CASE("criterion 3: SIEQ modified energy never increases, any dt") {
  Timer timer;
  bool ok = true;
  for (double dt : {1.0, 1e-1, 1e-2, 1e-3}) {
    const double t_final = dt == 1e-3 ? 2.0 : 20.0;
    SimCase c = circle_case(SchemeKind::SIEQ, dt, t_final);
    const Params eff = effective_params(c.params, c.kind);

    std::vector<double> e_mod;
    State s0 = startup(c.phi0, c.u0, eff, c.kind);
    e_mod.push_back(energy_modified(s0, eff));
    RunOutcome out = run_case(c, [&](const State& s, const SolverStats&) {
      e_mod.push_back(energy_modified(s, eff));
    });

    const double worst = max_relative_increase(e_mod);
    std::printf("  dt %-6g: %s, worst relative increase %.3e\n", dt,
                out.diverged ? "diverged" : "completed", worst);
    ok = ok && !out.diverged && worst <= 1e-8;
  }
  report(3, "circle benchmark e_modified non-increasing for dt down to 1e-3",
         ok, timer.seconds());
}

TEST_CASE("criterion 4: LS energy oscillates where SLS stays monotone") {
  Timer timer;
  auto energy_series = [&](SchemeKind kind, bool& diverged) {
    SimCase c = circle_case(kind, 1e-2, 20.0);
    const Params eff = effective_params(c.params, c.kind);
    std::vector<double> e;
    State s0 = startup(c.phi0, c.u0, eff, c.kind);
    e.push_back(energy_original(s0.phi, s0.u, eff));
    RunOutcome out = run_case(c, [&](const State& s, const SolverStats&) {
      e.push_back(energy_original(s.phi, s.u, eff));
    });
    diverged = out.diverged;
    return e;
  };

  bool ls_diverged = false, sls_diverged = false;
  const double ls_worst =
      max_relative_increase(energy_series(SchemeKind::LS, ls_diverged));
  const double sls_worst =
      max_relative_increase(energy_series(SchemeKind::SLS, sls_diverged));
  std::printf("  LS worst increase %.3e, SLS worst increase %.3e\n", ls_worst,
              sls_worst);
  const bool ok = !ls_diverged && !sls_diverged && ls_worst > 1e-6 &&
                  sls_worst <= 1e-8;
  report(4, "LS shows energy increases > 1e-6, SLS none beyond 1e-8 slack",
         ok, timer.seconds());
}

TEST_CASE("criterion 5: fourfold dendrite morphology, 2D and 3D spot check") {
  Timer timer;
  bool ok = true;

  // --- 2D desk-scaled dendrite, K = 0.5
  {
    RunConfig cfg = preset("dendrite-2d-k05");
    cfg.t_final = 100.0;
    SimCase c = make_sim_case(cfg);
    const Params eff = effective_params(c.params, c.kind);

    std::vector<double> e_orig;
    std::vector<double> times, radii;
    State s0 = startup(c.phi0, c.u0, eff, c.kind);
    e_orig.push_back(energy_original(s0.phi, s0.u, eff));
    RunOutcome out = run_case(c, [&](const State& s, const SolverStats&) {
      e_orig.push_back(energy_original(s.phi, s.u, eff));
      if (s.step % 10 == 0) {
        times.push_back(s.t);
        radii.push_back(crystal_radius(s.phi));
      }
    });
    ok = ok && !out.diverged;

    // (a) quarter-turn invariance of the final phase field
    const int n = cfg.grid.n[0];
    const ScalarField& phi = out.state.phi;
    double num = 0.0, den = 0.0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double r = phi[phi.index(j, (n - i) % n)];
        const double v = phi[phi.index(i, j)];
        num += (r - v) * (r - v);
        den += v * v;
      }
    const double rot_err = std::sqrt(num / den);

    // (b) radius non-decreasing after the transient
    double radius_drop = 0.0;
    for (std::size_t i = 1; i < radii.size(); ++i)
      if (times[i] > 5.0)
        radius_drop = std::fmax(radius_drop, radii[i - 1] - radii[i]);

    // (c) original energy decays monotonically
    const double e_worst = max_relative_increase(e_orig);

    std::printf("  2D: rotation err %.3e, radius drop %.3e, worst energy "
                "increase %.3e, final radius %.3f\n",
                rot_err, radius_drop, e_worst,
                radii.empty() ? 0.0 : radii.back());
    ok = ok && rot_err <= 1e-2 && radius_drop <= 1e-3 && e_worst <= 1e-8;
  }

  // --- 3D spot check, K = 1
  {
    RunConfig cfg = preset("dendrite-3d-k1");
    cfg.t_final = 100.0;
    SimCase c = make_sim_case(cfg);
    const Params eff = effective_params(c.params, c.kind);

    std::vector<double> e_orig;
    State s0 = startup(c.phi0, c.u0, eff, c.kind);
    e_orig.push_back(energy_original(s0.phi, s0.u, eff));
    RunOutcome out = run_case(c, [&](const State& s, const SolverStats&) {
      if (s.step % 10 == 0)
        e_orig.push_back(energy_original(s.phi, s.u, eff));
    });
    ok = ok && !out.diverged;

    const double e_worst = max_relative_increase(e_orig);

    // octahedral axis swaps fix the centered nucleus
    const ScalarField& phi = out.state.phi;
    const int n = cfg.grid.n[0];
    auto swap_err = [&](int a, int b) {
      double num = 0.0, den = 0.0;
      for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
          for (int x = 0; x < n; ++x) {
            int idx[3] = {x, y, z};
            std::swap(idx[a], idx[b]);
            const double v = phi[phi.index(x, y, z)];
            const double w = phi[phi.index(idx[0], idx[1], idx[2])];
            num += (v - w) * (v - w);
            den += v * v;
          }
      return std::sqrt(num / den);
    };
    const double worst_swap =
        std::fmax(swap_err(0, 1), std::fmax(swap_err(1, 2), swap_err(0, 2)));

    std::printf("  3D: completed %s, worst energy increase %.3e, worst axis "
                "swap err %.3e\n",
                out.diverged ? "no" : "yes", e_worst, worst_swap);
    ok = ok && e_worst <= 1e-8 && worst_swap <= 2e-2;
  }

  report(5, "dendrite symmetry, radius growth and energy decay", ok,
         timer.seconds());
}

TEST_CASE("criterion 6: coupled operator self-adjointness and coercivity") {
  Timer timer;
  Grid g = Grid::make_2d(32, 32, two_pi, two_pi);
  Params p = preset("circle-sieq").params;
  p.dt = 1e-2;

  ScalarField zs = smooth_random_field(g, 501, 3.0);
  ScalarField pp = smooth_random_field(g, 502, 0.5);
  for (double& v : pp.values) v = std::fabs(v);
  CoupledOperator op = CoupledOperator::make(p, zs, pp, pp);

  double worst_adj = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    ScalarField f1 = smooth_random_field(g, 600 + trial);
    ScalarField f2 = smooth_random_field(g, 700 + trial);
    const double lhs = inner(op.apply_Q(f1), f2);
    const double rhs = inner(f1, op.apply_Q(f2));
    worst_adj = std::fmax(
        worst_adj, std::fabs(lhs - rhs) / std::fmax(1e-300, std::fabs(rhs)));
  }

  bool coercive = true;
  for (int trial = 0; trial < 100; ++trial) {
    ScalarField xphi = smooth_random_field(g, 800 + trial);
    ScalarField xu = smooth_random_field(g, 1000 + trial);
    ScalarField r1(g), r2(g);
    op.apply(xphi, xu, r1, r2);
    coercive = coercive && (inner(r1, xphi) + inner(r2, xu)) > 0.0;
  }

  std::printf("  worst self-adjointness error %.3e, coercive on 100 draws: "
              "%s\n",
              worst_adj, coercive ? "yes" : "no");
  report(6, "Q self-adjoint to 1e-10 and A positive on random inputs",
         worst_adj <= 1e-10 && coercive, timer.seconds());
}

TEST_CASE("criterion 7: anisotropy factor and its gradient") {
  Timer timer;
  Params p = preset("accuracy-2d").params; // eps4 = 0.05

  // fourfold quartic-ratio form vs 1 + eps4 cos(4 theta)
  double worst_equiv = 0.0;
  for (int i = 0; i < 720; ++i) {
    const double th = two_pi * i / 720.0;
    const double kap = kappa_point({std::cos(th), std::sin(th), 0.0}, 2, p);
    worst_equiv = std::fmax(
        worst_equiv, std::fabs(kap - (1.0 + p.eps4 * std::cos(4.0 * th))));
  }

  // H vs central finite differences, 1000 random gradients per fold count
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> mag(0.1, 10.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double worst_fd = 0.0;
  auto test_fd = [&](int m, int dims) {
    Params pm = p;
    pm.m = m;
    for (int i = 0; i < 1000; ++i) {
      std::array<double, 3> g{unit(rng), unit(rng),
                              dims == 3 ? unit(rng) : 0.0};
      const double norm = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
      if (norm < 1e-3) continue;
      const double s = mag(rng) / norm;
      for (auto& v : g) v *= s;
      auto h = kappa_deriv_point(g, dims, pm);
      auto fd = fd_kappa_gradient(g, dims, pm);
      double num = 0.0, den = 0.0;
      for (int a = 0; a < dims; ++a) {
        num += (h[a] - fd[a]) * (h[a] - fd[a]);
        den += fd[a] * fd[a];
      }
      worst_fd = std::fmax(worst_fd, std::sqrt(num / std::fmax(den, 1e-24)));
    }
  };
  for (int m : {4, 5, 6, 7}) test_fd(m, 2);
  test_fd(4, 3);

  // tangential identity H . t = -m eps4 sin(m theta) on unit gradients
  double worst_tan = 0.0;
  for (int m : {4, 5, 6, 7}) {
    Params pm = p;
    pm.m = m;
    for (int i = 0; i < 720; ++i) {
      const double th = two_pi * i / 720.0;
      auto h = kappa_deriv_point({std::cos(th), std::sin(th), 0.0}, 2, pm);
      const double tangential = -h[0] * std::sin(th) + h[1] * std::cos(th);
      worst_tan = std::fmax(
          worst_tan, std::fabs(tangential + m * pm.eps4 * std::sin(m * th)));
    }
  }

  std::printf("  equivalence %.3e, fd gradient %.3e, tangential %.3e\n",
              worst_equiv, worst_fd, worst_tan);
  report(7, "kappa forms agree, H matches finite differences and dk/dtheta",
         worst_equiv <= 1e-12 && worst_fd <= 1e-6 && worst_tan <= 1e-8,
         timer.seconds());
}

TEST_CASE("criterion 8: quadratized energy identity on random states") {
  Timer timer;
  Grid g = Grid::make_2d(64, 64, two_pi, two_pi);
  Params p = preset("circle-sieq").params;

  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    ScalarField phi = smooth_random_field(g, 2000 + trial);
    ScalarField u = smooth_random_field(g, 3000 + trial);
    ScalarField U = quadratize_U(phi, p);
    double quad = 0.0;
    for (std::size_t i = 0; i < U.size(); ++i)
      quad += U[i] * U[i] - p.bigB +
              p.lambda / (2.0 * p.eps * p.bigK) * u[i] * u[i];
    quad *= g.cell_volume();
    const double e = energy_original(phi, u, p);
    worst = std::fmax(worst, std::fabs(quad - e) / std::fabs(e));
  }
  std::printf("  worst relative mismatch %.3e over 50 states\n", worst);
  report(8, "integral of U^2 - B + temperature term equals the energy",
         worst <= 1e-10, timer.seconds());
}

TEST_CASE("criterion 9: semi-discrete energy dissipation rate") {
  Timer timer;
  Grid g = Grid::make_2d(128, 128, two_pi, two_pi);
  Params p = preset("accuracy-2d").params;
  p.dt = 1e-4;

  ScalarField phi0 = field_2d(g, [](double x, double y) {
    return 0.2 * std::sin(x) * std::cos(y) + 0.1 * std::cos(2 * x);
  });
  ScalarField u0 = field_2d(g, [](double x, double y) {
    return 0.1 * std::cos(x) * std::sin(y);
  });

  State s = startup(phi0, u0, p, SchemeKind::SLS);
  for (int i = 0; i < 10; ++i) step_scheme1(s, p); // clear the startup step

  double measured = 0.0, predicted = 0.0;
  double e_prev = energy_original(s.phi, s.u, p);
  for (int i = 0; i < 100; ++i) {
    ScalarField phi_old = s.phi;
    step_scheme1(s, p);
    const double e_now = energy_original(s.phi, s.u, p);
    measured += e_now - e_prev;
    e_prev = e_now;

    ScalarField phi_t(g);
    for (std::size_t q = 0; q < phi_t.size(); ++q)
      phi_t[q] = (s.phi[q] - phi_old[q]) / p.dt;
    VectorField gu = gradient(s.u);
    double diss = p.tau * inner(phi_t, phi_t);
    diss += p.lambda * p.diffD / (p.eps * p.bigK) *
            (inner(gu[0], gu[0]) + inner(gu[1], gu[1]));
    predicted -= diss * p.dt;
  }
  const double rel = std::fabs(measured - predicted) / std::fabs(predicted);
  std::printf("  dE measured %.6e vs dissipation %.6e, relative gap %.3e\n",
              measured, predicted, rel);
  report(9, "energy drop matches the dissipation functional to 5e-2",
         rel <= 5e-2, timer.seconds());
}
