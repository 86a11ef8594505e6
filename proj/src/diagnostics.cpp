#include "dendrite/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "dendrite/model.hpp"

namespace dendrite {

double crystal_radius(const ScalarField& phi) {
  double area = 0.0;
  for (double v : phi.values) area += 0.5 * (v + 1.0);
  area *= phi.grid.cell_volume();
  if (area < 0.0) {
    std::fprintf(stderr,
                 "warning: negative solid area %.3e clamped to zero\n", area);
    area = 0.0;
  }
  constexpr double pi = std::numbers::pi;
  if (phi.grid.dims == 2) return std::sqrt(area / pi);
  return std::cbrt(3.0 * area / (4.0 * pi));
}

ConvergenceReport convergence_order(const std::vector<double>& dts,
                                    const std::vector<double>& errors_phi,
                                    const std::vector<double>& errors_u) {
  if (dts.size() < 3)
    throw std::invalid_argument("convergence_order: need at least 3 points");
  if (dts.size() != errors_phi.size() || dts.size() != errors_u.size())
    throw std::invalid_argument("convergence_order: length mismatch");
  for (std::size_t i = 1; i < dts.size(); ++i)
    if (!(dts[i] < dts[i - 1]))
      throw std::invalid_argument(
          "convergence_order: dts must be strictly decreasing");

  ConvergenceReport rep;
  rep.dts = dts;
  rep.errors_phi = errors_phi;
  rep.errors_u = errors_u;

  auto pairwise = [&](const std::vector<double>& e) {
    std::vector<double> s;
    for (std::size_t i = 0; i + 1 < e.size(); ++i)
      s.push_back(std::log(e[i] / e[i + 1]) / std::log(dts[i] / dts[i + 1]));
    return s;
  };
  rep.slopes_phi = pairwise(errors_phi);
  rep.slopes_u = pairwise(errors_u);

  // least-squares slope of log(err) vs log(dt)
  auto fit = [&](const std::vector<double>& e) {
    const std::size_t n = e.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = std::log(dts[i]), y = std::log(e[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  rep.order_phi = fit(errors_phi);
  rep.order_u = fit(errors_u);
  return rep;
}

ScalarField mms_phi(const Grid& g, double t) {
  if (g.dims != 2)
    throw std::invalid_argument("manufactured solution is 2D only");
  ScalarField f(g);
  const double c = std::cos(t);
  for (int y = 0; y < g.n[1]; ++y)
    for (int x = 0; x < g.n[0]; ++x)
      f[f.index(x, y)] = std::sin(g.coord(0, x)) * std::cos(g.coord(1, y)) * c;
  return f;
}

ScalarField mms_u(const Grid& g, double t) {
  if (g.dims != 2)
    throw std::invalid_argument("manufactured solution is 2D only");
  ScalarField f(g);
  const double c = std::cos(t);
  for (int y = 0; y < g.n[1]; ++y)
    for (int x = 0; x < g.n[0]; ++x)
      f[f.index(x, y)] = std::cos(g.coord(0, x)) * std::sin(g.coord(1, y)) * c;
  return f;
}

ScalarField mms_phi_t(const Grid& g, double t) {
  ScalarField f = mms_phi(g, 0.0);
  const double s = -std::sin(t);
  for (double& v : f.values) v *= s;
  return f;
}

ScalarField mms_u_t(const Grid& g, double t) {
  ScalarField f = mms_u(g, 0.0);
  const double s = -std::sin(t);
  for (double& v : f.values) v *= s;
  return f;
}

std::pair<ScalarField, ScalarField> mms_forcing(const Grid& g, double t,
                                                const Params& p) {
  return residual(mms_phi(g, t), mms_u(g, t), mms_phi_t(g, t), mms_u_t(g, t),
                  p);
}

ForcingFn make_mms_forcing(const Grid& g, const Params& p) {
  return [g, p](double t) { return mms_forcing(g, t, p); };
}

MmsErrors mms_run(const Grid& g, const Params& p, SchemeKind kind, double dt,
                  double t_final) {
  SimCase c;
  c.grid = g;
  c.params = p;
  c.params.dt = dt;
  c.kind = kind;
  c.phi0 = mms_phi(g, 0.0);
  c.u0 = mms_u(g, 0.0);
  c.t_final = t_final;
  c.forcing = make_mms_forcing(g, c.params);

  RunOutcome out = run_case(c);
  MmsErrors e;
  if (out.diverged) {
    e.diverged = true;
    e.diverged_step = out.diverged_step;
    return e;
  }
  ScalarField dphi = mms_phi(g, out.state.t);
  ScalarField du = mms_u(g, out.state.t);
  for (std::size_t i = 0; i < dphi.size(); ++i) {
    dphi[i] -= out.state.phi[i];
    du[i] -= out.state.u[i];
  }
  e.err_phi = norm_l2(dphi);
  e.err_u = norm_l2(du);
  return e;
}

std::vector<SweepEntry> stability_sweep(const SimCase& base,
                                        const std::vector<SchemeKind>& kinds,
                                        const std::vector<double>& dts) {
  std::vector<SweepEntry> table;
  for (SchemeKind kind : kinds)
    for (double dt : dts) {
      SimCase c = base;
      c.kind = kind;
      c.params.dt = dt;
      RunOutcome out = run_case(c);
      SweepEntry row;
      row.kind = kind;
      row.dt = dt;
      row.converged = !out.diverged;
      row.diverged_step = out.diverged_step;
      row.final_energy = energy_original(out.state.phi, out.state.u,
                                         effective_params(c.params, kind));
      table.push_back(row);
    }
  return table;
}

EnergyRecord make_energy_record(const State& s, const SolverStats& stats,
                                const Params& p) {
  EnergyRecord r;
  r.step = s.step;
  r.time = s.t;
  r.e_original = energy_original(s.phi, s.u, p);
  if (s.has_bigU) {
    r.e_modified = energy_modified(s, p);
    r.has_modified = true;
  }
  r.radius = crystal_radius(s.phi);
  r.phi_min = s.phi.min();
  r.phi_max = s.phi.max();
  r.solver_iters = stats.iterations;
  r.solver_residual = stats.final_residual;
  return r;
}

} // namespace dendrite
