#include "dendrite/grid.hpp"

#include <cmath>
#include <string>

namespace dendrite {

Grid Grid::make_2d(int nx, int ny, double lx, double ly, Bc bx, Bc by) {
  Grid g;
  g.dims = 2;
  g.n = {nx, ny, 1};
  g.length = {lx, ly, 0.0};
  g.bc = {bx, by, Bc::Periodic};
  g.validate();
  return g;
}

Grid Grid::make_3d(int nx, int ny, int nz, double lx, double ly, double lz,
                   Bc bx, Bc by, Bc bz) {
  Grid g;
  g.dims = 3;
  g.n = {nx, ny, nz};
  g.length = {lx, ly, lz};
  g.bc = {bx, by, bz};
  g.validate();
  return g;
}

void Grid::validate() const {
  if (dims != 2 && dims != 3)
    throw std::invalid_argument("grid: dims must be 2 or 3");
  for (int a = 0; a < dims; ++a) {
    if (n[a] < 4 || n[a] % 2 != 0)
      throw std::invalid_argument("grid: n[" + std::to_string(a) +
                                  "] must be even and >= 4");
    if (!(length[a] > 0.0))
      throw std::invalid_argument("grid: length[" + std::to_string(a) +
                                  "] must be positive");
  }
  for (int a = dims; a < 3; ++a)
    if (n[a] != 1)
      throw std::invalid_argument("grid: unused axis must have n = 1");
}

double ScalarField::min() const {
  double m = values.empty() ? 0.0 : values[0];
  for (double v : values) m = std::fmin(m, v);
  return m;
}

double ScalarField::max() const {
  double m = values.empty() ? 0.0 : values[0];
  for (double v : values) m = std::fmax(m, v);
  return m;
}

bool ScalarField::all_finite() const {
  for (double v : values)
    if (!std::isfinite(v)) return false;
  return true;
}

// Serial reductions on purpose: results do not depend on the thread count.
double integrate(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return s * f.grid.cell_volume();
}

double inner(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f.grid, g.grid, "inner");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
  return s * f.grid.cell_volume();
}

double norm_l2(const ScalarField& f) { return std::sqrt(inner(f, f)); }

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b))
    throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

} // namespace dendrite
