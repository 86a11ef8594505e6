#include "dendrite/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dendrite/threads.hpp"

namespace dendrite {
namespace {

using fft::signed_freq;

// Doubles every no-flux axis and marks it periodic; identity for fully
// periodic grids.
Grid extended_grid(const Grid& g) {
  Grid e = g;
  for (int a = 0; a < g.dims; ++a) {
    if (g.bc[a] == Bc::NoFlux) {
      e.n[a] *= 2;
      e.length[a] *= 2.0;
      e.bc[a] = Bc::Periodic;
    }
  }
  return e;
}

ScalarField mirror_extend(const ScalarField& f, int axis, double sign) {
  if (axis < 0 || axis >= f.grid.dims)
    throw std::invalid_argument("extend: axis out of range");
  if (f.grid.bc[axis] != Bc::NoFlux)
    throw std::invalid_argument("extend: axis is periodic");

  Grid eg = f.grid;
  eg.n[axis] *= 2;
  eg.length[axis] *= 2.0;
  eg.bc[axis] = Bc::Periodic;
  ScalarField out(eg);

  const int nx = f.grid.n[0], ny = f.grid.n[1], nz = f.grid.n[2];
  const int m = f.grid.n[axis]; // original extent of the mirrored axis
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x) {
        const double v = f[f.index(x, y, z)];
        int i[3] = {x, y, z};
        const std::size_t lo =
            (std::size_t(i[2]) * eg.n[1] + i[1]) * eg.n[0] + i[0];
        i[axis] = 2 * m - 1 - i[axis];
        const std::size_t hi =
            (std::size_t(i[2]) * eg.n[1] + i[1]) * eg.n[0] + i[0];
        out[lo] = v;
        out[hi] = sign * v;
      }
  return out;
}

// Extends f along every no-flux axis; `odd_axis` (if >= 0) gets the odd
// mirror, all other no-flux axes the even one.
ScalarField extend_all(const ScalarField& f, int odd_axis = -1) {
  ScalarField out = f;
  for (int a = 0; a < f.grid.dims; ++a)
    if (f.grid.bc[a] == Bc::NoFlux)
      out = mirror_extend(out, a, a == odd_axis ? -1.0 : 1.0);
  return out;
}

// Restricts a field on the extension back to the original grid.
ScalarField restrict_all(const ScalarField& f, const Grid& target) {
  ScalarField out = f;
  for (int a = target.dims - 1; a >= 0; --a)
    if (target.bc[a] == Bc::NoFlux) out = restrict_axis(out, a);
  out.grid = target;
  return out;
}

// Applies op(value, k[3], j[3]) to every retained mode, where j are the
// signed integer frequencies and k the physical wavenumbers.
template <class Op>
void for_each_mode(Spectrum& s, Op op) {
  const Grid& g = s.grid;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double b0 = two_pi / g.length[0];
  const double b1 = two_pi / g.length[1];
  const double b2 = g.dims == 3 ? two_pi / g.length[2] : 0.0;
  const int nkx = s.nkx();
  const int ny = g.n[1], nz = g.n[2];
#pragma omp parallel for schedule(static)
  for (int zy = 0; zy < nz * ny; ++zy) {
    const int z = zy / ny, y = zy % ny;
    const int jz = g.dims == 3 ? signed_freq(z, nz) : 0;
    const int jy = signed_freq(y, ny);
    std::complex<double>* row = &s.values[std::size_t(zy) * nkx];
    for (int jx = 0; jx < nkx; ++jx) {
      const double k[3] = {b0 * jx, b1 * jy, b2 * jz};
      const int j[3] = {jx, jy, jz};
      op(row[jx], k, j);
    }
  }
}

VectorField gradient_periodic(const ScalarField& f) {
  const Spectrum base = fft::forward(f);
  VectorField g(f.grid);
  for (int a = 0; a < f.grid.dims; ++a) {
    Spectrum s = base;
    const int na = f.grid.n[a];
    for_each_mode(s, [a, na](std::complex<double>& v, const double k[3],
                             const int j[3]) {
      v = 2 * std::abs(j[a]) == na ? std::complex<double>(0.0, 0.0)
                                   : v * std::complex<double>(0.0, k[a]);
    });
    g[a] = fft::inverse(std::move(s));
  }
  return g;
}

} // namespace

ScalarField even_extend(const ScalarField& f, int axis) {
  return mirror_extend(f, axis, 1.0);
}

ScalarField odd_extend(const ScalarField& f, int axis) {
  return mirror_extend(f, axis, -1.0);
}

ScalarField restrict_axis(const ScalarField& f, int axis) {
  if (axis < 0 || axis >= f.grid.dims)
    throw std::invalid_argument("restrict: axis out of range");
  if (f.grid.n[axis] % 2 != 0)
    throw std::invalid_argument("restrict: axis extent not even");

  Grid rg = f.grid;
  rg.n[axis] /= 2;
  rg.length[axis] /= 2.0;
  rg.bc[axis] = Bc::NoFlux;
  ScalarField out(rg);
  for (int z = 0; z < rg.n[2]; ++z)
    for (int y = 0; y < rg.n[1]; ++y)
      for (int x = 0; x < rg.n[0]; ++x)
        out[out.index(x, y, z)] =
            f[(std::size_t(z) * f.grid.n[1] + y) * f.grid.n[0] + x];
  return out;
}

VectorField gradient(const ScalarField& f) {
  if (!f.grid.has_noflux()) return gradient_periodic(f);
  VectorField ext = gradient_periodic(extend_all(f));
  VectorField out(f.grid);
  for (int a = 0; a < f.grid.dims; ++a)
    out[a] = restrict_all(ext[a], f.grid);
  return out;
}

ScalarField divergence(const VectorField& v) {
  for (int a = 1; a < v.grid.dims; ++a)
    require_same_grid(v.comp[0].grid, v.comp[a].grid, "divergence");
  const Grid& g = v.grid;
  const Grid eg = extended_grid(g);
  const bool nf = g.has_noflux();

  Spectrum acc(eg);
  for (int a = 0; a < g.dims; ++a) {
    // the normal component of a physical flux is odd across a mirror wall
    Spectrum s = fft::forward(nf ? extend_all(v[a], a) : v[a]);
    const int na = eg.n[a];
    for_each_mode(s, [a, na](std::complex<double>& val, const double k[3],
                             const int j[3]) {
      val = 2 * std::abs(j[a]) == na ? std::complex<double>(0.0, 0.0)
                                     : val * std::complex<double>(0.0, k[a]);
    });
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += s[i];
  }
  ScalarField out = fft::inverse(std::move(acc));
  return nf ? restrict_all(out, g) : out;
}

ScalarField laplacian(const ScalarField& f) {
  const bool nf = f.grid.has_noflux();
  Spectrum s = fft::forward(nf ? extend_all(f) : f);
  for_each_mode(s, [](std::complex<double>& v, const double k[3],
                      const int[3]) {
    v *= -(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
  });
  ScalarField out = fft::inverse(std::move(s));
  return nf ? restrict_all(out, f.grid) : out;
}

ScalarField solve_helmholtz(double a, double b, const ScalarField& rhs) {
  if (!(a > 0.0))
    throw std::invalid_argument("solve_helmholtz: a must be positive");
  if (b < 0.0)
    throw std::invalid_argument("solve_helmholtz: b must be nonnegative");
  const bool nf = rhs.grid.has_noflux();
  Spectrum s = fft::forward(nf ? extend_all(rhs) : rhs);
  for_each_mode(s, [a, b](std::complex<double>& v, const double k[3],
                          const int[3]) {
    v /= a + b * (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
  });
  ScalarField out = fft::inverse(std::move(s));
  return nf ? restrict_all(out, rhs.grid) : out;
}

ScalarField dealias_23(const ScalarField& f) {
  const bool nf = f.grid.has_noflux();
  Spectrum s = fft::forward(nf ? extend_all(f) : f);
  const Grid& g = s.grid;
  for_each_mode(s, [&g](std::complex<double>& v, const double[3],
                        const int j[3]) {
    for (int a = 0; a < g.dims; ++a)
      if (3 * std::abs(j[a]) > g.n[a]) {
        v = 0.0;
        return;
      }
  });
  ScalarField out = fft::inverse(std::move(s));
  return nf ? restrict_all(out, f.grid) : out;
}

} // namespace dendrite
