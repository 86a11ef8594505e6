#pragma once

#include <complex>

#include "dendrite/grid.hpp"

namespace dendrite {

// Half-complex spectrum of a real field (r2c layout): kx runs over
// 0..nx/2 fastest, then y, then z. Unnormalized forward transform;
// inverse() divides by the point count.
struct Spectrum {
  Grid grid; // the real-space grid this spectrum belongs to
  AlignedVector<std::complex<double>> values;

  Spectrum() = default;
  explicit Spectrum(const Grid& g)
      : grid(g), values(std::size_t(g.n[0] / 2 + 1) * g.n[1] * g.n[2]) {}

  int nkx() const { return grid.n[0] / 2 + 1; }
  std::size_t size() const { return values.size(); }
  std::complex<double>& operator[](std::size_t i) { return values[i]; }
  const std::complex<double>& operator[](std::size_t i) const { return values[i]; }
};

namespace fft {

Spectrum forward(const ScalarField& f);
// The c2r transform consumes its input, hence by-value.
ScalarField inverse(Spectrum s);

// Signed integer frequency of mode index j on an axis with n points,
// in [-n/2, n/2).
inline int signed_freq(int j, int n) { return j < n / 2 ? j : j - n; }

} // namespace fft
} // namespace dendrite
