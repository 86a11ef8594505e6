#pragma once

#include "dendrite/fft.hpp"
#include "dendrite/grid.hpp"

namespace dendrite {

// Spectral differential operators. On no-flux axes the input is mirror
// extended to a doubled periodic axis, the operator is applied there, and
// the result is restricted back to the original samples. Odd derivatives
// zero the Nyquist mode.

VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
ScalarField laplacian(const ScalarField& f);

// Inverts a*I - b*lap diagonally per Fourier mode. Requires a > 0, b >= 0.
ScalarField solve_helmholtz(double a, double b, const ScalarField& rhs);

// Mirror extensions along one no-flux axis (doubling it): even copies the
// samples, odd negates the mirror half. restrict_axis keeps the first half.
ScalarField even_extend(const ScalarField& f, int axis);
ScalarField odd_extend(const ScalarField& f, int axis);
ScalarField restrict_axis(const ScalarField& f, int axis);

// 2/3-rule isotropic truncation (zero modes with |j| > n/3 on any axis).
ScalarField dealias_23(const ScalarField& f);

} // namespace dendrite
