#pragma once

#include <stdexcept>

namespace dendrite {

enum class LatentChoice { Quintic, Cubic };        // p'(phi) = (1-phi^2)^2 | 1-phi^2
enum class LatentVariant { Consistent, UnitDerivative }; // p' in the heat equation, or 1

// Physical and numerical constants of the anisotropic solidification model.
struct Params {
  double eps = 0.06;    // interface width
  double eps4 = 0.05;   // anisotropy strength, in [0, 1)
  int m = 4;            // fold count (3D supports m = 4 only)
  double lambda = 1.0;  // phase/temperature coupling
  double bigK = 1.0;    // latent heat coefficient
  double diffD = 1.0;   // thermal diffusivity
  double tau = 1.0;     // mobility constant
  double s1 = 0.0;      // zeroth-order stabilizer
  double s2 = 0.0;      // gradient stabilizer
  double bigB = 5.0e4;  // quadratization shift
  double dt = 1.0e-2;   // time step
  double eta = 1.0e-12; // |grad|^2 threshold below which kappa=1, H=0
  LatentChoice p_choice = LatentChoice::Quintic;
  LatentVariant latent_variant = LatentVariant::Consistent;
  bool dealias = false; // optional 2/3-rule filter on the nonlinear sources

  void validate() const {
    auto fail = [](const char* msg) { throw std::invalid_argument(msg); };
    if (!(eps > 0.0)) fail("params.eps must be positive");
    if (!(eps4 >= 0.0 && eps4 < 1.0)) fail("params.eps4 must be in [0, 1)");
    if (m < 3) fail("params.m must be >= 3");
    if (!(lambda > 0.0)) fail("params.lambda must be positive");
    if (!(bigK > 0.0)) fail("params.K must be positive");
    if (!(diffD > 0.0)) fail("params.D must be positive");
    if (!(tau > 0.0)) fail("params.tau must be positive");
    if (s1 < 0.0 || s2 < 0.0) fail("params.s1/s2 must be nonnegative");
    if (!(bigB > 0.0)) fail("params.B must be positive");
    if (!(dt > 0.0)) fail("params.dt must be positive");
    if (eta < 0.0) fail("params.eta must be nonnegative");
  }
};

} // namespace dendrite
