#pragma once

#include <functional>
#include <vector>

namespace dendrite {

struct GmresOptions {
  double tol = 1.0e-9; // relative residual target
  int max_iters = 500;
  int restart = 30;
};

struct GmresResult {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

using LinearMap =
    std::function<void(const std::vector<double>&, std::vector<double>&)>;

// Restarted GMRES with right preconditioning: solves A x = b by iterating on
// A M^{-1}; the returned residual is the true relative residual |b - Ax|/|b|.
// x holds the initial guess on entry and the solution on exit.
GmresResult gmres(const LinearMap& apply_A, const LinearMap& apply_Minv,
                  const std::vector<double>& b, std::vector<double>& x,
                  const GmresOptions& opts = {});

} // namespace dendrite
