#include "dendrite/gmres.hpp"

#include <cmath>

namespace dendrite {
namespace {

// serial reductions keep results independent of the thread count
double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double nrm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

} // namespace

GmresResult gmres(const LinearMap& apply_A, const LinearMap& apply_Minv,
                  const std::vector<double>& b, std::vector<double>& x,
                  const GmresOptions& opts) {
  const std::size_t n = b.size();
  const int m = opts.restart;
  GmresResult result;

  const double bnorm = nrm2(b);
  if (bnorm == 0.0) {
    x.assign(n, 0.0);
    result.converged = true;
    return result;
  }

  std::vector<std::vector<double>> V(m + 1, std::vector<double>(n));
  std::vector<double> H((m + 1) * m, 0.0); // column-major, H[i + j*(m+1)]
  std::vector<double> cs(m), sn(m), g(m + 1);
  std::vector<double> w(n), z(n), r(n);

  while (result.iterations < opts.max_iters) {
    // r = b - A x
    apply_A(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    double beta = nrm2(r);
    result.relative_residual = beta / bnorm;
    if (result.relative_residual <= opts.tol) {
      result.converged = true;
      return result;
    }

    for (std::size_t i = 0; i < n; ++i) V[0][i] = r[i] / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;

    int j = 0;
    for (; j < m && result.iterations < opts.max_iters; ++j) {
      ++result.iterations;
      apply_Minv(V[j], z);
      apply_A(z, w);

      // modified Gram-Schmidt
      for (int i = 0; i <= j; ++i) {
        const double h = dot(w, V[i]);
        H[i + j * (m + 1)] = h;
        for (std::size_t q = 0; q < n; ++q) w[q] -= h * V[i][q];
      }
      double h1 = nrm2(w);
      H[(j + 1) + j * (m + 1)] = h1;
      if (h1 != 0.0)
        for (std::size_t q = 0; q < n; ++q) V[j + 1][q] = w[q] / h1;

      // apply accumulated Givens rotations to the new column
      for (int i = 0; i < j; ++i) {
        const double t = cs[i] * H[i + j * (m + 1)] + sn[i] * H[(i + 1) + j * (m + 1)];
        H[(i + 1) + j * (m + 1)] =
            -sn[i] * H[i + j * (m + 1)] + cs[i] * H[(i + 1) + j * (m + 1)];
        H[i + j * (m + 1)] = t;
      }
      const double a = H[j + j * (m + 1)], c = H[(j + 1) + j * (m + 1)];
      const double rho = std::hypot(a, c);
      cs[j] = rho == 0.0 ? 1.0 : a / rho;
      sn[j] = rho == 0.0 ? 0.0 : c / rho;
      H[j + j * (m + 1)] = rho;
      H[(j + 1) + j * (m + 1)] = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];

      result.relative_residual = std::abs(g[j + 1]) / bnorm;
      if (result.relative_residual <= opts.tol) {
        ++j;
        break;
      }
    }

    // back substitution and update x += M^{-1} (V y)
    std::vector<double> y(j);
    for (int i = j - 1; i >= 0; --i) {
      double s = g[i];
      for (int q = i + 1; q < j; ++q) s -= H[i + q * (m + 1)] * y[q];
      y[i] = s / H[i + i * (m + 1)];
    }
    std::fill(w.begin(), w.end(), 0.0);
    for (int i = 0; i < j; ++i)
      for (std::size_t q = 0; q < n; ++q) w[q] += y[i] * V[i][q];
    apply_Minv(w, z);
    for (std::size_t q = 0; q < n; ++q) x[q] += z[q];

    if (result.relative_residual <= opts.tol) {
      // confirm with the true residual before declaring success
      apply_A(x, r);
      for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
      result.relative_residual = nrm2(r) / bnorm;
      if (result.relative_residual <= opts.tol) {
        result.converged = true;
        return result;
      }
    }
  }
  return result;
}

} // namespace dendrite
