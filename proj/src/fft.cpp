#include "dendrite/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "dendrite/threads.hpp"

namespace dendrite {
namespace fft {
namespace {

// One r2c/c2r plan pair per grid shape, created lazily under a lock and
// executed through the new-array interface (thread safe for distinct
// buffers). FFTW_ESTIMATE keeps plan selection reproducible across runs.
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

class PlanCache {
public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  PlanPair get(const Grid& g) {
    const auto key = std::make_tuple(g.n[0], g.n[1], g.n[2]);
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    AlignedVector<double> real(g.npoints());
    AlignedVector<std::complex<double>> cplx(std::size_t(g.n[0] / 2 + 1) *
                                             g.n[1] * g.n[2]);
    // FFTW wants the fastest-varying dimension last.
    int dims[3] = {g.n[2], g.n[1], g.n[0]};
    int rank = 0;
    int* dims_used = dims;
    for (int a = 0; a < 3; ++a) {
      if (dims[a] == 1 && rank == 0) {
        ++dims_used;
        continue;
      }
      ++rank;
    }
    if (rank == 0) { rank = 1; dims_used = dims + 2; }

    PlanPair p;
    p.fwd = fftw_plan_dft_r2c(rank, dims_used, real.data(),
                              reinterpret_cast<fftw_complex*>(cplx.data()),
                              FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_c2r(rank, dims_used,
                              reinterpret_cast<fftw_complex*>(cplx.data()),
                              real.data(), FFTW_ESTIMATE);
    plans_[key] = p;
    return p;
  }

private:
  PlanCache() {
#ifdef DENDRITE_FFTW_THREADS
    fftw_init_threads();
    fftw_plan_with_nthreads(max_threads());
#endif
  }
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, PlanPair> plans_;
};

} // namespace

Spectrum forward(const ScalarField& f) {
  Spectrum s(f.grid);
  PlanPair p = PlanCache::instance().get(f.grid);
  // new-array execute leaves the input untouched for r2c
  fftw_execute_dft_r2c(p.fwd, const_cast<double*>(f.values.data()),
                       reinterpret_cast<fftw_complex*>(s.values.data()));
  return s;
}

ScalarField inverse(Spectrum s) {
  ScalarField f(s.grid);
  PlanPair p = PlanCache::instance().get(s.grid);
  fftw_execute_dft_c2r(p.bwd, reinterpret_cast<fftw_complex*>(s.values.data()),
                       f.values.data());
  const double scale = 1.0 / double(f.grid.npoints());
  for (double& v : f.values) v *= scale;
  return f;
}

} // namespace fft
} // namespace dendrite
