#pragma once

#include <array>
#include <cstddef>
#include <cstdlib>
#include <new>
#include <stdexcept>
#include <vector>

namespace dendrite {

enum class Bc { Periodic, NoFlux };

// Rectangular collocation grid, 2D or 3D. Values are stored row-major with
// x fastest: index = (z*ny + y)*nx + x. Unused axes have n = 1.
//
// Collocation points: periodic axes sample x_j = j*h (0 included, L excluded);
// no-flux axes sample cell centers x_j = (j + 1/2)*h so that the even mirror
// extension about both boundaries lands on the same uniform lattice.
struct Grid {
  int dims = 2;
  std::array<int, 3> n{1, 1, 1};
  std::array<double, 3> length{0.0, 0.0, 0.0};
  std::array<Bc, 3> bc{Bc::Periodic, Bc::Periodic, Bc::Periodic};

  static Grid make_2d(int nx, int ny, double lx, double ly,
                      Bc bx = Bc::Periodic, Bc by = Bc::Periodic);
  static Grid make_3d(int nx, int ny, int nz, double lx, double ly, double lz,
                      Bc bx = Bc::Periodic, Bc by = Bc::Periodic,
                      Bc bz = Bc::Periodic);

  void validate() const;

  std::size_t npoints() const {
    return std::size_t(n[0]) * std::size_t(n[1]) * std::size_t(n[2]);
  }
  double spacing(int axis) const { return length[axis] / n[axis]; }
  double cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dims; ++a) v *= spacing(a);
    return v;
  }
  double volume() const {
    double v = 1.0;
    for (int a = 0; a < dims; ++a) v *= length[a];
    return v;
  }
  double coord(int axis, int i) const {
    const double h = spacing(axis);
    return bc[axis] == Bc::NoFlux ? (i + 0.5) * h : i * h;
  }
  bool has_noflux() const {
    for (int a = 0; a < dims; ++a)
      if (bc[a] == Bc::NoFlux) return true;
    return false;
  }

  bool operator==(const Grid&) const = default;
};

// 64-byte aligned storage so FFTW's SIMD kernels apply to field data.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) {}
  T* allocate(std::size_t count) {
    void* p = std::aligned_alloc(64, ((count * sizeof(T) + 63) / 64) * 64);
    if (!p) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) { std::free(p); }
  template <class U>
  bool operator==(const AlignedAllocator<U>&) const { return true; }
};

template <class T>
using AlignedVector = std::vector<T, AlignedAllocator<T>>;

// Real samples on a grid, one value per collocation point.
struct ScalarField {
  Grid grid;
  AlignedVector<double> values;

  ScalarField() = default;
  explicit ScalarField(const Grid& g, double fill = 0.0)
      : grid(g), values(g.npoints(), fill) {}

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  std::size_t index(int x, int y, int z = 0) const {
    return (std::size_t(z) * grid.n[1] + y) * grid.n[0] + x;
  }

  double min() const;
  double max() const;
  bool all_finite() const;
};

// One scalar component per spatial axis (dims of them).
struct VectorField {
  Grid grid;
  std::vector<ScalarField> comp;

  VectorField() = default;
  explicit VectorField(const Grid& g) : grid(g) {
    comp.reserve(g.dims);
    for (int a = 0; a < g.dims; ++a) comp.emplace_back(g);
  }
  ScalarField& operator[](int a) { return comp[a]; }
  const ScalarField& operator[](int a) const { return comp[a]; }
};

// Cell-volume weighted quadrature (spectrally accurate for smooth fields on
// periodic axes; exact midpoint rule on the even extension for no-flux axes).
double integrate(const ScalarField& f);
double inner(const ScalarField& f, const ScalarField& g);
double norm_l2(const ScalarField& f);

void require_same_grid(const Grid& a, const Grid& b, const char* what);

} // namespace dendrite
