#pragma once

#include <fstream>
#include <string>

#include "dendrite/grid.hpp"
#include "dendrite/state.hpp"

namespace dendrite {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw little-endian float64 samples, x fastest, plus a JSON sidecar
// <path>.json with {"nx","ny","nz","lx","ly","lz","time","name"}.
// 2D fields write nz = 1.
void dump_field(const ScalarField& f, const std::string& path,
                const std::string& name, double time);
ScalarField load_field(const std::string& path);

// Binary 8-bit PGM (P5); values mapped linearly from [-1, 1] to [0, 255]
// with clipping, rounding half away from zero. 3D fields emit the mid-plane
// z slice.
void render_image(const ScalarField& f, const std::string& path);

// Energy ledger with the fixed header
// step,time,e_original,e_modified,radius,phi_min,phi_max,solver_iters,solver_residual
// where e_modified stays empty for runs without the auxiliary variable.
class CsvWriter {
public:
  explicit CsvWriter(const std::string& path);
  void write(const EnergyRecord& r);
  void comment(const std::string& line);
  const std::string& path() const { return path_; }

private:
  std::string path_;
  std::ofstream out_;
};

} // namespace dendrite
