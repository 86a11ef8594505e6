#pragma once

#include <array>
#include <string>
#include <vector>

#include "dendrite/grid.hpp"
#include "dendrite/params.hpp"
#include "dendrite/schemes.hpp"

namespace dendrite {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class IcType { Circle, Nucleus, Mms, Constant };

// Circle/Nucleus: phi = tanh((r0 - |x - center|)/eps0); the circle carries a
// uniform undercooled temperature, the nucleus u = 0 inside and u0 outside.
struct InitialCondition {
  IcType type = IcType::Circle;
  std::array<double, 3> center{0.0, 0.0, 0.0};
  double r0 = 1.5;
  double eps0 = 0.072;
  double u0 = -0.55;
  double phi_value = 1.0; // Constant only
  double u_value = 0.0;   // Constant only
};

struct OutputOptions {
  bool csv = true;
  bool fields = false;
  bool images = false;
  long render_every = 100; // cadence of field dumps and images, in steps
};

struct RunConfig {
  Grid grid;
  Params params;
  SchemeKind scheme = SchemeKind::SIEQ;
  double t_final = 1.0;
  long sample_every = 1;
  InitialCondition ic;
  OutputOptions outputs;
  std::string output_dir = "out";
  long seed = 0; // reserved

  void validate() const;
};

// JSON-syntax config file; unknown keys are rejected and validation errors
// carry the offending field path.
RunConfig load_config(const std::string& path);
RunConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const RunConfig& cfg);

std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
// full_scale switches to the full benchmark resolutions (512^2 / 128^3) in
// place of the desk-scaled defaults (256^2 / 64^3).
RunConfig preset(const std::string& name, bool full_scale = false);

// Samples the configured initial condition on the grid.
std::pair<ScalarField, ScalarField> build_initial(const InitialCondition& ic,
                                                  const Grid& grid);

} // namespace dendrite
