#pragma once

#include "dendrite/config.hpp"
#include "dendrite/simulation.hpp"

namespace dendrite {

// Exit statuses of a driven run.
inline constexpr int kRunOk = 0;
inline constexpr int kRunIoError = 1;
inline constexpr int kRunDiverged = 2;

// Builds the case from the config and marches it, writing the energy CSV
// and optional field dumps/images into output_dir. Returns kRunOk or
// kRunDiverged; I/O problems throw IoError.
int run(const RunConfig& cfg);

SimCase make_sim_case(const RunConfig& cfg);

} // namespace dendrite
