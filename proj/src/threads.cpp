#include "dendrite/threads.hpp"

#include <cstdlib>
#include <thread>

namespace dendrite {

int max_threads() {
  static const int cached = [] {
    if (const char* env = std::getenv("DENDRITE_THREADS")) {
      const int v = std::atoi(env);
      if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? int(hw) : 1;
  }();
  return cached;
}

} // namespace dendrite
