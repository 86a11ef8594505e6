#pragma once

namespace dendrite {

// Worker count used for FFT plans and pointwise loops. Reads the
// DENDRITE_THREADS environment variable once; falls back to the hardware
// concurrency. Always >= 1.
int max_threads();

} // namespace dendrite
