#pragma once

#include <functional>

namespace cms::geom {

// Worker cap for data-parallel maps; the CMSFLOW_THREADS environment
// variable overrides the hardware default.
int max_threads();

// Chunked parallel map over [0, n). Falls back to a serial loop for small n
// or a cap of one thread. Deterministic as long as the body only writes to
// its own index.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace cms::geom
