#include "cmsflow/geom/parallel.h"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace cms::geom {

int max_threads() {
  if (const char* env = std::getenv("CMSFLOW_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) return cap;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return std::clamp<int>(static_cast<int>(hw), 1, 8);
}

void parallel_for(int n, const std::function<void(int)>& body) {
  const int workers = std::min(max_threads(), n / 128);
  if (workers < 2) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int lo = w * chunk;
    const int hi = std::min(n, lo + chunk);
    pool.emplace_back([&body, lo, hi] {
      for (int i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace cms::geom
