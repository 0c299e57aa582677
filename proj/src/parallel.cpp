#include "axisym/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace axisym {

namespace {

int detect_workers() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("SIM_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return n;
}

int& workers() {
  static int w = detect_workers();
  return w;
}

}  // namespace

int worker_count() { return workers(); }

void set_worker_count(int n) { workers() = std::max(1, n); }

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  if (end <= begin) return;
  std::size_t total = end - begin;
  std::size_t nw = std::min<std::size_t>(worker_count(), total / 64 + 1);
  if (nw <= 1) {
    fn(begin, end);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (total + nw - 1) / nw;
  for (std::size_t w = 1; w < nw; ++w) {
    std::size_t lo = begin + w * chunk;
    std::size_t hi = std::min(end, lo + chunk);
    if (lo < hi) pool.emplace_back(fn, lo, hi);
  }
  fn(begin, std::min(end, begin + chunk));
  for (auto& t : pool) t.join();
}

}  // namespace axisym
