#pragma once

#include <cstddef>
#include <functional>

namespace axisym {

// Worker count: hardware concurrency, capped by SIM_THREADS when set.
int worker_count();
void set_worker_count(int n);

// Calls fn(lo, hi) over disjoint chunks covering [begin, end).
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace axisym
