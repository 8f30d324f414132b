#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dynnim/execution.hpp"

namespace dynnim::detail {

// Runs body(i, out) for i in [0, count) and returns everything pushed into
// `out`, sorted. Each worker collects privately; order is fixed by the sort.
template <typename T, typename Body>
std::vector<T> collect_sorted(std::int64_t count, Execution exec, Body&& body) {
  std::vector<T> merged;
  if (exec == Execution::serial) {
    for (std::int64_t i = 0; i < count; ++i) body(i, merged);
  } else {
#pragma omp parallel
    {
      std::vector<T> local;
#pragma omp for schedule(dynamic, 64) nowait
      for (std::int64_t i = 0; i < count; ++i) body(i, local);
#pragma omp critical(dynnim_collect)
      merged.insert(merged.end(), local.begin(), local.end());
    }
  }
  std::sort(merged.begin(), merged.end());
  return merged;
}

}  // namespace dynnim::detail
