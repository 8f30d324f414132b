#pragma once

#include <string_view>

namespace dynnim {

// Selects between the straightforward single-threaded reference kernels and
// their OpenMP counterparts. Results are identical by contract; the test
// suite checks that.
enum class Execution { serial, parallel };

constexpr std::string_view to_string(Execution e) {
  return e == Execution::serial ? "serial" : "parallel";
}

// Number of OpenMP workers a parallel kernel will use (1 without OpenMP).
int worker_count();

}  // namespace dynnim
