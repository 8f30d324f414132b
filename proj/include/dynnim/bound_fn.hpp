#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dynnim/error.hpp"

namespace dynnim {

// The per-turn removal bound f(k) of the turn-indexed game. Always positive
// and non-decreasing on k >= 1; the factories reject anything else.
//
// Text grammar: `const:<c>` | `affine:<a>,<b>` (a*k+b) | `table:<v1>,...,<vm>`.
// A table repeats its last value for k > m.
class BoundFn {
 public:
  static BoundFn constant(u64 c);
  static BoundFn affine(std::int64_t a, std::int64_t b);
  static BoundFn table(std::vector<u64> values);
  static BoundFn parse(std::string_view spec);

  // f(k); throws ParseError for k == 0 and RangeError past 2^62.
  u64 operator()(u64 k) const;

  // Canonical spec string; parse(to_string()) reproduces the function.
  std::string to_string() const;

  bool operator==(const BoundFn&) const = default;

 private:
  struct Constant {
    u64 value;
    bool operator==(const Constant&) const = default;
  };
  struct Affine {
    std::int64_t slope;
    std::int64_t offset;
    bool operator==(const Affine&) const = default;
  };
  struct Table {
    std::vector<u64> values;
    bool operator==(const Table&) const = default;
  };

  using Rep = std::variant<Constant, Affine, Table>;
  explicit BoundFn(Rep rep) : rep_(std::move(rep)) {}

  Rep rep_;
};

inline u64 eval_bound(const BoundFn& f, u64 k) { return f(k); }

}  // namespace dynnim
