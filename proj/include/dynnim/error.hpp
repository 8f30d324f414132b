#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dynnim {

using u64 = std::uint64_t;

// Every count, weight, turn index and block bound must stay below 2^62.
inline constexpr u64 kValueLimit = u64{1} << 62;

// Input outside the representable range, or arithmetic that would leave it.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Malformed user input (bound function specs, positions, moves).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A query exceeds the configured oracle envelope.
class BoundExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline u64 require_in_range(u64 value, const char* what) {
  if (value >= kValueLimit) {
    throw RangeError(std::string(what) + " exceeds 2^62");
  }
  return value;
}

inline u64 checked_add(u64 a, u64 b) {
  u64 out = 0;
  if (__builtin_add_overflow(a, b, &out) || out >= kValueLimit) {
    throw RangeError("arithmetic overflow beyond 2^62");
  }
  return out;
}

inline u64 checked_mul(u64 a, u64 b) {
  u64 out = 0;
  if (__builtin_mul_overflow(a, b, &out) || out >= kValueLimit) {
    throw RangeError("arithmetic overflow beyond 2^62");
  }
  return out;
}

// Clamps at kValueLimit instead of throwing; used where "too large" is itself
// a usable answer (a block that starts past any valid stone count).
inline u64 saturating_add(u64 a, u64 b) {
  u64 out = 0;
  if (__builtin_add_overflow(a, b, &out) || out >= kValueLimit) {
    return kValueLimit;
  }
  return out;
}

}  // namespace dynnim
