#include "dynnim/closed_form.hpp"

#include <algorithm>
#include <bit>

namespace dynnim {
namespace {

bool is_power_of_two(u64 v) { return std::has_single_bit(v); }

// For v = 2^{n+1}, returns n.
u64 exponent_below(u64 v) { return static_cast<u64>(std::countr_zero(v)) - 1; }

}  // namespace

std::string to_string(Family family) {
  switch (family) {
    case Family::P1:
      return "P1";
    case Family::P2:
      return "P2";
    case Family::P3:
      return "P3";
  }
  return "?";
}

std::string to_string(const FamilyTag& tag) {
  std::string out = to_string(tag.family) + "(n=" + std::to_string(tag.n);
  if (tag.family != Family::P1) out += ",i=" + std::to_string(tag.i);
  return out + ")";
}

BlockBounds block_bounds_g1(const BoundFn& f, u64 k, u64 n) {
  require_in_range(k, "turn index");
  if (k == 0) throw ParseError("turn index must be at least 1");
  BlockBounds b{n, 0, 0};
  for (u64 t = 1; t <= n; ++t) {
    const u64 even_turn = checked_add(k, 2 * t - 2);
    b.lo = checked_add(b.lo, checked_add(f(even_turn), 1));
    b.hi = checked_add(b.hi, checked_add(f(even_turn + 1), 1));
  }
  return b;
}

ClassificationG1 classify_g1(const TurnPosition& pos, const BoundFn& f) {
  validate(pos);
  const u64 x = pos.stones;
  const u64 k = pos.turn;
  // Block 0 is {0}; grow blocks until one starts beyond x. lo(n) >= n, so the
  // loop runs at most x+1 times. Sums saturate at 2^62, which exceeds any x.
  u64 lo = 0;
  u64 hi = 0;
  for (u64 n = 0;; ++n) {
    if (n > 0) {
      const u64 even_turn = saturating_add(k, 2 * n - 2);
      lo = saturating_add(lo, saturating_add(f(even_turn), 1));
      hi = saturating_add(hi, saturating_add(f(saturating_add(even_turn, 1)), 1));
    }
    if (lo > x) return {Verdict::N, std::nullopt};
    if (x <= hi) return {Verdict::P, n};
  }
}

ClassificationG2 classify_g2(const WeightedPosition& pos) {
  const u64 w = total_weight(pos);
  const u64 y = pos.light;

  if (y == 0 && is_power_of_two(w + 2)) {
    return {Verdict::P, FamilyTag{Family::P1, exponent_below(w + 2), 0}};
  }
  if (is_power_of_two(w + 3) && w + 3 >= 4) {
    const u64 n = exponent_below(w + 3);
    if (y >= 1 && n >= 2 && y <= 2 * n - 3) {
      return {Verdict::P, FamilyTag{Family::P2, n, (y + 1) / 2}};
    }
  }
  if (is_power_of_two(w + 1) && w + 1 >= 2) {
    const u64 n = exponent_below(w + 1);
    if (y >= 2 * n + 1) {
      return {Verdict::P, FamilyTag{Family::P3, n, (y + 1) / 2 - n}};
    }
  }
  return {Verdict::N, std::nullopt};
}

WeightedPosition family_member(const FamilyTag& tag) {
  const u64 two_n = u64{1} << tag.n;
  switch (tag.family) {
    case Family::P1:
      return {two_n - 1, 0};
    case Family::P2:
      return {two_n - tag.i - 1, 2 * tag.i - 1};
    case Family::P3:
      return {two_n - tag.n - tag.i, 2 * tag.n + 2 * tag.i - 1};
  }
  return {};
}

std::vector<WeightedPosition> enumerate_p_g2(u64 max_weight) {
  require_in_range(max_weight, "max weight");
  std::vector<WeightedPosition> out;
  // The lightest member of level n weighs 2^{n+1} - 3.
  for (u64 n = 0; n < 61 && (u64{2} << n) <= max_weight + 3; ++n) {
    const u64 two_n = u64{1} << n;
    if (2 * two_n - 2 <= max_weight) out.push_back(family_member({Family::P1, n, 0}));
    if (2 * two_n >= 3 && 2 * two_n - 3 <= max_weight) {
      for (u64 i = 1; i + 1 <= n; ++i) out.push_back(family_member({Family::P2, n, i}));
    }
    if (2 * two_n - 1 <= max_weight) {
      for (u64 i = 1; i + n <= two_n; ++i) out.push_back(family_member({Family::P3, n, i}));
    }
  }
  std::sort(out.begin(), out.end(), [](const WeightedPosition& a, const WeightedPosition& b) {
    const u64 wa = 2 * a.heavy + a.light;
    const u64 wb = 2 * b.heavy + b.light;
    return wa != wb ? wa < wb : a.heavy < b.heavy;
  });
  return out;
}

std::vector<BlockBounds> enumerate_p_g1(const BoundFn& f, u64 k, u64 max_x) {
  require_in_range(max_x, "max stones");
  std::vector<BlockBounds> out;
  BlockBounds b{0, 0, 0};
  for (u64 n = 0;; ++n) {
    if (n > 0) {
      const u64 even_turn = checked_add(k, 2 * n - 2);
      b.index = n;
      b.lo = saturating_add(b.lo, saturating_add(f(even_turn), 1));
      b.hi = saturating_add(b.hi, saturating_add(f(even_turn + 1), 1));
    }
    if (b.lo > max_x) break;
    out.push_back({b.index, b.lo, std::min(b.hi, max_x)});
  }
  return out;
}

}  // namespace dynnim
