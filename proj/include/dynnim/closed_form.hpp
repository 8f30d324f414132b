#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dynnim/bound_fn.hpp"
#include "dynnim/game.hpp"

namespace dynnim {

// The n-th interval [lo, hi] of P stone counts at a fixed turn k:
//   lo = sum_{t=1..n} (f(k+2t-2) + 1),  hi = sum_{t=1..n} (f(k+2t-1) + 1).
// Block 0 is {0}.
struct BlockBounds {
  u64 index = 0;
  u64 lo = 0;
  u64 hi = 0;

  bool operator==(const BlockBounds&) const = default;
};

// Two-weight P positions come in three families, all indexed by n >= 0:
//   P1: (2^n - 1, 0)                         weight 2^{n+1} - 2
//   P2: (2^n - i - 1, 2i - 1), 1<=i<=n-1      weight 2^{n+1} - 3
//   P3: (2^n - n - i, 2n + 2i - 1), 1<=i<=2^n-n  weight 2^{n+1} - 1
// n = 0 contributes the terminals (0,0) in P1 and (0,1) in P3.
enum class Family { P1, P2, P3 };

struct FamilyTag {
  Family family = Family::P1;
  u64 n = 0;
  u64 i = 0;  // 0 for P1

  bool operator==(const FamilyTag&) const = default;
};

std::string to_string(Family family);
std::string to_string(const FamilyTag& tag);

struct ClassificationG1 {
  Verdict verdict = Verdict::N;
  std::optional<u64> block;  // witnessing block index when P
};

struct ClassificationG2 {
  Verdict verdict = Verdict::N;
  std::optional<FamilyTag> family;  // witnessing family when P
};

// Throws RangeError if a bound leaves 2^62.
BlockBounds block_bounds_g1(const BoundFn& f, u64 k, u64 n);

ClassificationG1 classify_g1(const TurnPosition& pos, const BoundFn& f);
ClassificationG2 classify_g2(const WeightedPosition& pos);

// Every P position with total weight <= max_weight, ordered by (weight, heavy).
// Built from the family definitions, not from classify_g2.
std::vector<WeightedPosition> enumerate_p_g2(u64 max_weight);

// Blocks at turn k with lo <= max_x, the last one clipped to max_x.
std::vector<BlockBounds> enumerate_p_g1(const BoundFn& f, u64 k, u64 max_x);

// Position of the given family member; used by tooling that lists families.
WeightedPosition family_member(const FamilyTag& tag);

}  // namespace dynnim
