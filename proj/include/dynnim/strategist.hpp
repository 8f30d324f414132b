#pragma once

#include <variant>

#include "dynnim/bound_fn.hpp"
#include "dynnim/closed_form.hpp"
#include "dynnim/game.hpp"

namespace dynnim {

// The position has no legal move; the player to move has lost.
struct NoMove {
  bool operator==(const NoMove&) const = default;
};

struct WinningG1 {
  MoveG1 move;
  TurnPosition target;
  u64 target_block = 0;  // block of the target at turn k+1

  bool operator==(const WinningG1&) const = default;
};

// Every move from a P position loses; this is the fallback that gets played.
struct AllLosingG1 {
  MoveG1 move;
  TurnPosition target;

  bool operator==(const AllLosingG1&) const = default;
};

struct WinningG2 {
  MoveG2 move;
  WeightedPosition target;
  FamilyTag target_family;

  bool operator==(const WinningG2&) const = default;
};

struct AllLosingG2 {
  MoveG2 move;
  WeightedPosition target;

  bool operator==(const AllLosingG2&) const = default;
};

using AdviceG1 = std::variant<NoMove, WinningG1, AllLosingG1>;
using AdviceG2 = std::variant<NoMove, WinningG2, AllLosingG2>;

// From an N position: the move to the largest reachable P stone count, which
// lies in block n-1 at turn k+1 when x sits in the gap before block n.
// From a P position: take 1.
AdviceG1 advise_g1(const TurnPosition& pos, const BoundFn& f);

// From an N position: scans target weights w' from w-1 down to w-floor(w/2)
// that can carry a P position, and takes the first P position dominated by
// the current one, preferring more heavy stones. From a P position: the
// first move in moves_g2 order.
AdviceG2 advise_g2(const WeightedPosition& pos);

// The move an engine plays (winning or fallback); nullopt when there is none.
std::optional<MoveG1> engine_move(const AdviceG1& advice);
std::optional<MoveG2> engine_move(const AdviceG2& advice);

}  // namespace dynnim
