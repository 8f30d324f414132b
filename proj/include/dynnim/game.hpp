#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dynnim/bound_fn.hpp"
#include "dynnim/error.hpp"

namespace dynnim {

// Normal-play outcome class: P means the previous player wins, N the next.
enum class Verdict : std::uint8_t { P, N };

constexpr std::string_view to_string(Verdict v) { return v == Verdict::P ? "P" : "N"; }

// Turn-indexed game: `stones` left in the pile, `turn` is the 1-based index of
// the turn about to be played.
struct TurnPosition {
  u64 stones = 0;
  u64 turn = 1;

  auto operator<=>(const TurnPosition&) const = default;
};

// Two-weight game: `heavy` stones weigh 2, `light` stones weigh 1.
struct WeightedPosition {
  u64 heavy = 0;
  u64 light = 0;

  auto operator<=>(const WeightedPosition&) const = default;
};

struct MoveG1 {
  u64 take = 0;

  auto operator<=>(const MoveG1&) const = default;
};

struct MoveG2 {
  u64 take_heavy = 0;
  u64 take_light = 0;

  auto operator<=>(const MoveG2&) const = default;
};

struct SuccessorG1 {
  MoveG1 move;
  TurnPosition position;

  bool operator==(const SuccessorG1&) const = default;
};

struct SuccessorG2 {
  MoveG2 move;
  WeightedPosition position;

  bool operator==(const SuccessorG2&) const = default;
};

// Range checks; throw RangeError (or ParseError for turn 0).
void validate(const TurnPosition& pos);
void validate(const WeightedPosition& pos);

// 2*heavy + light, rejected past 2^62.
u64 total_weight(const WeightedPosition& pos);

// Largest weight a single move may remove: floor(total_weight / 2).
inline u64 removal_limit(const WeightedPosition& pos) { return total_weight(pos) / 2; }

// min(stones, f(turn)).
u64 max_take(const TurnPosition& pos, const BoundFn& f);

// All legal moves in ascending order of `take`. Empty iff stones == 0.
std::vector<SuccessorG1> moves_g1(const TurnPosition& pos, const BoundFn& f);

// All legal moves, ascending in take_heavy then take_light. Empty exactly at
// (0,0), (1,0) and (0,1).
std::vector<SuccessorG2> moves_g2(const WeightedPosition& pos);

// Calls fn(successor) for each move in moves_g2 order until fn returns false.
// Returns false iff it stopped early.
template <typename Fn>
bool for_each_move_g2(const WeightedPosition& pos, Fn&& fn);

bool has_moves(const TurnPosition& pos);
bool has_moves(const WeightedPosition& pos);

// nullopt when legal, otherwise a short statement of the violated constraint.
std::optional<std::string> violated_constraint(const TurnPosition& pos, const BoundFn& f,
                                               const MoveG1& move);
std::optional<std::string> violated_constraint(const WeightedPosition& pos,
                                               const MoveG2& move);

// Apply a move known to be legal.
inline TurnPosition apply(const TurnPosition& pos, const MoveG1& move) {
  return {pos.stones - move.take, pos.turn + 1};
}
inline WeightedPosition apply(const WeightedPosition& pos, const MoveG2& move) {
  return {pos.heavy - move.take_heavy, pos.light - move.take_light};
}

template <typename Fn>
bool for_each_move_g2(const WeightedPosition& pos, Fn&& fn) {
  const u64 budget = removal_limit(pos);
  const u64 max_heavy = pos.heavy < budget / 2 ? pos.heavy : budget / 2;
  for (u64 t = 0; t <= max_heavy; ++t) {
    const u64 room = budget - 2 * t;
    const u64 max_light = pos.light < room ? pos.light : room;
    for (u64 u = (t == 0 ? 1 : 0); u <= max_light; ++u) {
      const MoveG2 move{t, u};
      if (!fn(SuccessorG2{move, apply(pos, move)})) return false;
    }
  }
  return true;
}

std::string to_string(const TurnPosition& pos);
std::string to_string(const WeightedPosition& pos);
std::string to_string(const MoveG1& move);
std::string to_string(const MoveG2& move);

}  // namespace dynnim
