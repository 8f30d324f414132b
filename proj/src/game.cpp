#include "dynnim/game.hpp"

#include <algorithm>

namespace dynnim {

void validate(const TurnPosition& pos) {
  require_in_range(pos.stones, "stone count");
  require_in_range(pos.turn, "turn index");
  if (pos.turn == 0) throw ParseError("turn index must be at least 1");
}

void validate(const WeightedPosition& pos) { total_weight(pos); }

u64 total_weight(const WeightedPosition& pos) {
  return checked_add(checked_mul(pos.heavy, 2), require_in_range(pos.light, "light count"));
}

u64 max_take(const TurnPosition& pos, const BoundFn& f) {
  validate(pos);
  if (pos.stones == 0) return 0;
  return std::min(pos.stones, f(pos.turn));
}

std::vector<SuccessorG1> moves_g1(const TurnPosition& pos, const BoundFn& f) {
  const u64 limit = max_take(pos, f);
  std::vector<SuccessorG1> out;
  out.reserve(limit);
  for (u64 t = 1; t <= limit; ++t) {
    const MoveG1 move{t};
    out.push_back({move, apply(pos, move)});
  }
  return out;
}

std::vector<SuccessorG2> moves_g2(const WeightedPosition& pos) {
  std::vector<SuccessorG2> out;
  for_each_move_g2(pos, [&out](const SuccessorG2& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

bool has_moves(const TurnPosition& pos) {
  validate(pos);
  return pos.stones > 0;
}

bool has_moves(const WeightedPosition& pos) {
  const u64 budget = removal_limit(pos);
  return (budget >= 1 && pos.light >= 1) || (budget >= 2 && pos.heavy >= 1);
}

std::optional<std::string> violated_constraint(const TurnPosition& pos, const BoundFn& f,
                                               const MoveG1& move) {
  validate(pos);
  if (move.take < 1) return "take >= 1";
  if (move.take > pos.stones) return "take <= stones (" + std::to_string(pos.stones) + ")";
  const u64 bound = f(pos.turn);
  if (move.take > bound) {
    return "take <= f(k) = " + std::to_string(bound) + " at turn " + std::to_string(pos.turn);
  }
  return std::nullopt;
}

std::optional<std::string> violated_constraint(const WeightedPosition& pos,
                                               const MoveG2& move) {
  const u64 budget = removal_limit(pos);
  if (move.take_heavy > pos.heavy) {
    return "takeHeavy <= heavy stones (" + std::to_string(pos.heavy) + ")";
  }
  if (move.take_light > pos.light) {
    return "takeLight <= light stones (" + std::to_string(pos.light) + ")";
  }
  // Both takes are bounded by the position, so this cannot overflow.
  const u64 removed = 2 * move.take_heavy + move.take_light;
  if (removed < 1) return "2t+u >= 1";
  if (removed > budget) {
    return "2t+u = " + std::to_string(removed) + " > floor(w/2) = " + std::to_string(budget);
  }
  return std::nullopt;
}

std::string to_string(const TurnPosition& pos) {
  return "(" + std::to_string(pos.stones) + "," + std::to_string(pos.turn) + ")";
}

std::string to_string(const WeightedPosition& pos) {
  return "(" + std::to_string(pos.heavy) + "," + std::to_string(pos.light) + ")";
}

std::string to_string(const MoveG1& move) { return "take " + std::to_string(move.take); }

std::string to_string(const MoveG2& move) {
  return "remove (" + std::to_string(move.take_heavy) + "," + std::to_string(move.take_light) +
         ")";
}

}  // namespace dynnim
