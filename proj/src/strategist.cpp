#include "dynnim/strategist.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace dynnim {
namespace {

// Largest-heavy P position of weight `weight` inside the box
// [0, max_heavy] x [0, max_light], if any.
std::optional<std::pair<WeightedPosition, FamilyTag>> best_dominated_p(u64 weight,
                                                                       u64 max_heavy,
                                                                       u64 max_light) {
  std::optional<std::pair<WeightedPosition, FamilyTag>> best;
  auto consider = [&](WeightedPosition p, FamilyTag tag) {
    if (p.heavy > max_heavy || p.light > max_light) return;
    if (!best || p.heavy > best->first.heavy) best = {{p, tag}};
  };
  // Smallest y in [y_min, y_max] with y == weight (mod 2) and (weight - y)/2 <= max_heavy.
  auto lightest_fit = [&](u64 y_min, u64 y_max) -> std::optional<u64> {
    const u64 need = weight > 2 * max_heavy ? weight - 2 * max_heavy : 0;
    u64 y = std::max(y_min, need);
    if ((y & 1) != (weight & 1)) ++y;
    if (y > y_max || y > weight) return std::nullopt;
    return y;
  };

  if (std::has_single_bit(weight + 2)) {
    const u64 n = static_cast<u64>(std::countr_zero(weight + 2)) - 1;
    consider({weight / 2, 0}, {Family::P1, n, 0});
  }
  if (weight + 3 >= 4 && std::has_single_bit(weight + 3)) {
    const u64 n = static_cast<u64>(std::countr_zero(weight + 3)) - 1;
    if (n >= 2) {
      if (auto y = lightest_fit(1, std::min(max_light, 2 * n - 3))) {
        consider({(weight - *y) / 2, *y}, {Family::P2, n, (*y + 1) / 2});
      }
    }
  }
  if (std::has_single_bit(weight + 1)) {
    const u64 n = static_cast<u64>(std::countr_zero(weight + 1)) - 1;
    if (auto y = lightest_fit(2 * n + 1, max_light)) {
      consider({(weight - *y) / 2, *y}, {Family::P3, n, (*y + 1) / 2 - n});
    }
  }
  return best;
}

}  // namespace

AdviceG1 advise_g1(const TurnPosition& pos, const BoundFn& f) {
  validate(pos);
  if (!has_moves(pos)) return NoMove{};
  const auto here = classify_g1(pos, f);
  if (here.verdict == Verdict::P) {
    const MoveG1 move{1};
    return AllLosingG1{move, apply(pos, move)};
  }

  // x sits strictly between block n-1 and block n at turn k; the target block
  // is n-1 at turn k+1.
  u64 n = 1;
  for (u64 lo = checked_add(f(pos.turn), 1); lo <= pos.stones;) {
    ++n;
    lo = saturating_add(lo, saturating_add(f(checked_add(pos.turn, 2 * n - 2)), 1));
  }
  const BlockBounds target = block_bounds_g1(f, pos.turn + 1, n - 1);

  const u64 reach = max_take(pos, f);
  const u64 best = std::min(pos.stones - 1, target.hi);
  const u64 floor = std::max(pos.stones - reach, target.lo);
  if (best < floor) {
    throw std::logic_error("no winning move found from N position " + to_string(pos));
  }
  const MoveG1 move{pos.stones - best};
  return WinningG1{move, apply(pos, move), n - 1};
}

AdviceG2 advise_g2(const WeightedPosition& pos) {
  const u64 w = total_weight(pos);
  if (!has_moves(pos)) return NoMove{};
  const auto here = classify_g2(pos);
  if (here.verdict == Verdict::P) {
    // First entry of moves_g2: a single light stone if there is one.
    const MoveG2 move = pos.light >= 1 ? MoveG2{0, 1} : MoveG2{1, 0};
    return AllLosingG2{move, apply(pos, move)};
  }

  // Candidate target weights are 2^m - 1, 2^m - 2, 2^m - 3, tried heaviest first.
  const u64 lowest = w - w / 2;
  for (int m = std::bit_width(w) + 1; m >= 1; --m) {
    const u64 p = u64{1} << m;
    if (p - 1 < lowest) break;
    for (u64 d = 1; d <= 3 && d <= p; ++d) {
      const u64 target_w = p - d;
      if (target_w >= w || target_w < lowest) continue;
      if (auto hit = best_dominated_p(target_w, pos.heavy, pos.light)) {
        const auto& [target, tag] = *hit;
        const MoveG2 move{pos.heavy - target.heavy, pos.light - target.light};
        return WinningG2{move, target, tag};
      }
    }
  }
  throw std::logic_error("no winning move found from N position " + to_string(pos));
}

std::optional<MoveG1> engine_move(const AdviceG1& advice) {
  if (auto* win = std::get_if<WinningG1>(&advice)) return win->move;
  if (auto* lose = std::get_if<AllLosingG1>(&advice)) return lose->move;
  return std::nullopt;
}

std::optional<MoveG2> engine_move(const AdviceG2& advice) {
  if (auto* win = std::get_if<WinningG2>(&advice)) return win->move;
  if (auto* lose = std::get_if<AllLosingG2>(&advice)) return lose->move;
  return std::nullopt;
}

}  // namespace dynnim
