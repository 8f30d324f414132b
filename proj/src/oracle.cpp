#include "dynnim/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

namespace dynnim::oracle {
namespace {

using i64 = std::int64_t;

// Walks the two-weight moves in moves_g2 order without materialising them.
class MoveCursorG2 {
 public:
  explicit MoveCursorG2(const WeightedPosition& pos)
      : pos_(pos), budget_(removal_limit(pos)), take_heavy_(0), take_light_(1) {
    settle();
  }

  bool done() const { return take_heavy_ > std::min(pos_.heavy, budget_ / 2); }
  WeightedPosition target() const { return {pos_.heavy - take_heavy_, pos_.light - take_light_}; }
  void advance() {
    ++take_light_;
    settle();
  }

 private:
  void settle() {
    while (!done() && take_light_ > std::min(pos_.light, budget_ - 2 * take_heavy_)) {
      ++take_heavy_;
      take_light_ = 0;
    }
  }

  WeightedPosition pos_;
  u64 budget_;
  u64 take_heavy_;
  u64 take_light_;
};

}  // namespace

Verdict TurnSolver::solve(const TurnPosition& root) {
  validate(root);
  if (root.stones > limits_.max_stones) {
    throw BoundExceeded("stone count " + std::to_string(root.stones) +
                        " exceeds oracle bound " + std::to_string(limits_.max_stones));
  }
  if (const Verdict* hit = memo_.find(root)) return *hit;

  struct Frame {
    TurnPosition pos;
    u64 next_take;
    u64 max_take;
  };
  std::vector<Frame> stack;
  stack.push_back({root, 1, max_take(root, f_)});

  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next_take > top.max_take) {
      memo_.insert(top.pos, Verdict::P);
      stack.pop_back();
      continue;
    }
    const TurnPosition child = apply(top.pos, MoveG1{top.next_take});
    if (const Verdict* v = memo_.find(child)) {
      if (*v == Verdict::P) {
        memo_.insert(top.pos, Verdict::N);
        stack.pop_back();
      } else {
        ++top.next_take;
      }
      continue;
    }
    stack.push_back({child, 1, max_take(child, f_)});
  }
  return *memo_.find(root);
}

Verdict WeightSolver::solve(const WeightedPosition& root) {
  const u64 weight = total_weight(root);
  if (weight > limits_.max_weight) {
    throw BoundExceeded("total weight " + std::to_string(weight) + " exceeds oracle bound " +
                        std::to_string(limits_.max_weight));
  }
  if (const Verdict* hit = memo_.find(root)) return *hit;

  struct Frame {
    WeightedPosition pos;
    MoveCursorG2 cursor;
  };
  std::vector<Frame> stack;
  stack.push_back({root, MoveCursorG2(root)});

  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.cursor.done()) {
      memo_.insert(top.pos, Verdict::P);
      stack.pop_back();
      continue;
    }
    const WeightedPosition child = top.cursor.target();
    if (const Verdict* v = memo_.find(child)) {
      if (*v == Verdict::P) {
        memo_.insert(top.pos, Verdict::N);
        stack.pop_back();
      } else {
        top.cursor.advance();
      }
      continue;
    }
    stack.push_back({child, MoveCursorG2(child)});
  }
  return *memo_.find(root);
}

Verdict solve_g1(const TurnPosition& pos, const BoundFn& f, Limits limits) {
  return TurnSolver(f, limits).solve(pos);
}

Verdict solve_g2(const WeightedPosition& pos, Limits limits) {
  return WeightSolver(limits).solve(pos);
}

// ---------------------------------------------------------------------------
// WeightGrid / TurnGrid

WeightGrid::WeightGrid(u64 max_weight) : max_weight_(max_weight) {
  rows_.resize(max_weight / 2 + 1);
  for (u64 x = 0; x < rows_.size(); ++x) rows_[x].assign(max_weight - 2 * x + 1, Verdict::N);
}

Verdict WeightGrid::at(const WeightedPosition& pos) const {
  if (!contains(pos)) throw std::out_of_range("position " + to_string(pos) + " outside sweep");
  return rows_[pos.heavy][pos.light];
}

std::size_t WeightGrid::size() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

std::size_t WeightGrid::count(Verdict v) const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += static_cast<std::size_t>(std::count(r.begin(), r.end(), v));
  return n;
}

TurnGrid::TurnGrid(u64 max_x, u64 max_k) : max_x_(max_x), max_k_(max_k) {
  if (max_k == 0) throw ParseError("max turn must be at least 1");
  cells_.assign(static_cast<std::size_t>((max_x + 1) * (top_turn() + 1)), Verdict::N);
}

Verdict TurnGrid::at(const TurnPosition& pos) const {
  if (!contains(pos)) throw std::out_of_range("position " + to_string(pos) + " outside sweep");
  return cells_[index(pos)];
}

// ---------------------------------------------------------------------------
// sweep_g2

namespace {

WeightGrid sweep_g2_serial(u64 max_weight) {
  WeightGrid grid(max_weight);
  for (u64 w = 0; w <= max_weight; ++w) {
    for (u64 x = 0; 2 * x <= w; ++x) {
      const WeightedPosition pos{x, w - 2 * x};
      Verdict v = Verdict::P;
      for (MoveCursorG2 c(pos); !c.done(); c.advance()) {
        if (grid.at(c.target()) == Verdict::P) {
          v = Verdict::N;
          break;
        }
      }
      grid.set(pos, v);
    }
  }
  return grid;
}

WeightGrid sweep_g2_parallel(u64 max_weight) {
  WeightGrid grid(max_weight);
  const i64 top = static_cast<i64>(max_weight);

  // prefix[x][j] = number of P positions (x, y') with y' < j. Row x gains
  // entry w-2x+1 while layer w is processed; readers of row x in that layer
  // stop at index w-2x, so rows can be extended in place.
  std::vector<std::vector<std::uint32_t>> prefix(static_cast<std::size_t>(top / 2 + 1));
  for (i64 x = 0; x <= top / 2; ++x) prefix[x].assign(static_cast<std::size_t>(top - 2 * x + 2), 0);

#pragma omp parallel
  for (i64 w = 0; w <= top; ++w) {
    const i64 lowest = w - w / 2;  // weights reachable in one move: [lowest, w-1]
#pragma omp for schedule(dynamic, 16)
    for (i64 x = 0; x <= w / 2; ++x) {
      const i64 y = w - 2 * x;
      bool has_p_successor = false;
      for (i64 xs = x; xs >= 0 && !has_p_successor; --xs) {
        const i64 y_lo = std::max<i64>(0, lowest - 2 * xs);
        const i64 y_hi = std::min<i64>(y, w - 1 - 2 * xs);
        if (y_hi < y_lo) continue;
        const auto& row = prefix[xs];
        has_p_successor = row[y_hi + 1] > row[y_lo];
      }
      const Verdict v = has_p_successor ? Verdict::N : Verdict::P;
      auto& own = prefix[x];
      own[y + 1] = own[y] + (v == Verdict::P ? 1 : 0);
      grid.set({static_cast<u64>(x), static_cast<u64>(y)}, v);
    }
  }
  return grid;
}

}  // namespace

WeightGrid sweep_g2(u64 max_weight, Execution exec, Limits limits) {
  if (max_weight > limits.max_weight) {
    throw BoundExceeded("sweep weight " + std::to_string(max_weight) + " exceeds oracle bound " +
                        std::to_string(limits.max_weight));
  }
  return exec == Execution::serial ? sweep_g2_serial(max_weight) : sweep_g2_parallel(max_weight);
}

// ---------------------------------------------------------------------------
// sweep_g1

namespace {

std::vector<u64> tabulate_bound(const BoundFn& f, u64 top_turn) {
  std::vector<u64> bound(top_turn + 1, 0);
  for (u64 k = 1; k <= top_turn; ++k) bound[k] = f(k);
  return bound;
}

TurnGrid sweep_g1_serial(const BoundFn& f, u64 max_x, u64 max_k) {
  TurnGrid grid(max_x, max_k);
  const u64 top = grid.top_turn();
  const auto bound = tabulate_bound(f, top);
  for (u64 u = 0; u <= max_x; ++u) {
    for (u64 k = 1; k + u <= top; ++k) {
      Verdict v = Verdict::P;
      const u64 limit = std::min(u, bound[k]);
      for (u64 t = 1; t <= limit; ++t) {
        if (grid.at({u - t, k + 1}) == Verdict::P) {
          v = Verdict::N;
          break;
        }
      }
      grid.set({u, k}, v);
    }
  }
  return grid;
}

TurnGrid sweep_g1_parallel(const BoundFn& f, u64 max_x, u64 max_k) {
  TurnGrid grid(max_x, max_k);
  const i64 top = static_cast<i64>(grid.top_turn());
  const i64 stones_top = static_cast<i64>(max_x);
  const auto bound = tabulate_bound(f, grid.top_turn());

  // prefix[k][j] = number of P positions (u', k) with u' < j. Row u writes
  // prefix[k][u+1] and reads prefix[k+1][<= u] only.
  std::vector<std::vector<std::uint32_t>> prefix(static_cast<std::size_t>(top + 2));
  for (auto& col : prefix) col.assign(static_cast<std::size_t>(stones_top + 2), 0);

#pragma omp parallel
  for (i64 u = 0; u <= stones_top; ++u) {
#pragma omp for schedule(static)
    for (i64 k = 1; k <= top - u; ++k) {
      const i64 reach = std::min<i64>(u, static_cast<i64>(std::min<u64>(bound[k], max_x)));
      const auto& next = prefix[k + 1];
      const bool has_p_successor = reach > 0 && next[u] > next[u - reach];
      const Verdict v = has_p_successor ? Verdict::N : Verdict::P;
      prefix[k][u + 1] = prefix[k][u] + (v == Verdict::P ? 1 : 0);
      grid.set({static_cast<u64>(u), static_cast<u64>(k)}, v);
    }
  }
  return grid;
}

}  // namespace

TurnGrid sweep_g1(const BoundFn& f, u64 max_x, u64 max_k, Execution exec, Limits limits) {
  if (max_x > limits.max_stones) {
    throw BoundExceeded("sweep stones " + std::to_string(max_x) + " exceeds oracle bound " +
                        std::to_string(limits.max_stones));
  }
  require_in_range(max_k, "max turn");
  return exec == Execution::serial ? sweep_g1_serial(f, max_x, max_k)
                                   : sweep_g1_parallel(f, max_x, max_k);
}

}  // namespace dynnim::oracle
