#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "dynnim/bound_fn.hpp"
#include "dynnim/execution.hpp"
#include "dynnim/game.hpp"

// Exhaustive backward-induction solvers. Nothing in here looks at the closed
// forms; this is the ground truth they are checked against.
namespace dynnim::oracle {

struct Limits {
  u64 max_stones = 10'000;        // turn-indexed game
  u64 max_weight = u64{1} << 12;  // two-weight game
};

struct TurnKeyHash {
  std::size_t operator()(const TurnPosition& p) const noexcept {
    return std::hash<u64>{}(p.stones * 0x9E3779B97F4A7C15ULL ^ p.turn);
  }
};

struct WeightKeyHash {
  std::size_t operator()(const WeightedPosition& p) const noexcept {
    return std::hash<u64>{}(p.heavy * 0x9E3779B97F4A7C15ULL ^ p.light);
  }
};

// Position -> verdict map whose entries may never change once written.
template <typename Key, typename Hash>
class MemoTable {
 public:
  const Verdict* find(const Key& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  void insert(const Key& key, Verdict v) {
    auto [it, inserted] = entries_.emplace(key, v);
    if (!inserted && it->second != v) {
      throw std::logic_error("memo entry rewritten with a different verdict");
    }
  }

  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<Key, Verdict, Hash> entries_;
};

// Memoised normal-play solver for the turn-indexed game. Keyed on (u, k) with
// no attempt to share results between turns.
class TurnSolver {
 public:
  TurnSolver(BoundFn f, Limits limits = {}) : f_(std::move(f)), limits_(limits) {}

  // Throws BoundExceeded when pos.stones > limits.max_stones.
  Verdict solve(const TurnPosition& pos);

  std::size_t memo_size() const { return memo_.size(); }

 private:
  BoundFn f_;
  Limits limits_;
  MemoTable<TurnPosition, TurnKeyHash> memo_;
};

// Memoised normal-play solver for the two-weight game; walks successors in
// moves_g2 order and stops at the first P successor.
class WeightSolver {
 public:
  explicit WeightSolver(Limits limits = {}) : limits_(limits) {}

  // Throws BoundExceeded when the total weight exceeds limits.max_weight.
  Verdict solve(const WeightedPosition& pos);

  std::size_t memo_size() const { return memo_.size(); }

 private:
  Limits limits_;
  MemoTable<WeightedPosition, WeightKeyHash> memo_;
};

// One-shot wrappers with a fresh memo table.
Verdict solve_g1(const TurnPosition& pos, const BoundFn& f, Limits limits = {});
Verdict solve_g2(const WeightedPosition& pos, Limits limits = {});

// Verdicts for every two-weight position of total weight <= max_weight.
class WeightGrid {
 public:
  explicit WeightGrid(u64 max_weight);

  u64 max_weight() const { return max_weight_; }
  bool contains(const WeightedPosition& pos) const {
    return pos.heavy <= max_weight_ / 2 && pos.light <= max_weight_ - 2 * pos.heavy;
  }
  // Throws std::out_of_range outside the swept region.
  Verdict at(const WeightedPosition& pos) const;
  void set(const WeightedPosition& pos, Verdict v) { row(pos.heavy)[pos.light] = v; }

  std::size_t size() const;
  std::size_t count(Verdict v) const;

  // Visits every position in (weight, heavy) order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (u64 w = 0; w <= max_weight_; ++w) {
      for (u64 x = 0; 2 * x <= w; ++x) fn(WeightedPosition{x, w - 2 * x}, rows_[x][w - 2 * x]);
    }
  }

  bool operator==(const WeightGrid&) const = default;

 private:
  std::vector<Verdict>& row(u64 heavy) { return rows_[heavy]; }

  u64 max_weight_;
  std::vector<std::vector<Verdict>> rows_;
};

// Verdicts for the turn-indexed game on the triangle u + k <= top_turn where
// top_turn = max_k + max_x. Every (u <= max_x, k <= max_k) lies inside, and
// so do all positions reachable from them.
class TurnGrid {
 public:
  TurnGrid(u64 max_x, u64 max_k);

  u64 max_x() const { return max_x_; }
  u64 max_k() const { return max_k_; }
  u64 top_turn() const { return max_x_ + max_k_; }
  bool contains(const TurnPosition& pos) const {
    return pos.turn >= 1 && pos.stones <= max_x_ && pos.stones + pos.turn <= top_turn();
  }
  Verdict at(const TurnPosition& pos) const;
  void set(const TurnPosition& pos, Verdict v) { cells_[index(pos)] = v; }

  bool operator==(const TurnGrid&) const = default;

 private:
  std::size_t index(const TurnPosition& pos) const {
    return static_cast<std::size_t>(pos.stones * (top_turn() + 1) + pos.turn);
  }

  u64 max_x_;
  u64 max_k_;
  std::vector<Verdict> cells_;
};

// Weight-ordered sweep. Serial execution is the reference kernel that walks
// successors exactly like moves_g2; parallel execution processes one weight
// layer at a time and answers "is there a P successor" with per-row prefix
// counts. Throws BoundExceeded past limits.max_weight.
WeightGrid sweep_g2(u64 max_weight, Execution exec = Execution::parallel, Limits limits = {});

// Stone-ordered sweep of the turn-indexed game over the TurnGrid triangle.
// Same serial/parallel split as sweep_g2, with per-turn prefix counts.
TurnGrid sweep_g1(const BoundFn& f, u64 max_x, u64 max_k,
                  Execution exec = Execution::parallel, Limits limits = {});

}  // namespace dynnim::oracle
