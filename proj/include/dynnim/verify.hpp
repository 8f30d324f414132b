#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "dynnim/bound_fn.hpp"
#include "dynnim/execution.hpp"
#include "dynnim/game.hpp"

namespace dynnim {

// A position where the closed form and the oracle disagree. (first, second)
// is (stones, turn) for the turn-indexed game and (heavy, light) otherwise.
struct Mismatch {
  u64 first = 0;
  u64 second = 0;
  Verdict formula = Verdict::N;
  Verdict oracle = Verdict::N;

  auto operator<=>(const Mismatch&) const = default;
};

struct VerificationReport {
  std::string game;
  std::string params;
  u64 positions_checked = 0;
  std::vector<Mismatch> mismatches;  // sorted by position
  double wall_seconds = 0.0;

  bool pass() const { return mismatches.empty(); }
};

// classify_g1 against the oracle sweep on 0 <= x <= max_x, 1 <= k <= max_k.
VerificationReport verify_g1(const BoundFn& f, u64 max_x, u64 max_k,
                             Execution exec = Execution::parallel);

// classify_g2 against the oracle sweep on every position of weight <= max_weight.
VerificationReport verify_g2(u64 max_weight, Execution exec = Execution::parallel);

// The bound families the default verification run covers.
std::vector<BoundFn> canonical_bounds();

// Outcome of an exhaustive property check. Counterexamples are sorted.
struct PropertyReport {
  std::string name;
  u64 positions_checked = 0;
  std::vector<std::string> counterexamples;

  bool pass() const { return counterexamples.empty(); }
};

// No P position (per the closed form) has a P successor.
PropertyReport check_p_closure_g1(const BoundFn& f, u64 max_x, u64 max_k,
                                  Execution exec = Execution::parallel);
PropertyReport check_p_closure_g2(u64 max_weight, Execution exec = Execution::parallel);

// Every N position gets a legal winning move onto a P position, every
// non-terminal P position gets the all-losing fallback and terminals get none.
PropertyReport check_strategy_g1(const BoundFn& f, u64 max_x, u64 max_k,
                                 Execution exec = Execution::parallel);
PropertyReport check_strategy_g2(u64 max_weight, Execution exec = Execution::parallel);

nlohmann::json to_json(const VerificationReport& report, bool with_timing = false);
nlohmann::json to_json(const PropertyReport& report);
std::string to_text(const VerificationReport& report, std::size_t max_listed = 10);
std::string to_text(const PropertyReport& report, std::size_t max_listed = 10);

}  // namespace dynnim
