#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dynnim/bound_fn.hpp"
#include "dynnim/game.hpp"

namespace dynnim {

enum class Opponent { random, engine };

// Random starts are drawn uniformly from the envelope and rejected until they
// have the class the engine needs: N when it moves first, P when second.
struct SelfPlayConfig {
  u64 trials = 100;
  Opponent opponent = Opponent::random;
  bool engine_first = true;
  u64 seed = 1;
  // Random-start envelope.
  u64 max_x = 200;
  u64 max_k = 40;
  u64 max_weight = 512;
};

struct Ply {
  std::string actor;  // "engine" or "opponent"
  std::string move;
  std::string position;  // after the move
};

struct Transcript {
  std::string start;
  std::vector<Ply> plies;
  std::string winner;
};

struct SelfPlayReport {
  std::string game;
  std::string params;
  u64 seed = 0;
  u64 trials = 0;
  u64 engine_wins = 0;
  u64 winning_starts = 0;  // trials whose start favours the engine
  std::vector<Transcript> losses;  // engine losses from winning starts

  bool pass() const { return losses.empty(); }
};

// Trial i starts from starts[i % starts.size()], or from a seeded random
// start when `starts` is empty. The opponent's random moves come from
// std::mt19937_64(seed), picking index rng() % legal_move_count.
SelfPlayReport selfplay_g1(const BoundFn& f, const SelfPlayConfig& config,
                           const std::vector<TurnPosition>& starts = {});
SelfPlayReport selfplay_g2(const SelfPlayConfig& config,
                           const std::vector<WeightedPosition>& starts = {});

nlohmann::json to_json(const SelfPlayReport& report);
std::string to_text(const SelfPlayReport& report);

}  // namespace dynnim
