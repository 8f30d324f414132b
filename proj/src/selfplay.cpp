#include "dynnim/selfplay.hpp"

#include <random>
#include <sstream>

#include "dynnim/closed_form.hpp"
#include "dynnim/strategist.hpp"

namespace dynnim {
namespace {

std::string opponent_name(Opponent o) { return o == Opponent::random ? "random" : "engine"; }

std::string describe(const SelfPlayConfig& c) {
  return std::string(c.engine_first ? "engine-first" : "engine-second") +
         " vs " + opponent_name(c.opponent) + " trials=" + std::to_string(c.trials);
}

// Plays one game. `Rules` supplies the game-specific pieces.
template <typename Rules>
Transcript play(const Rules& rules, typename Rules::Position start, const SelfPlayConfig& config,
                std::mt19937_64& rng, bool& engine_won) {
  Transcript transcript;
  transcript.start = to_string(start);
  auto pos = start;
  bool engine_to_move = config.engine_first;
  while (rules.has_moves(pos)) {
    typename Rules::Move move;
    if (engine_to_move || config.opponent == Opponent::engine) {
      move = *engine_move(rules.advise(pos));
    } else {
      move = rules.random_move(pos, rng);
    }
    pos = apply(pos, move);
    transcript.plies.push_back(
        {engine_to_move ? "engine" : "opponent", to_string(move), to_string(pos)});
    engine_to_move = !engine_to_move;
  }
  // The player to move is stuck and loses.
  engine_won = !engine_to_move;
  transcript.winner = engine_won ? "engine" : "opponent";
  return transcript;
}

struct RulesG1 {
  using Position = TurnPosition;
  using Move = MoveG1;
  const BoundFn& f;

  bool has_moves(const Position& p) const { return dynnim::has_moves(p); }
  AdviceG1 advise(const Position& p) const { return advise_g1(p, f); }
  Move random_move(const Position& p, std::mt19937_64& rng) const {
    return {1 + rng() % max_take(p, f)};
  }
  bool engine_favoured(const Position& p, bool engine_first) const {
    return (classify_g1(p, f).verdict == Verdict::N) == engine_first;
  }
  Position random_start(const SelfPlayConfig& c, std::mt19937_64& rng) const {
    while (true) {
      const Position p{rng() % (c.max_x + 1), 1 + rng() % c.max_k};
      if (engine_favoured(p, c.engine_first)) return p;
    }
  }
};

struct RulesG2 {
  using Position = WeightedPosition;
  using Move = MoveG2;

  bool has_moves(const Position& p) const { return dynnim::has_moves(p); }
  AdviceG2 advise(const Position& p) const { return advise_g2(p); }
  Move random_move(const Position& p, std::mt19937_64& rng) const {
    const auto moves = moves_g2(p);
    return moves[rng() % moves.size()].move;
  }
  bool engine_favoured(const Position& p, bool engine_first) const {
    return (classify_g2(p).verdict == Verdict::N) == engine_first;
  }
  Position random_start(const SelfPlayConfig& c, std::mt19937_64& rng) const {
    while (true) {
      const u64 x = rng() % (c.max_weight / 2 + 1);
      const Position p{x, rng() % (c.max_weight - 2 * x + 1)};
      if (engine_favoured(p, c.engine_first)) return p;
    }
  }
};

template <typename Rules>
SelfPlayReport run(const Rules& rules, const SelfPlayConfig& config,
                   const std::vector<typename Rules::Position>& starts, SelfPlayReport report) {
  std::mt19937_64 rng(config.seed);
  report.seed = config.seed;
  report.trials = config.trials;
  for (u64 i = 0; i < config.trials; ++i) {
    const auto start =
        starts.empty() ? rules.random_start(config, rng) : starts[i % starts.size()];
    const bool favoured = rules.engine_favoured(start, config.engine_first);
    bool engine_won = false;
    Transcript t = play(rules, start, config, rng, engine_won);
    if (favoured) ++report.winning_starts;
    if (engine_won) {
      ++report.engine_wins;
    } else if (favoured) {
      report.losses.push_back(std::move(t));
    }
  }
  return report;
}

}  // namespace

SelfPlayReport selfplay_g1(const BoundFn& f, const SelfPlayConfig& config,
                           const std::vector<TurnPosition>& starts) {
  SelfPlayReport report;
  report.game = "g1";
  report.params = "f=" + f.to_string() + " " + describe(config);
  return run(RulesG1{f}, config, starts, std::move(report));
}

SelfPlayReport selfplay_g2(const SelfPlayConfig& config,
                           const std::vector<WeightedPosition>& starts) {
  SelfPlayReport report;
  report.game = "g2";
  report.params = describe(config);
  return run(RulesG2{}, config, starts, std::move(report));
}

nlohmann::json to_json(const SelfPlayReport& report) {
  nlohmann::json losses = nlohmann::json::array();
  for (const auto& t : report.losses) {
    nlohmann::json plies = nlohmann::json::array();
    for (const auto& p : t.plies) {
      plies.push_back({{"actor", p.actor}, {"move", p.move}, {"position", p.position}});
    }
    losses.push_back({{"start", t.start}, {"plies", std::move(plies)}, {"winner", t.winner}});
  }
  return {{"game", report.game},
          {"params", report.params},
          {"seed", report.seed},
          {"trials", report.trials},
          {"engineWins", report.engine_wins},
          {"winningStarts", report.winning_starts},
          {"losses", std::move(losses)},
          {"result", report.pass() ? "PASS" : "FAIL"}};
}

std::string to_text(const SelfPlayReport& report) {
  std::ostringstream os;
  os << (report.pass() ? "PASS" : "FAIL") << "  " << report.game << "  " << report.params
     << "  seed=" << report.seed << "  engine_wins=" << report.engine_wins << '/'
     << report.trials << "  winning_starts=" << report.winning_starts << '\n';
  for (const auto& t : report.losses) {
    os << "  loss from " << t.start << ':';
    for (const auto& p : t.plies) os << ' ' << p.actor << '[' << p.move << "]->" << p.position;
    os << '\n';
  }
  return os.str();
}

}  // namespace dynnim
