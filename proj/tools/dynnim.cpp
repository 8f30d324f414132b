// dynnim: classify, advise, tabulate, verify and self-play the two restricted
// Nim variants, or serve them over HTTP.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dynnim/closed_form.hpp"
#include "dynnim/http.hpp"
#include "dynnim/selfplay.hpp"
#include "dynnim/strategist.hpp"
#include "dynnim/tables.hpp"
#include "dynnim/verify.hpp"

namespace {

using namespace dynnim;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string game;    // resolved after parsing
  std::string f;
  std::string format;  // resolved after parsing
  std::optional<u64> x, y, u;
  u64 k = 1;
  std::string out;
  u64 seed = 1;
  // blocks / table
  u64 max_x = 200;
  u64 max_k = 40;
  std::optional<u64> to_k;
  u64 max_weight = 512;
  bool extended = false;
  bool serial = false;
  bool properties = false;
  bool timing = false;
  // selfplay
  std::vector<std::string> starts;
  u64 trials = 100;
  std::string opponent = "random";
  bool engine_second = false;
  // serve
  std::optional<int> port;
  std::string host = "0.0.0.0";
  long ttl = 3600;
};

BoundFn require_bound(const Options& o) {
  if (o.f.empty()) throw UsageError("--f <boundfn spec> is required for g1");
  return BoundFn::parse(o.f);
}

u64 stones(const Options& o) {
  if (o.u) return *o.u;
  if (o.x) return *o.x;
  throw UsageError("--u (or --x) is required for g1");
}

WeightedPosition weighted(const Options& o) {
  if (!o.x) throw UsageError("--x is required for g2");
  return {*o.x, o.y.value_or(0)};
}

// Writes to --out when given, stdout otherwise.
void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw UsageError("cannot write to '" + o.out + "'");
  file << text;
  if (!file) throw UsageError("write to '" + o.out + "' failed");
}

Format output_format(const Options& o) { return parse_format(o.format); }

int run_classify(const Options& o) {
  json out;
  std::ostringstream text;
  if (o.game == "g1") {
    const BoundFn f = require_bound(o);
    const TurnPosition pos{stones(o), o.k};
    const auto c = classify_g1(pos, f);
    out = {{"game", "g1"}, {"f", f.to_string()}, {"u", pos.stones}, {"k", pos.turn},
           {"verdict", to_string(c.verdict)}};
    text << to_string(pos) << ' ' << to_string(c.verdict);
    if (c.block) {
      const auto b = block_bounds_g1(f, pos.turn, *c.block);
      out["block"] = {{"n", b.index}, {"lo", b.lo}, {"hi", b.hi}};
      text << "  block n=" << b.index << " [" << b.lo << ',' << b.hi << ']';
    }
  } else {
    const WeightedPosition pos = weighted(o);
    const auto c = classify_g2(pos);
    out = {{"game", "g2"}, {"x", pos.heavy}, {"y", pos.light}, {"weight", total_weight(pos)},
           {"verdict", to_string(c.verdict)}};
    out["family"] = c.family ? json(to_string(*c.family)) : json(nullptr);
    text << to_string(pos) << ' ' << to_string(c.verdict);
    if (c.family) text << "  " << to_string(*c.family);
  }
  emit(o, output_format(o) == Format::json ? out.dump() + "\n" : text.str() + "\n");
  return kExitOk;
}

int run_advise(const Options& o) {
  json out;
  std::string text;
  if (o.game == "g1") {
    const BoundFn f = require_bound(o);
    const TurnPosition pos{stones(o), o.k};
    const AdviceG1 advice = advise_g1(pos, f);
    out = {{"game", "g1"}, {"position", {{"u", pos.stones}, {"k", pos.turn}}}};
    if (const auto* w = std::get_if<WinningG1>(&advice)) {
      out["advice"] = "winning";
      out["move"] = {{"take", w->move.take}};
      out["target"] = {{"u", w->target.stones}, {"k", w->target.turn}, {"block", w->target_block}};
      text = "winning: " + to_string(w->move) + " -> " + to_string(w->target) +
             " (block " + std::to_string(w->target_block) + ")";
    } else if (const auto* l = std::get_if<AllLosingG1>(&advice)) {
      out["advice"] = "all-losing";
      out["move"] = {{"take", l->move.take}};
      out["target"] = {{"u", l->target.stones}, {"k", l->target.turn}};
      text = "all moves lose; fallback " + to_string(l->move) + " -> " + to_string(l->target);
    } else {
      out["advice"] = "no-move";
      text = "no legal move";
    }
  } else {
    const WeightedPosition pos = weighted(o);
    const AdviceG2 advice = advise_g2(pos);
    out = {{"game", "g2"}, {"position", {{"x", pos.heavy}, {"y", pos.light}}}};
    if (const auto* w = std::get_if<WinningG2>(&advice)) {
      out["advice"] = "winning";
      out["move"] = {{"takeHeavy", w->move.take_heavy}, {"takeLight", w->move.take_light}};
      out["target"] = {{"x", w->target.heavy}, {"y", w->target.light},
                       {"family", to_string(w->target_family)}};
      text = "winning: " + to_string(w->move) + " -> " + to_string(w->target) + " " +
             to_string(w->target_family);
    } else if (const auto* l = std::get_if<AllLosingG2>(&advice)) {
      out["advice"] = "all-losing";
      out["move"] = {{"takeHeavy", l->move.take_heavy}, {"takeLight", l->move.take_light}};
      out["target"] = {{"x", l->target.heavy}, {"y", l->target.light}};
      text = "all moves lose; fallback " + to_string(l->move) + " -> " + to_string(l->target);
    } else {
      out["advice"] = "no-move";
      text = "no legal move";
    }
  }
  emit(o, output_format(o) == Format::json ? out.dump() + "\n" : text + "\n");
  return kExitOk;
}

int run_blocks(const Options& o) {
  std::ostringstream os;
  write_g1_blocks(os, require_bound(o), o.k, o.to_k.value_or(o.k), o.max_x, output_format(o));
  emit(o, os.str());
  return kExitOk;
}

int run_table(const Options& o) {
  std::ostringstream os;
  if (o.game == "g1") {
    write_g1_blocks(os, require_bound(o), o.k, o.to_k.value_or(o.k), o.max_x, output_format(o));
  } else {
    write_g2_table(os, o.max_weight, output_format(o));
  }
  emit(o, os.str());
  return kExitOk;
}

int run_verify(const Options& o) {
  const Execution exec = o.serial ? Execution::serial : Execution::parallel;
  const bool as_json = output_format(o) == Format::json;
  std::vector<VerificationReport> reports;
  std::vector<PropertyReport> properties;

  const bool do_g1 = o.game == "g1" || o.game == "both";
  const bool do_g2 = o.game == "g2" || o.game == "both";
  if (do_g1) {
    std::vector<BoundFn> bounds;
    if (o.f.empty()) {
      bounds = canonical_bounds();
    } else {
      bounds.push_back(BoundFn::parse(o.f));
    }
    for (const auto& f : bounds) {
      reports.push_back(verify_g1(f, o.max_x, o.max_k, exec));
      if (o.properties) {
        properties.push_back(check_p_closure_g1(f, o.max_x, o.max_k, exec));
        properties.push_back(check_strategy_g1(f, o.max_x, o.max_k, exec));
      }
    }
  }
  if (do_g2) {
    const u64 weight = o.extended ? 4096 : o.max_weight;
    reports.push_back(verify_g2(weight, exec));
    if (o.properties) {
      properties.push_back(check_p_closure_g2(weight, exec));
      properties.push_back(check_strategy_g2(weight, exec));
    }
  }

  bool pass = true;
  std::string text;
  json out = {{"reports", json::array()}, {"properties", json::array()}};
  for (const auto& r : reports) {
    pass = pass && r.pass();
    text += to_text(r);
    out["reports"].push_back(to_json(r, o.timing));
    if (o.timing) {
      std::cerr << r.game << ' ' << r.params << ": " << r.wall_seconds << " s\n";
    }
  }
  for (const auto& p : properties) {
    pass = pass && p.pass();
    text += to_text(p);
    out["properties"].push_back(to_json(p));
  }
  out["result"] = pass ? "PASS" : "FAIL";
  emit(o, as_json ? out.dump(2) + "\n" : text);
  return pass ? kExitOk : kExitMismatch;
}

std::pair<u64, u64> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--start expects a,b but got '" + text + "'");
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    const u64 first = std::stoull(a, &used_a);
    const u64 second = std::stoull(b, &used_b);
    if (used_a != a.size() || used_b != b.size() || a[0] == '-' || b[0] == '-') throw 0;
    return {first, second};
  } catch (...) {
    throw UsageError("--start expects two non-negative integers a,b but got '" + text + "'");
  }
}

int run_selfplay(const Options& o) {
  SelfPlayConfig config;
  config.trials = o.trials;
  config.seed = o.seed;
  config.engine_first = !o.engine_second;
  config.max_x = o.max_x;
  config.max_k = o.max_k;
  config.max_weight = o.max_weight;
  if (o.opponent == "random") {
    config.opponent = Opponent::random;
  } else if (o.opponent == "engine") {
    config.opponent = Opponent::engine;
  } else {
    throw UsageError("--opponent must be random or engine");
  }

  SelfPlayReport report;
  if (o.game == "g1") {
    std::vector<TurnPosition> starts;
    for (const auto& s : o.starts) {
      auto [u, k] = parse_pair(s);
      if (k == 0) throw UsageError("turn index must be at least 1");
      starts.push_back({u, k});
    }
    report = selfplay_g1(require_bound(o), config, starts);
  } else {
    std::vector<WeightedPosition> starts;
    for (const auto& s : o.starts) {
      auto [x, y] = parse_pair(s);
      starts.push_back({x, y});
    }
    report = selfplay_g2(config, starts);
  }
  emit(o, output_format(o) == Format::json ? to_json(report).dump(2) + "\n" : to_text(report));
  return report.pass() ? kExitOk : kExitMismatch;
}

int run_serve(const Options& o) {
  int port = 8080;
  if (const char* env = std::getenv("DYNNIM_PORT")) {
    try {
      port = std::stoi(env);
    } catch (...) {
      throw UsageError("DYNNIM_PORT must be a port number");
    }
  }
  if (o.port) port = *o.port;
  if (port <= 0 || port > 65535) throw UsageError("port out of range");

  service::ServiceConfig config;
  config.ttl = std::chrono::seconds(o.ttl);
  service::PlayService play(config);
  httplib::Server server;
  service::register_routes(server, play);
  std::cerr << "dynnim serving on " << o.host << ':' << port << '\n';
  if (!server.listen(o.host, port)) {
    std::cerr << "error: could not listen on " << o.host << ':' << port << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

void add_game(CLI::App* cmd, Options& o, bool allow_both = false) {
  auto* opt = cmd->add_option("--game", o.game, "Game: g1 (turn-indexed) or g2 (two-weight)");
  if (allow_both) {
    opt->check(CLI::IsMember({"g1", "g2", "both"}));
  } else {
    opt->check(CLI::IsMember({"g1", "g2"}));
  }
}

void add_position(CLI::App* cmd, Options& o) {
  cmd->add_option("--x", o.x, "Heavy stones (g2) or stone count (g1)");
  cmd->add_option("--y", o.y, "Light stones (g2)");
  cmd->add_option("--u", o.u, "Stone count (g1)");
  cmd->add_option("--k", o.k, "Turn index (g1)")->check(CLI::PositiveNumber);
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--f", o.f, "Bound function: const:<c> | affine:<a>,<b> | table:<v1>,...");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--out", o.out, "Write output to this path instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver, verifier and play engine for two restricted Nim variants"};
  app.require_subcommand(1);
  Options o;

  auto* classify = app.add_subcommand("classify", "P/N verdict from the closed form");
  add_game(classify, o);
  add_position(classify, o);
  add_common(classify, o);

  auto* advise = app.add_subcommand("advise", "Winning move (or fallback) from a position");
  add_game(advise, o);
  add_position(advise, o);
  add_common(advise, o);

  auto* blocks = app.add_subcommand("blocks", "P blocks of the turn-indexed game");
  add_common(blocks, o);
  blocks->add_option("--k", o.k, "First turn index")->check(CLI::PositiveNumber);
  blocks->add_option("--to-k", o.to_k, "Last turn index (default: --k)");
  blocks->add_option("--max-x", o.max_x, "Largest stone count");

  auto* table = app.add_subcommand("table", "Dump P/N tables as csv, json or a text grid");
  add_game(table, o);
  add_common(table, o);
  table->add_option("--max-weight", o.max_weight, "g2: largest total weight");
  table->add_option("--k", o.k, "g1: first turn index")->check(CLI::PositiveNumber);
  table->add_option("--to-k", o.to_k, "g1: last turn index (default: --k)");
  table->add_option("--max-x", o.max_x, "g1: largest stone count");

  auto* verify = app.add_subcommand("verify", "Closed form against the exhaustive oracle");
  add_game(verify, o, true);  // default: both games
  add_common(verify, o);
  verify->add_option("--max-weight", o.max_weight, "g2: largest total weight (default 512)");
  verify->add_flag("--extended", o.extended, "g2: sweep to weight 4096");
  verify->add_option("--max-x", o.max_x, "g1: largest stone count (default 200)");
  verify->add_option("--max-k", o.max_k, "g1: largest turn index (default 40)");
  verify->add_flag("--serial", o.serial, "Use the single-threaded reference kernels");
  verify->add_flag("--properties", o.properties, "Also check P-closure and strategy soundness");
  verify->add_flag("--timing", o.timing, "Report wall time (stderr, and in json output)");

  auto* selfplay = app.add_subcommand("selfplay", "Engine against a random or engine opponent");
  add_game(selfplay, o);
  add_common(selfplay, o);
  selfplay->add_option("--start", o.starts, "Start position a,b (repeatable); random if absent");
  selfplay->add_option("--trials", o.trials, "Number of games");
  selfplay->add_option("--opponent", o.opponent, "random or engine")
      ->check(CLI::IsMember({"random", "engine"}));
  selfplay->add_flag("--engine-second", o.engine_second, "Opponent moves first");
  selfplay->add_option("--seed", o.seed, "Seed for the opponent and random starts");
  selfplay->add_option("--max-weight", o.max_weight, "g2: random-start envelope");
  selfplay->add_option("--max-x", o.max_x, "g1: random-start stone envelope");
  selfplay->add_option("--max-k", o.max_k, "g1: random-start turn envelope");

  auto* serve = app.add_subcommand("serve", "Run the HTTP/JSON play service");
  serve->add_option("--port", o.port, "Port (default 8080, or $DYNNIM_PORT)");
  serve->add_option("--host", o.host, "Bind address");
  serve->add_option("--ttl", o.ttl, "Idle session lifetime in seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (o.format.empty()) o.format = *table ? "csv" : "text";
  if (o.game.empty()) o.game = *verify ? "both" : "g2";

  try {
    if (*classify) return run_classify(o);
    if (*advise) return run_advise(o);
    if (*blocks) return run_blocks(o);
    if (*table) return run_table(o);
    if (*verify) return run_verify(o);
    if (*selfplay) return run_selfplay(o);
    if (*serve) return run_serve(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    // Bad bound specs, out-of-range positions and oracle envelope breaches.
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
