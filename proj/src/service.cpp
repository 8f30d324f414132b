#include "dynnim/service.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>

#include "dynnim/closed_form.hpp"
#include "dynnim/strategist.hpp"
#include "dynnim/tables.hpp"

namespace dynnim::service {
namespace {

using json = nlohmann::json;

ServiceError bad_request(const std::string& message) {
  return ServiceError(400, "bad_request", message);
}

u64 read_count(const json& body, const char* key) {
  const auto it = body.find(key);
  if (it == body.end()) throw bad_request(std::string("missing field '") + key + "'");
  if (!it->is_number_integer() || (!it->is_number_unsigned() && it->get<std::int64_t>() < 0)) {
    throw bad_request(std::string("field '") + key + "' must be a non-negative integer");
  }
  return it->get<u64>();
}

u64 parse_count(const std::string& text, const char* key) {
  u64 value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw bad_request(std::string("query parameter '") + key + "' must be a non-negative integer");
  }
  return value;
}

GameKind parse_game(const std::string& name) {
  if (name == "g1") return GameKind::g1;
  if (name == "g2") return GameKind::g2;
  throw bad_request("game must be 'g1' or 'g2'");
}

BoundFn parse_bound(const std::string& spec) {
  try {
    return BoundFn::parse(spec);
  } catch (const std::exception& e) {
    throw bad_request(e.what());
  }
}

bool has_moves_at(const Position& pos) {
  return std::visit([](const auto& p) { return has_moves(p); }, pos);
}

void update_status(Session& s) {
  if (s.status != Status::in_progress || has_moves_at(s.position)) return;
  // The player to move is stuck and loses.
  s.status = s.human_to_move() ? Status::engine_won : Status::human_won;
}

void engine_reply(Session& s) {
  update_status(s);
  if (s.status != Status::in_progress || s.human_to_move()) return;
  Move move;
  if (s.game == GameKind::g1) {
    move = *engine_move(advise_g1(std::get<TurnPosition>(s.position), *s.f));
    s.position = apply(std::get<TurnPosition>(s.position), std::get<MoveG1>(move));
  } else {
    move = *engine_move(advise_g2(std::get<WeightedPosition>(s.position)));
    s.position = apply(std::get<WeightedPosition>(s.position), std::get<MoveG2>(move));
  }
  s.history.push_back({Actor::engine, move, s.position});
  update_status(s);
}

std::string render(const Position& pos) {
  return std::visit([](const auto& p) { return to_string(p); }, pos);
}

std::string render(const Move& move) {
  return std::visit([](const auto& m) { return to_string(m); }, move);
}

}  // namespace

std::string to_string(GameKind game) { return game == GameKind::g1 ? "g1" : "g2"; }

std::string to_string(Status status) {
  switch (status) {
    case Status::in_progress:
      return "in-progress";
    case Status::human_won:
      return "human-won";
    case Status::engine_won:
      return "engine-won";
  }
  return "?";
}

std::string Session::history_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const std::string& text) {
    for (unsigned char c : text) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  mix(to_string(game) + (f ? f->to_string() : "") + render(initial) + (human_first ? "H" : "E"));
  for (const auto& e : history) {
    mix(std::string(e.actor == Actor::human ? "human" : "engine") + render(e.move) +
        render(e.position) + ";");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

json position_json(const Position& pos) {
  if (const auto* p = std::get_if<TurnPosition>(&pos)) return {{"u", p->stones}, {"k", p->turn}};
  const auto& q = std::get<WeightedPosition>(pos);
  return {{"x", q.heavy}, {"y", q.light}};
}

json move_json(const Move& move) {
  if (const auto* m = std::get_if<MoveG1>(&move)) return {{"take", m->take}};
  const auto& m = std::get<MoveG2>(move);
  return {{"takeHeavy", m.take_heavy}, {"takeLight", m.take_light}};
}

json to_json(const Session& s) {
  json history = json::array();
  for (const auto& e : s.history) {
    history.push_back({{"actor", e.actor == Actor::human ? "human" : "engine"},
                       {"move", move_json(e.move)},
                       {"position", position_json(e.position)}});
  }
  const Verdict verdict =
      s.game == GameKind::g1
          ? classify_g1(std::get<TurnPosition>(s.position), *s.f).verdict
          : classify_g2(std::get<WeightedPosition>(s.position)).verdict;
  json out = {{"id", s.id},
              {"game", to_string(s.game)},
              {"initial", position_json(s.initial)},
              {"position", position_json(s.position)},
              {"verdict", to_string(verdict)},
              {"humanFirst", s.human_first},
              {"status", to_string(s.status)},
              {"toMove", s.status == Status::in_progress
                             ? json(s.human_to_move() ? "human" : "engine")
                             : json(nullptr)},
              {"history", std::move(history)},
              {"historyHash", s.history_hash()}};
  if (s.f) {
    out["f"] = s.f->to_string();
    const auto& pos = std::get<TurnPosition>(s.position);
    out["bounds"] = {(*s.f)(pos.turn), (*s.f)(pos.turn + 1), (*s.f)(pos.turn + 2)};
  }
  return out;
}

CreateRequest parse_create_request(const json& body) {
  if (!body.is_object()) throw bad_request("body must be a JSON object");
  CreateRequest req;
  req.game = parse_game(body.value("game", std::string("g2")));
  if (auto it = body.find("humanFirst"); it != body.end()) {
    if (!it->is_boolean()) throw bad_request("field 'humanFirst' must be a boolean");
    req.human_first = it->get<bool>();
  }
  if (req.game == GameKind::g1) {
    const auto f = body.find("f");
    if (f == body.end() || !f->is_string()) throw bad_request("g1 sessions need a string field 'f'");
    req.f = parse_bound(f->get<std::string>());
    const u64 stones = body.contains("u") ? read_count(body, "u") : read_count(body, "x");
    const u64 turn = body.contains("k") ? read_count(body, "k") : 1;
    if (turn == 0) throw bad_request("field 'k' must be at least 1");
    req.start = TurnPosition{stones, turn};
  } else {
    const u64 y = body.contains("y") ? read_count(body, "y") : 0;
    req.start = WeightedPosition{read_count(body, "x"), y};
  }
  return req;
}

Move parse_move(GameKind game, const json& body) {
  if (!body.is_object()) throw bad_request("body must be a JSON object");
  if (game == GameKind::g1) return MoveG1{read_count(body, "take")};
  return MoveG2{read_count(body, "takeHeavy"), read_count(body, "takeLight")};
}

json classify_query(const std::multimap<std::string, std::string>& params) {
  auto get = [&](const char* key) -> std::optional<std::string> {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
  };
  auto need = [&](const char* key) {
    auto v = get(key);
    if (!v) throw bad_request(std::string("missing query parameter '") + key + "'");
    return parse_count(*v, key);
  };
  const GameKind game = parse_game(get("game").value_or("g2"));
  try {
    if (game == GameKind::g1) {
      auto spec = get("f");
      if (!spec) throw bad_request("missing query parameter 'f'");
      const BoundFn f = parse_bound(*spec);
      const TurnPosition pos{get("u") ? need("u") : need("x"), get("k") ? need("k") : 1};
      if (pos.turn == 0) throw bad_request("query parameter 'k' must be at least 1");
      const auto c = classify_g1(pos, f);
      json out = {{"game", "g1"},
                  {"f", f.to_string()},
                  {"position", position_json(pos)},
                  {"verdict", to_string(c.verdict)}};
      if (c.block) out["block"] = *c.block;
      if (const auto move = engine_move(advise_g1(pos, f))) out["advice"] = move_json(*move);
      return out;
    }
    const WeightedPosition pos{need("x"), get("y") ? need("y") : 0};
    const auto c = classify_g2(pos);
    json out = {{"game", "g2"}, {"position", position_json(pos)}, {"verdict", to_string(c.verdict)}};
    out["family"] = c.family ? json(to_string(*c.family)) : json(nullptr);
    if (const auto move = engine_move(advise_g2(pos))) out["advice"] = move_json(*move);
    return out;
  } catch (const RangeError& e) {
    throw ServiceError(400, "out_of_range", e.what());
  }
}

// ---------------------------------------------------------------------------

PlayService::PlayService(ServiceConfig config, std::uint64_t id_seed)
    : config_(std::move(config)), id_rng_(id_seed) {}

std::string PlayService::next_id() {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, static_cast<std::uint64_t>(id_rng_()));
  return buf;
}

Session PlayService::create_session(const CreateRequest& req) {
  Session s;
  s.game = req.game;
  s.human_first = req.human_first;
  if (req.game == GameKind::g1) {
    const auto* pos = std::get_if<TurnPosition>(&req.start);
    if (!pos || !req.f) throw bad_request("g1 sessions need a bound function and (u, k)");
    if (pos->turn == 0) throw bad_request("turn index must be at least 1");
    if (pos->stones > config_.max_stones) {
      throw ServiceError(400, "out_of_range",
                         "stones exceed the limit of " + std::to_string(config_.max_stones));
    }
    s.f = req.f;
  } else {
    const auto* pos = std::get_if<WeightedPosition>(&req.start);
    if (!pos) throw bad_request("g2 sessions need (x, y)");
    if (pos->heavy > config_.max_weight || pos->light > config_.max_weight ||
        2 * pos->heavy + pos->light > config_.max_weight) {
      throw ServiceError(400, "out_of_range",
                         "total weight exceeds the limit of " + std::to_string(config_.max_weight));
    }
  }
  s.initial = req.start;
  s.position = req.start;
  engine_reply(s);

  evict_expired();
  auto entry = std::make_shared<Entry>();
  std::lock_guard lock(mu_);
  do {
    s.id = next_id();
  } while (sessions_.count(s.id));
  entry->session = std::move(s);
  entry->last_access = config_.now();
  sessions_.emplace(entry->session.id, entry);
  return entry->session;
}

std::shared_ptr<PlayService::Entry> PlayService::find(const std::string& id) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "not_found", "no session with id '" + id + "'");
  return it->second;
}

Session PlayService::get_session(const std::string& id) {
  auto entry = find(id);
  std::lock_guard lock(entry->mu);
  entry->last_access = config_.now();
  return entry->session;
}

Session PlayService::submit_move(const std::string& id, const Move& move) {
  auto entry = find(id);
  std::lock_guard lock(entry->mu);
  entry->last_access = config_.now();
  Session& s = entry->session;

  if (s.status != Status::in_progress) {
    throw ServiceError(409, "game_over", "the game has ended: " + to_string(s.status));
  }
  if (!s.human_to_move()) throw ServiceError(409, "not_your_turn", "the engine is to move");

  std::optional<std::string> violation;
  if (s.game == GameKind::g1) {
    const auto* m = std::get_if<MoveG1>(&move);
    if (!m) throw bad_request("g1 moves are {take}");
    const auto& pos = std::get<TurnPosition>(s.position);
    violation = violated_constraint(pos, *s.f, *m);
    if (!violation) s.position = apply(pos, *m);
  } else {
    const auto* m = std::get_if<MoveG2>(&move);
    if (!m) throw bad_request("g2 moves are {takeHeavy, takeLight}");
    const auto& pos = std::get<WeightedPosition>(s.position);
    violation = violated_constraint(pos, *m);
    if (!violation) s.position = apply(pos, *m);
  }
  if (violation) {
    throw ServiceError(422, "illegal_move", "illegal move " + render(move) + ": " + *violation,
                       violation);
  }
  s.history.push_back({Actor::human, move, s.position});
  engine_reply(s);
  return s;
}

std::shared_ptr<const std::string> PlayService::grid(u64 max_weight) {
  if (max_weight > config_.max_weight) {
    throw ServiceError(400, "range_exceeded",
                       "maxWeight exceeds the limit of " + std::to_string(config_.max_weight));
  }
  std::lock_guard lock(grid_mu_);
  auto& slot = grid_cache_[max_weight];
  if (!slot) slot = std::make_shared<const std::string>(g2_table_json(max_weight).dump());
  return slot;
}

std::size_t PlayService::evict_expired() {
  const auto now = config_.now();
  std::lock_guard lock(mu_);
  std::size_t dropped = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    std::unique_lock entry_lock(it->second->mu, std::try_to_lock);
    // A session in use right now is not idle.
    if (entry_lock.owns_lock() && now - it->second->last_access > config_.ttl) {
      entry_lock.unlock();
      it = sessions_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

std::size_t PlayService::session_count() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

}  // namespace dynnim::service
