#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "json.hpp"

#include "dynnim/bound_fn.hpp"
#include "dynnim/game.hpp"

namespace dynnim::service {

enum class GameKind { g1, g2 };
enum class Status { in_progress, human_won, engine_won };
enum class Actor { human, engine };

using Position = std::variant<TurnPosition, WeightedPosition>;
using Move = std::variant<MoveG1, MoveG2>;

struct HistoryEntry {
  Actor actor;
  Move move;
  Position position;  // after the move
};

struct Session {
  std::string id;
  GameKind game = GameKind::g2;
  std::optional<BoundFn> f;  // g1 only
  Position initial;
  Position position;
  std::vector<HistoryEntry> history;
  Status status = Status::in_progress;
  bool human_first = true;

  bool human_to_move() const { return (history.size() % 2 == 0) == human_first; }
  // FNV-1a over the rendered history; equal for equal move sequences.
  std::string history_hash() const;
};

// Failure surfaced to API clients as {code, message, constraint?}.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int http_status, std::string code, std::string message,
               std::optional<std::string> constraint = std::nullopt)
      : std::runtime_error(message),
        http_status_(http_status),
        code_(std::move(code)),
        constraint_(std::move(constraint)) {}

  int http_status() const { return http_status_; }
  const std::string& code() const { return code_; }
  const std::optional<std::string>& constraint() const { return constraint_; }

 private:
  int http_status_;
  std::string code_;
  std::optional<std::string> constraint_;
};

struct CreateRequest {
  GameKind game = GameKind::g2;
  std::optional<BoundFn> f;
  Position start;
  bool human_first = true;
};

struct ServiceConfig {
  std::chrono::seconds ttl{3600};
  u64 max_weight = 4096;   // session starts and grid queries, two-weight game
  u64 max_stones = 10'000;  // session starts, turn-indexed game
  std::function<std::chrono::steady_clock::time_point()> now = [] {
    return std::chrono::steady_clock::now();
  };
};

// In-memory human-vs-engine sessions. Calls on one session are serialised by
// a per-session lock; sessions idle longer than the TTL are evicted.
class PlayService {
 public:
  explicit PlayService(ServiceConfig config = {}, std::uint64_t id_seed = std::random_device{}());

  Session create_session(const CreateRequest& request);
  Session get_session(const std::string& id);
  Session submit_move(const std::string& id, const Move& move);

  // Serialised grid payload for weights <= max_weight; cached per weight.
  std::shared_ptr<const std::string> grid(u64 max_weight);

  // Drops sessions idle for longer than the TTL; returns how many.
  std::size_t evict_expired();
  std::size_t session_count() const;

 private:
  struct Entry {
    std::mutex mu;
    Session session;
    std::chrono::steady_clock::time_point last_access;
  };

  std::shared_ptr<Entry> find(const std::string& id);
  std::string next_id();

  ServiceConfig config_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<Entry>> sessions_;
  std::mt19937_64 id_rng_;
  std::mutex grid_mu_;
  std::map<u64, std::shared_ptr<const std::string>> grid_cache_;
};

// JSON wire format shared by the HTTP layer and the tests.
nlohmann::json to_json(const Session& session);
nlohmann::json position_json(const Position& pos);
nlohmann::json move_json(const Move& move);
std::string to_string(GameKind game);
std::string to_string(Status status);

// Body of POST /api/v1/sessions: {game, f?, x, y? | u, k?, humanFirst}.
CreateRequest parse_create_request(const nlohmann::json& body);
// Body of POST /api/v1/sessions/{id}/moves: {take} | {takeHeavy, takeLight}.
Move parse_move(GameKind game, const nlohmann::json& body);

// Answers /api/v1/classify from query parameters (game, f, u, k, x, y).
nlohmann::json classify_query(const std::multimap<std::string, std::string>& params);

}  // namespace dynnim::service
