#include <atomic>
#include <thread>

#include "doctest.h"

#include "dynnim/closed_form.hpp"
#include "dynnim/http.hpp"
#include "dynnim/service.hpp"
#include "dynnim/strategist.hpp"

using namespace dynnim;
using namespace dynnim::service;
using nlohmann::json;

namespace {

CreateRequest g2_request(u64 x, u64 y, bool human_first) {
  return parse_create_request({{"game", "g2"}, {"x", x}, {"y", y}, {"humanFirst", human_first}});
}

int error_status(const std::function<void()>& call, std::optional<std::string>* constraint = nullptr) {
  try {
    call();
  } catch (const ServiceError& e) {
    if (constraint) *constraint = e.constraint();
    return e.http_status();
  }
  return 0;
}

}  // namespace

TEST_CASE("creating sessions") {
  PlayService service({}, 7);

  const auto human = service.create_session(g2_request(8, 0, true));
  CHECK(human.history.empty());
  CHECK(std::get<WeightedPosition>(human.position) == WeightedPosition{8, 0});
  CHECK(to_json(human)["verdict"] == "N");
  CHECK(to_json(human)["toMove"] == "human");

  const auto engine = service.create_session(g2_request(8, 0, false));
  REQUIRE(engine.history.size() == 1);
  CHECK(std::get<MoveG2>(engine.history[0].move) == MoveG2{1, 0});
  CHECK(std::get<WeightedPosition>(engine.position) == WeightedPosition{7, 0});

  const auto g1 = service.create_session(parse_create_request(
      {{"game", "g1"}, {"f", "const:2"}, {"u", 6}, {"k", 1}, {"humanFirst", false}}));
  CHECK(std::get<TurnPosition>(g1.position) == TurnPosition{5, 2});
  const json body = to_json(g1);
  CHECK(body["f"] == "const:2");
  CHECK(body["bounds"] == json::array({2, 2, 2}));

  const auto stuck = service.create_session(g2_request(0, 1, true));
  CHECK(stuck.status == Status::engine_won);
  CHECK(to_json(stuck)["status"] == "engine-won");
  CHECK(service.session_count() == 4);
  CHECK(service.get_session(g1.id).id == g1.id);
}

TEST_CASE("request validation") {
  PlayService service;
  CHECK(error_status([&] { parse_create_request(json::array()); }) == 400);
  CHECK(error_status([&] { parse_create_request({{"game", "g3"}, {"x", 1}}); }) == 400);
  CHECK(error_status([&] { parse_create_request({{"game", "g1"}, {"u", 4}}); }) == 400);
  CHECK(error_status([&] { parse_create_request({{"x", -1}}); }) == 400);
  CHECK(error_status([&] { parse_create_request({{"x", 1}, {"humanFirst", "yes"}}); }) == 400);
  CHECK(error_status([&] { service.create_session(g2_request(2049, 0, true)); }) == 400);
  CHECK(error_status([&] { parse_move(GameKind::g2, {{"takeHeavy", 1}}); }) == 400);
}

TEST_CASE("moves, errors and game end") {
  PlayService service({}, 11);
  const auto s = service.create_session(g2_request(2, 2, true));

  std::optional<std::string> constraint;
  CHECK(error_status([&] { service.submit_move(s.id, MoveG2{2, 0}); }, &constraint) == 422);
  REQUIRE(constraint);
  CHECK(*constraint == "2t+u = 4 > floor(w/2) = 3");
  CHECK(error_status([&] { service.submit_move(s.id, MoveG2{0, 0}); }) == 422);
  CHECK(error_status([&] { service.submit_move("ffff", MoveG2{0, 1}); }) == 404);
  CHECK(error_status([&] { service.get_session("ffff"); }) == 404);
  CHECK(error_status([&] { service.submit_move(s.id, MoveG1{1}); }) == 400);

  // Onto (2,1), a P position: the engine falls back and the human can win out.
  auto state = service.submit_move(s.id, MoveG2{0, 1});
  CHECK(state.history.size() == 2);
  while (state.status == Status::in_progress) {
    const auto advice = engine_move(advise_g2(std::get<WeightedPosition>(state.position)));
    REQUIRE(advice);
    state = service.submit_move(s.id, *advice);
  }
  CHECK(state.status == Status::human_won);
  CHECK(error_status([&] { service.submit_move(s.id, MoveG2{0, 1}); }) == 409);
}

TEST_CASE("the engine wins from an N start it moves first on") {
  PlayService service({}, 3);
  auto state = service.create_session(g2_request(40, 17, false));
  REQUIRE(classify_g2({40, 17}).verdict == Verdict::N);
  while (state.status == Status::in_progress) {
    const auto pos = std::get<WeightedPosition>(state.position);
    CHECK(classify_g2(pos).verdict == Verdict::P);
    state = service.submit_move(state.id, moves_g2(pos).back().move);
  }
  CHECK(state.status == Status::engine_won);

  auto g1 = service.create_session(parse_create_request(
      {{"game", "g1"}, {"f", "affine:1,0"}, {"u", 4}, {"k", 1}, {"humanFirst", false}}));
  while (g1.status == Status::in_progress) g1 = service.submit_move(g1.id, MoveG1{1});
  CHECK(g1.status == Status::engine_won);
}

TEST_CASE("a finished game rejects further moves") {
  PlayService service;
  const auto s = service.create_session(g2_request(0, 2, true));
  const auto done = service.submit_move(s.id, MoveG2{0, 1});
  CHECK(done.status == Status::human_won);
  CHECK(to_json(done)["toMove"].is_null());
  CHECK(error_status([&] { service.submit_move(s.id, MoveG2{0, 1}); }) == 409);
}

TEST_CASE("grid payloads") {
  PlayService service;
  auto p_entries = [&](u64 w) {
    std::size_t n = 0;
    for (const auto& cell : json::parse(*service.grid(w))) n += cell["verdict"] == "P";
    return n;
  };
  CHECK(p_entries(3) == 4);
  CHECK(p_entries(15) == 16);
  CHECK(json::parse(*service.grid(15)).size() == 72);
  CHECK(json::parse(*service.grid(0)).size() == 1);
  CHECK(service.grid(15) == service.grid(15));
  CHECK(error_status([&] { service.grid(5000); }) == 400);
}

TEST_CASE("idle sessions expire") {
  auto now = std::chrono::steady_clock::time_point{};
  ServiceConfig config;
  config.ttl = std::chrono::seconds(60);
  config.now = [&now] { return now; };
  PlayService service(config, 5);

  const auto a = service.create_session(g2_request(8, 0, true));
  now += std::chrono::seconds(30);
  const auto b = service.create_session(g2_request(9, 0, true));
  now += std::chrono::seconds(40);
  CHECK(service.evict_expired() == 1);
  CHECK(error_status([&] { service.get_session(a.id); }) == 404);
  CHECK(service.get_session(b.id).id == b.id);
  now += std::chrono::seconds(61);
  CHECK(service.evict_expired() == 1);
  CHECK(service.session_count() == 0);
}

TEST_CASE("history hash depends only on the moves") {
  PlayService one({}, 1);
  PlayService two({}, 2);
  auto a = one.create_session(g2_request(8, 0, true));
  auto b = two.create_session(g2_request(8, 0, true));
  CHECK(a.id != b.id);
  CHECK(a.history_hash() == b.history_hash());
  a = one.submit_move(a.id, MoveG2{1, 0});
  CHECK(a.history_hash() != b.history_hash());
  b = two.submit_move(b.id, MoveG2{1, 0});
  CHECK(a.history_hash() == b.history_hash());
  CHECK(to_json(a)["historyHash"] == a.history_hash());
}

TEST_CASE("concurrent submissions on one session are serialised") {
  PlayService service({}, 9);
  const auto s = service.create_session(g2_request(300, 100, true));
  std::atomic<int> accepted{0};
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&] {
      for (int j = 0; j < 20; ++j) {
        try {
          service.submit_move(s.id, MoveG2{0, 1});
          ++accepted;
        } catch (const ServiceError&) {
        }
      }
    });
  }
  for (auto& t : threads) t.join();

  const auto final_state = service.get_session(s.id);
  CHECK(final_state.history.size() == 2 * static_cast<std::size_t>(accepted.load()));
  // Replaying the recorded moves reproduces every recorded position.
  WeightedPosition pos = std::get<WeightedPosition>(final_state.initial);
  for (std::size_t i = 0; i < final_state.history.size(); ++i) {
    const auto& entry = final_state.history[i];
    CHECK((entry.actor == Actor::human) == (i % 2 == 0));
    const auto move = std::get<MoveG2>(entry.move);
    CHECK_FALSE(violated_constraint(pos, move));
    pos = apply(pos, move);
    CHECK(std::get<WeightedPosition>(entry.position) == pos);
    if (entry.actor == Actor::engine) CHECK(classify_g2(pos).verdict == Verdict::P);
  }
}

TEST_CASE("classify query") {
  const auto g2 = classify_query({{"x", "8"}, {"y", "0"}});
  CHECK(g2["verdict"] == "N");
  CHECK(g2["advice"] == json{{"takeHeavy", 1}, {"takeLight", 0}});
  CHECK(classify_query({{"x", "3"}, {"y", "9"}})["family"] == "P3(n=3,i=2)");
  const auto g1 = classify_query({{"game", "g1"}, {"f", "const:3"}, {"u", "8"}, {"k", "2"}});
  CHECK(g1["verdict"] == "P");
  CHECK(g1["block"] == 2);
  CHECK(error_status([&] { classify_query({{"y", "1"}}); }) == 400);
  CHECK(error_status([&] { classify_query({{"game", "g1"}, {"f", "const:0"}, {"u", "1"}}); }) == 400);
}

TEST_CASE("http round trip") {
  PlayService service({}, 21);
  httplib::Server server;
  register_routes(server, service);
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread runner([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto created = client.Post("/api/v1/sessions", R"({"game":"g2","x":8,"y":0,"humanFirst":false})",
                             "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  CHECK(created->get_header_value("Access-Control-Allow-Origin") == "*");
  const auto session = json::parse(created->body);
  CHECK(session["position"] == json{{"x", 7}, {"y", 0}});
  const std::string id = session["id"];

  auto fetched = client.Get("/api/v1/sessions/" + id);
  REQUIRE(fetched);
  CHECK(fetched->status == 200);
  CHECK(json::parse(fetched->body)["historyHash"] == session["historyHash"]);

  auto illegal = client.Post("/api/v1/sessions/" + id + "/moves",
                             R"({"takeHeavy":4,"takeLight":0})", "application/json");
  REQUIRE(illegal);
  CHECK(illegal->status == 422);
  const auto err = json::parse(illegal->body);
  CHECK(err["code"] == "illegal_move");
  CHECK(err["constraint"] == "2t+u = 8 > floor(w/2) = 7");

  auto moved = client.Post("/api/v1/sessions/" + id + "/moves", R"({"takeHeavy":1,"takeLight":0})",
                           "application/json");
  REQUIRE(moved);
  CHECK(moved->status == 200);
  CHECK(json::parse(moved->body)["history"].size() == 3);

  auto missing = client.Get("/api/v1/sessions/abc123");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  auto bad_json = client.Post("/api/v1/sessions", "{", "application/json");
  REQUIRE(bad_json);
  CHECK(bad_json->status == 400);

  auto grid = client.Get("/api/v1/grid?maxWeight=15");
  REQUIRE(grid);
  CHECK(grid->status == 200);
  CHECK(json::parse(grid->body).size() == 72);
  auto too_big = client.Get("/api/v1/grid?maxWeight=5000");
  REQUIRE(too_big);
  CHECK(too_big->status == 400);

  auto classified = client.Get("/api/v1/classify?x=7&y=0");
  REQUIRE(classified);
  CHECK(json::parse(classified->body)["verdict"] == "P");

  server.stop();
  runner.join();
}
