#include "dynnim/http.hpp"

#include <charconv>

namespace dynnim::service {
namespace {

using json = nlohmann::json;

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const ServiceError& e) {
  json body = {{"code", e.code()}, {"message", e.what()}};
  if (e.constraint()) body["constraint"] = *e.constraint();
  send_json(res, e.http_status(), body);
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw ServiceError(400, "bad_request", std::string("malformed JSON: ") + e.what());
  }
}

// Runs the handler and maps failures onto the error envelope.
template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const ServiceError& e) {
      send_error(res, e);
    } catch (const std::exception& e) {
      send_error(res, ServiceError(500, "internal", e.what()));
    }
  };
}

}  // namespace

void register_routes(httplib::Server& server, PlayService& service) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server.Options(R"(/api/v1/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });

  server.Post("/api/v1/sessions", guarded([&service](const auto& req, auto& res) {
                send_json(res, 201, to_json(service.create_session(
                                        parse_create_request(parse_body(req)))));
              }));

  server.Get(R"(/api/v1/sessions/([0-9a-f]+))", guarded([&service](const auto& req, auto& res) {
               send_json(res, 200, to_json(service.get_session(req.matches[1])));
             }));

  server.Post(R"(/api/v1/sessions/([0-9a-f]+)/moves)",
              guarded([&service](const auto& req, auto& res) {
                const std::string id = req.matches[1];
                const GameKind game = service.get_session(id).game;
                send_json(res, 200,
                          to_json(service.submit_move(id, parse_move(game, parse_body(req)))));
              }));

  server.Get("/api/v1/grid", guarded([&service](const auto& req, auto& res) {
               if (!req.has_param("maxWeight")) {
                 throw ServiceError(400, "bad_request", "missing query parameter 'maxWeight'");
               }
               const std::string text = req.get_param_value("maxWeight");
               u64 max_weight = 0;
               auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), max_weight);
               if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
                 throw ServiceError(400, "bad_request", "maxWeight must be a non-negative integer");
               }
               const auto payload = service.grid(max_weight);
               res.set_header("Cache-Control", "public, max-age=86400");
               res.set_content(*payload, "application/json");
             }));

  server.Get("/api/v1/classify", guarded([](const auto& req, auto& res) {
               send_json(res, 200, classify_query(req.params));
             }));
}

}  // namespace dynnim::service
