#include "nimfrac/api_server.hpp"

#include <charconv>
#include <new>
#include <stdexcept>

#include <httplib.h>
#include <json.hpp>

#include "nimfrac/game.hpp"
#include "nimfrac/geometry.hpp"
#include "nimfrac/nim.hpp"

namespace nimfrac {

namespace {

using json = nlohmann::json;

constexpr const char* kJson = "application/json";

json to_json(const Position& p) {
  json out = json::array();
  for (Coord c : p.coords()) out.push_back(c);
  return out;
}

json to_json(const Move& m) {
  return {{"pile_index", m.pile_index}, {"new_size", m.new_size}};
}

json session_view(const GameSession& s) {
  json history = json::array();
  for (const auto& entry : s.history) {
    history.push_back({{"mover", to_string(entry.mover)},
                       {"move", to_json(entry.move)},
                       {"position", to_json(entry.result)}});
  }
  return {{"id", s.id},
          {"position", to_json(s.position)},
          {"to_move", to_string(s.to_move)},
          {"status", to_string(s.status)},
          {"classification", to_string(classify(s.position))},
          {"history", std::move(history)}};
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, ErrorCode code,
                const std::string& message, json extra = json::object()) {
  json body = {{"code", to_string(code)},
               {"message", message},
               {"http_status", http_status(code)}};
  body.update(extra);
  send_json(res, http_status(code), body);
}

json parse_body(const httplib::Request& req) {
  try {
    json body = json::parse(req.body);
    if (!body.is_object()) {
      throw Error(ErrorCode::bad_request, "request body must be a JSON object");
    }
    return body;
  } catch (const json::parse_error&) {
    throw Error(ErrorCode::bad_request, "request body is not valid JSON");
  }
}

Coord require_unsigned(const json& body, const char* field) {
  if (!body.contains(field)) {
    throw Error(ErrorCode::bad_request, std::string("missing field '") + field + "'");
  }
  const json& v = body.at(field);
  if (!v.is_number_unsigned()) {
    throw Error(ErrorCode::bad_request,
                std::string("field '") + field +
                    "' must be a nonnegative 64-bit integer");
  }
  return v.get<Coord>();
}

unsigned query_unsigned(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) {
    throw Error(ErrorCode::bad_request,
                std::string("missing query parameter '") + name + "'");
  }
  const std::string raw = req.get_param_value(name);
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
  if (raw.empty() || ec != std::errc() || ptr != raw.data() + raw.size()) {
    throw Error(ErrorCode::bad_request,
                std::string("query parameter '") + name +
                    "' must be a nonnegative integer");
  }
  return value;
}

}  // namespace

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::illegal_move: return 422;
    case ErrorCode::wrong_turn: return 409;
    case ErrorCode::not_found: return 404;
    case ErrorCode::budget_exceeded: return 413;
    case ErrorCode::bad_request: return 400;
    case ErrorCode::terminal_game: return 409;
  }
  return 400;
}

struct ApiServer::Impl {
  explicit Impl(ServerConfig cfg)
      : config(std::move(cfg)),
        store(config.idle_expiry, config.id_seed) {}

  void install_routes();

  void create_game(const httplib::Request& req, httplib::Response& res);
  void get_game(const httplib::Request& req, httplib::Response& res);
  void post_move(const httplib::Request& req, httplib::Response& res);
  void get_hint(const httplib::Request& req, httplib::Response& res);
  void get_fractal(const httplib::Request& req, httplib::Response& res);
  void get_shadow(const httplib::Request& req, httplib::Response& res);

  ServerConfig config;
  SessionStore store;
  httplib::Server server;
  int bound_port = -1;
};

void ApiServer::Impl::install_routes() {
  server.set_default_headers({
      {"Access-Control-Allow-Origin", config.cors_origin},
      {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
      {"Access-Control-Allow-Headers", "Content-Type"},
  });

  // Wraps a handler so every failure becomes a JSON error with a stable code.
  auto guarded = [this](void (Impl::*handler)(const httplib::Request&,
                                              httplib::Response&)) {
    return [this, handler](const httplib::Request& req, httplib::Response& res) {
      try {
        (this->*handler)(req, res);
      } catch (const BudgetExceeded& e) {
        send_error(res, e.code(), e.what(), {{"limit", e.limit_exponent()}});
      } catch (const Error& e) {
        send_error(res, e.code(), e.what());
      } catch (const std::bad_alloc&) {
        send_error(res, ErrorCode::budget_exceeded, "response too large",
                   {{"limit", config.fractal_budget.exponent}});
      } catch (const json::exception& e) {
        send_error(res, ErrorCode::bad_request, e.what());
      } catch (const std::exception& e) {
        send_error(res, ErrorCode::bad_request, e.what());
      }
    };
  };

  server.Post("/games", guarded(&Impl::create_game));
  server.Get(R"(/games/([^/]+))", guarded(&Impl::get_game));
  server.Post(R"(/games/([^/]+)/moves)", guarded(&Impl::post_move));
  server.Get(R"(/games/([^/]+)/hint)", guarded(&Impl::get_hint));
  server.Get("/fractal", guarded(&Impl::get_fractal));
  server.Get("/fractal/shadow", guarded(&Impl::get_shadow));
  server.Options(".*", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });

  server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
    if (res.status == 404) {
      send_error(res, ErrorCode::not_found, "no route for " + req.method + " " + req.path);
    } else {
      send_error(res, ErrorCode::bad_request,
                 "request rejected with HTTP " + std::to_string(res.status));
    }
    return httplib::Server::HandlerResponse::Handled;
  });

  if (!config.ui_dir.empty() && !server.set_mount_point("/", config.ui_dir)) {
    throw std::runtime_error("UI directory '" + config.ui_dir + "' does not exist");
  }
}

void ApiServer::Impl::create_game(const httplib::Request& req,
                                  httplib::Response& res) {
  const json body = parse_body(req);
  if (!body.contains("piles") || !body.at("piles").is_array() ||
      body.at("piles").empty()) {
    throw Error(ErrorCode::bad_request, "'piles' must be a nonempty array");
  }
  std::vector<Coord> piles;
  for (const auto& v : body.at("piles")) {
    if (!v.is_number_unsigned()) {
      throw Error(ErrorCode::bad_request,
                  "every pile must be a nonnegative 64-bit integer");
    }
    piles.push_back(v.get<Coord>());
  }
  bool human_first = true;
  if (body.contains("human_first")) {
    if (!body.at("human_first").is_boolean()) {
      throw Error(ErrorCode::bad_request, "'human_first' must be a boolean");
    }
    human_first = body.at("human_first").get<bool>();
  }

  GameSession created = store.create(Position(std::move(piles)), human_first);
  json view;
  if (created.to_move == Player::engine) {
    // The engine opens at once so the human always receives a position to
    // move from.
    view = store.with_session(created.id, [](GameSession& s) {
      auto [next, reply] = engine_move(s);
      s = std::move(next);
      json v = session_view(s);
      v["engine_move"] = to_json(reply);
      return v;
    });
  } else {
    view = session_view(created);
    view["engine_move"] = nullptr;
  }
  send_json(res, 201, view);
}

void ApiServer::Impl::get_game(const httplib::Request& req,
                               httplib::Response& res) {
  const std::string id = req.matches[1];
  send_json(res, 200, store.with_session(id, [](GameSession& s) {
              return session_view(s);
            }));
}

void ApiServer::Impl::post_move(const httplib::Request& req,
                                httplib::Response& res) {
  const std::string id = req.matches[1];
  const json body = parse_body(req);
  const Move human{static_cast<std::size_t>(require_unsigned(body, "pile_index")),
                   require_unsigned(body, "new_size")};

  const json view = store.with_session(id, [&](GameSession& s) {
    // Both moves are computed on a copy; the session changes only if both
    // succeed.
    GameSession next = apply_human_move(s, human);
    std::optional<Move> reply;
    if (!next.finished()) {
      auto [after, m] = engine_move(next);
      next = std::move(after);
      reply = m;
    }
    s = std::move(next);
    json v = session_view(s);
    v["human_move"] = to_json(human);
    v["engine_move"] = reply ? to_json(*reply) : json(nullptr);
    return v;
  });
  send_json(res, 200, view);
}

void ApiServer::Impl::get_hint(const httplib::Request& req,
                               httplib::Response& res) {
  const std::string id = req.matches[1];
  const Hint h = store.with_session(id, [](GameSession& s) { return hint(s); });
  json moves = json::array();
  for (const auto& m : h.winning_moves) moves.push_back(to_json(m));
  send_json(res, 200,
            {{"classification", to_string(h.classification)},
             {"winning_moves", std::move(moves)}});
}

void ApiServer::Impl::get_fractal(const httplib::Request& req,
                                  httplib::Response& res) {
  const IterationSpec spec{query_unsigned(req, "d"), query_unsigned(req, "n")};
  spec.validate();
  const std::uint64_t exponent =
      std::uint64_t{spec.exponent} * (spec.dimension - 1);
  require_budget(exponent, config.fractal_budget);

  // Built by hand: this payload can hold 2^budget points.
  std::string out = "{\"d\":" + std::to_string(spec.dimension) +
                    ",\"n\":" + std::to_string(spec.exponent) +
                    ",\"count\":" + std::to_string(std::uint64_t{1} << exponent) +
                    ",\"points\":[";
  bool first = true;
  stream_points(spec, [&](std::span<const Coord> p) {
    if (!first) out += ',';
    first = false;
    out += '[';
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j != 0) out += ',';
      out += std::to_string(p[j]);
    }
    out += ']';
  });
  out += "]}";
  res.status = 200;
  res.set_content(out, kJson);
}

void ApiServer::Impl::get_shadow(const httplib::Request& req,
                                 httplib::Response& res) {
  const IterationSpec spec{query_unsigned(req, "d"), query_unsigned(req, "n")};
  const unsigned axis = query_unsigned(req, "axis");
  const ShadowGrid grid = shadow(spec, axis, config.fractal_budget);
  json body = {{"d", spec.dimension},
               {"n", spec.exponent},
               {"axis", axis},
               {"cells", grid.cell_count()},
               {"total", grid.total()},
               {"all_ones", grid.all_ones()}};
  if (req.has_param("counts") && req.get_param_value("counts") == "true") {
    body["counts"] = grid.counts();
  }
  send_json(res, 200, body);
}

ApiServer::ApiServer(ServerConfig config)
    : impl_(std::make_unique<Impl>(std::move(config))) {
  impl_->install_routes();
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind() {
  if (impl_->bound_port >= 0) return impl_->bound_port;
  if (impl_->config.port == 0) {
    impl_->bound_port = impl_->server.bind_to_any_port(impl_->config.host);
  } else if (impl_->server.bind_to_port(impl_->config.host, impl_->config.port)) {
    impl_->bound_port = impl_->config.port;
  }
  if (impl_->bound_port < 0) {
    impl_->bound_port = -1;
    throw std::runtime_error("cannot bind " + impl_->config.host + ":" +
                             std::to_string(impl_->config.port));
  }
  return impl_->bound_port;
}

void ApiServer::run() {
  bind();
  impl_->server.listen_after_bind();
}

void ApiServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void ApiServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

int ApiServer::port() const noexcept { return impl_->bound_port; }

SessionStore& ApiServer::sessions() noexcept { return impl_->store; }

}  // namespace nimfrac
