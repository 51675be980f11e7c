#include "narayana/service.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "httplib.h"

namespace narayana::service {

using nlohmann::json;

std::int64_t system_clock_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

namespace {

Response error(int status, const std::string& message) { return {status, json{{"error", message}}}; }

json summand_strings(int q, std::int64_t beans) {
  json out = json::array();
  if (beans <= 0) return out;
  for (const auto& s : summands(greedy_q_rep(q, beans))) out.push_back(s.str());
  return out;
}

// Integer field with a default, rejecting non-integers.
std::optional<std::int64_t> int_field(const json& body, const char* key, std::optional<std::int64_t> fallback,
                                      std::string& problem) {
  if (!body.contains(key)) {
    if (!fallback) problem = std::string("missing field '") + key + "'";
    return fallback;
  }
  const json& v = body.at(key);
  if (!v.is_number_integer()) {
    problem = std::string("field '") + key + "' must be an integer";
    return std::nullopt;
  }
  return v.get<std::int64_t>();
}

}  // namespace

GameService::GameService(ServiceOptions options) : options_(std::move(options)) {
  rng_.seed(options_.seed != 0 ? options_.seed : std::random_device{}());
}

std::string GameService::fresh_id() {
  static constexpr char hex[] = "0123456789abcdef";
  while (true) {
    const std::uint64_t v = rng_();
    std::string id(16, '0');
    for (int i = 0; i < 16; ++i) id[static_cast<std::size_t>(i)] = hex[(v >> (4 * i)) & 0xf];
    if (!sessions_.count(id)) return id;
  }
}

void GameService::log_event(json event) {
  if (!options_.log) return;
  std::lock_guard lock(log_mu_);
  *options_.log << event.dump() << '\n';
  options_.log->flush();
}

json GameService::session_json(const Session& s) {
  const nim::Player human = s.engine_first ? nim::Player::second : nim::Player::first;
  json history = json::array();
  for (std::size_t i = 0; i < s.state.history.size(); ++i) {
    history.push_back({{"actor", s.actors[i]}, {"take", s.state.history[i]}});
  }
  std::string status = "playing";
  if (s.state.over()) status = *s.state.winner() == human ? "human_won" : "engine_won";
  json j{{"id", s.id},
         {"q", s.config.q},
         {"variant", nim::variant_name(s.config.variant)},
         {"initialBeans", s.config.initial_beans},
         {"beans", s.state.beans},
         {"engineFirst", s.engine_first},
         {"history", history},
         {"status", status},
         {"representation", summand_strings(s.config.q, s.state.beans)},
         {"createdAt", s.created_at},
         {"updatedAt", s.updated_at}};
  j["lastTake"] = s.state.last_take ? json(*s.state.last_take) : json(nullptr);
  if (s.state.over()) {
    j["maxTake"] = nullptr;
    j["toMove"] = nullptr;
  } else {
    j["maxTake"] = nim::max_take(s.config, s.state);
    j["toMove"] = s.state.to_move == human ? "human" : "engine";
  }
  return j;
}

json GameService::advice_json(const nim::GameConfig& config, const nim::GameState& state) {
  const auto m = nim::strategy_move(config, state);
  json rep = json::array();
  for (const auto& s : summands(m.representation)) rep.push_back(s.str());
  return {{"take", m.take}, {"leastSummand", !m.fallback}, {"representation", rep}, {"winning", !m.fallback}};
}

json GameService::engine_turn(Session& s, std::int64_t now) {
  json reply = advice_json(s.config, s.state);
  const std::int64_t take = reply["take"].get<std::int64_t>();
  s.state = nim::apply_move(s.config, s.state, take);
  s.actors.push_back("engine");
  s.updated_at = now;
  log_event({{"ts", now}, {"session", s.id}, {"event", "engine"}, {"take", take}});
  return reply;
}

std::shared_ptr<GameService::Session> GameService::find(const std::string& id) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

Response GameService::create(const json& body) {
  expire_idle();
  if (!body.is_object()) return error(400, "request body must be a JSON object");
  std::string problem;
  const auto q = int_field(body, "q", std::nullopt, problem);
  if (!problem.empty()) return error(400, problem);
  const auto beans = int_field(body, "beans", std::nullopt, problem);
  if (!problem.empty()) return error(400, problem);
  nim::Variant variant = nim::Variant::standard;
  if (body.contains("variant")) {
    if (!body["variant"].is_string()) return error(400, "field 'variant' must be a string");
    try {
      variant = nim::parse_variant(body["variant"].get<std::string>());
    } catch (const PreconditionError& e) {
      return error(400, e.what());
    }
  }
  bool engine_first = false;
  if (body.contains("engineFirst")) {
    if (!body["engineFirst"].is_boolean()) return error(400, "field 'engineFirst' must be a boolean");
    engine_first = body["engineFirst"].get<bool>();
  }
  const nim::GameConfig config{static_cast<int>(*q), variant, *beans};
  if (*q < 1 || *q > 3) return error(400, "q must be 1, 2 or 3");
  if (*beans < 2) return error(400, "beans must be at least 2");
  if (*beans > options_.max_beans) return error(400, "beans must be at most " + std::to_string(options_.max_beans));

  auto s = std::make_shared<Session>();
  const std::int64_t now = options_.clock();
  std::lock_guard session_lock(s->mu);
  {
    std::lock_guard lock(mu_);
    s->id = fresh_id();
    sessions_[s->id] = s;
  }
  s->config = config;
  s->state = nim::initial_state(config);
  s->engine_first = engine_first;
  s->created_at = s->updated_at = now;
  log_event({{"ts", now},
             {"session", s->id},
             {"event", "create"},
             {"q", config.q},
             {"variant", nim::variant_name(variant)},
             {"beans", config.initial_beans},
             {"engineFirst", engine_first}});
  json out;
  if (engine_first) {
    json reply = engine_turn(*s, now);
    out = session_json(*s);
    out["engineReply"] = reply;
  } else {
    out = session_json(*s);
  }
  return {201, out};
}

Response GameService::get(const std::string& id) {
  expire_idle();
  auto s = find(id);
  if (!s) return error(404, "no game '" + id + "'");
  std::lock_guard lock(s->mu);
  if (!s->alive) return error(404, "no game '" + id + "'");
  return {200, session_json(*s)};
}

Response GameService::move(const std::string& id, const json& body) {
  expire_idle();
  auto s = find(id);
  if (!s) return error(404, "no game '" + id + "'");
  if (!body.is_object()) return error(400, "request body must be a JSON object");
  std::string problem;
  const auto take = int_field(body, "take", std::nullopt, problem);
  if (!problem.empty()) return error(400, problem);

  std::lock_guard lock(s->mu);
  if (!s->alive) return error(404, "no game '" + id + "'");
  if (s->state.over()) return error(409, "the game is over");
  const std::int64_t cap = nim::max_take(s->config, s->state);
  if (*take < 1 || *take > cap) {
    Response r = error(409, "take must be between 1 and " + std::to_string(cap));
    r.body["maxTake"] = cap;
    return r;
  }
  const std::int64_t now = options_.clock();
  s->state = nim::apply_move(s->config, s->state, *take);
  s->actors.push_back("human");
  s->updated_at = now;
  log_event({{"ts", now}, {"session", s->id}, {"event", "move"}, {"take", *take}});
  json reply = nullptr;
  if (!s->state.over()) reply = engine_turn(*s, now);
  json out = session_json(*s);
  out["engineReply"] = reply;
  return {200, out};
}

Response GameService::hint(const std::string& id) {
  expire_idle();
  auto s = find(id);
  if (!s) return error(404, "no game '" + id + "'");
  std::lock_guard lock(s->mu);
  if (!s->alive) return error(404, "no game '" + id + "'");
  if (s->state.over()) return error(409, "the game is over");
  return {200, advice_json(s->config, s->state)};
}

Response GameService::remove(const std::string& id) {
  expire_idle();
  std::shared_ptr<Session> s;
  {
    std::lock_guard lock(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return error(404, "no game '" + id + "'");
    s = it->second;
    sessions_.erase(it);
  }
  std::lock_guard lock(s->mu);
  s->alive = false;
  log_event({{"ts", options_.clock()}, {"session", id}, {"event", "expire"}, {"reason", "deleted"}});
  return {204, nullptr};
}

std::size_t GameService::expire_idle() {
  const std::int64_t now = options_.clock();
  std::vector<std::shared_ptr<Session>> stale;
  {
    std::lock_guard lock(mu_);
    for (auto it = sessions_.begin(); it != sessions_.end();) {
      std::unique_lock session_lock(it->second->mu, std::try_to_lock);
      // a session busy in a handler is active by definition
      if (session_lock.owns_lock() && now - it->second->updated_at > options_.ttl_ms) {
        it->second->alive = false;
        stale.push_back(it->second);
        it = sessions_.erase(it);
      } else {
        ++it;
      }
    }
  }
  for (const auto& s : stale) {
    log_event({{"ts", now}, {"session", s->id}, {"event", "expire"}, {"reason", "idle"}});
  }
  return stale.size();
}

std::size_t GameService::size() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

void GameService::replay(std::istream& in) {
  std::string line;
  int number = 0;
  auto fail = [&](const std::string& why) {
    throw std::runtime_error("event log line " + std::to_string(number) + ": " + why);
  };
  std::lock_guard lock(mu_);
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    json e;
    try {
      e = json::parse(line);
      const auto ts = e.at("ts").get<std::int64_t>();
      const auto id = e.at("session").get<std::string>();
      const auto kind = e.at("event").get<std::string>();
      if (kind == "create") {
        auto s = std::make_shared<Session>();
        s->id = id;
        s->config = {e.at("q").get<int>(), nim::parse_variant(e.at("variant").get<std::string>()),
                     e.at("beans").get<std::int64_t>()};
        s->config.validate();
        s->state = nim::initial_state(s->config);
        s->engine_first = e.value("engineFirst", false);
        s->created_at = s->updated_at = ts;
        sessions_[id] = s;
        continue;
      }
      auto it = sessions_.find(id);
      if (it == sessions_.end()) fail("unknown session '" + id + "'");
      Session& s = *it->second;
      if (kind == "move" || kind == "engine") {
        s.state = nim::apply_move(s.config, s.state, e.at("take").get<std::int64_t>());
        s.actors.push_back(kind == "move" ? "human" : "engine");
        s.updated_at = ts;
      } else if (kind == "expire") {
        sessions_.erase(it);
      } else {
        fail("unknown event '" + kind + "'");
      }
    } catch (const std::runtime_error&) {
      throw;
    } catch (const std::exception& ex) {
      fail(ex.what());
    }
  }
}

namespace {

json parse_body(const httplib::Request& req, bool& ok) {
  ok = true;
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::parse_error&) {
    ok = false;
    return nullptr;
  }
}

void send(httplib::Response& res, const Response& r) {
  res.status = r.status;
  if (r.status != 204) res.set_content(r.body.dump(), "application/json");
}

}  // namespace

void bind_routes(httplib::Server& server, GameService& service, const std::string& cors_origin) {
  server.set_default_headers({{"Access-Control-Allow-Origin", cors_origin},
                              {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Options(R"(/games(/.*)?)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.Post("/games", [&service](const httplib::Request& req, httplib::Response& res) {
    bool ok = false;
    const json body = parse_body(req, ok);
    send(res, ok ? service.create(body) : error(400, "malformed JSON"));
  });
  server.Get(R"(/games/([^/]+))", [&service](const httplib::Request& req, httplib::Response& res) {
    send(res, service.get(req.matches[1]));
  });
  server.Delete(R"(/games/([^/]+))", [&service](const httplib::Request& req, httplib::Response& res) {
    send(res, service.remove(req.matches[1]));
  });
  server.Post(R"(/games/([^/]+)/moves)", [&service](const httplib::Request& req, httplib::Response& res) {
    bool ok = false;
    const json body = parse_body(req, ok);
    send(res, ok ? service.move(req.matches[1], body) : error(400, "malformed JSON"));
  });
  server.Get(R"(/games/([^/]+)/hint)", [&service](const httplib::Request& req, httplib::Response& res) {
    send(res, service.hint(req.matches[1]));
  });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) res.set_content(json{{"error", "not found"}}.dump(), "application/json");
  });
}

int serve(const ServeOptions& options, std::ostream& out, std::ostream& err) {
  int port = options.port;
  if (const char* env = std::getenv("NARAYANA_PORT"); env && *env) {
    try {
      port = std::stoi(env);
    } catch (const std::exception&) {
      err << "NARAYANA_PORT is not a port number: " << env << '\n';
      return 2;
    }
  }
  ServiceOptions service_options;
  service_options.ttl_ms = options.ttl_ms;
  std::ifstream previous;
  std::ofstream log;
  if (options.persist) {
    previous.open(*options.persist);
    log.open(*options.persist, std::ios::app);
    if (!log) {
      err << "cannot open " << *options.persist << " for appending\n";
      return 1;
    }
    service_options.log = &log;
  }
  GameService service(service_options);
  if (previous.is_open()) {
    try {
      service.replay(previous);
    } catch (const std::exception& e) {
      err << "cannot replay " << *options.persist << ": " << e.what() << '\n';
      return 1;
    }
  }

  httplib::Server server;
  // SO_REUSEADDR only: a busy port must fail to bind
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  bind_routes(server, service, options.cors_origin);
  if (!server.bind_to_port(options.bind, port)) {
    err << "cannot bind " << options.bind << ':' << port << '\n';
    return 2;
  }
  out << "listening on http://" << options.bind << ':' << port << '\n';
  out.flush();
  server.listen_after_bind();
  return 0;
}

}  // namespace narayana::service
