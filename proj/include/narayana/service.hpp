#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>

#include "narayana/nim.hpp"
#include "json.hpp"

namespace httplib {
class Server;
}

namespace narayana::service {

/// Milliseconds since the Unix epoch.
using Clock = std::function<std::int64_t()>;
std::int64_t system_clock_ms();

struct Response {
  int status = 200;
  nlohmann::json body;  // null for 204
};

struct ServiceOptions {
  std::int64_t ttl_ms = 60 * 60 * 1000;
  Clock clock = system_clock_ms;
  /// Event log sink, one JSON object per line. Not owned.
  std::ostream* log = nullptr;
  std::uint64_t seed = 0;  // 0: seeded from std::random_device
  std::int64_t max_beans = 1'000'000'000'000LL;
};

/// In-memory Nim sessions between a human and the least-summand engine.
/// Handlers are safe to call concurrently; each session is mutated under its
/// own lock.
class GameService {
 public:
  explicit GameService(ServiceOptions options = {});

  Response create(const nlohmann::json& body);
  Response get(const std::string& id);
  Response move(const std::string& id, const nlohmann::json& body);
  Response hint(const std::string& id);
  Response remove(const std::string& id);

  /// Drops sessions idle for longer than the TTL; returns how many.
  std::size_t expire_idle();
  std::size_t size() const;

  /// Rebuilds sessions from an event log written by a previous instance.
  /// Lines that do not parse stop the replay with an exception naming the
  /// line number.
  void replay(std::istream& in);

 private:
  struct Session {
    std::mutex mu;
    std::string id;
    nim::GameConfig config;
    nim::GameState state;
    bool engine_first = false;
    std::vector<std::string> actors;  // parallel to state.history
    std::int64_t created_at = 0;
    std::int64_t updated_at = 0;
    bool alive = true;
  };

  std::shared_ptr<Session> find(const std::string& id);
  std::string fresh_id();
  void log_event(nlohmann::json event);
  nlohmann::json engine_turn(Session& s, std::int64_t now);
  static nlohmann::json session_json(const Session& s);
  static nlohmann::json advice_json(const nim::GameConfig& config, const nim::GameState& state);

  ServiceOptions options_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mt19937_64 rng_;
  std::mutex log_mu_;
};

struct ServeOptions {
  std::string bind = "127.0.0.1";
  int port = 8080;
  std::string cors_origin = "*";
  std::optional<std::string> persist;
  std::int64_t ttl_ms = 60 * 60 * 1000;
};

/// Registers the /games routes and CORS headers on `server`.
void bind_routes(httplib::Server& server, GameService& service, const std::string& cors_origin);

/// Runs the HTTP service until stopped. NARAYANA_PORT overrides the port.
/// Returns 2 when the port cannot be bound.
int serve(const ServeOptions& options, std::ostream& out, std::ostream& err);

}  // namespace narayana::service
