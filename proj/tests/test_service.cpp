#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "narayana/service.hpp"

using namespace narayana;
using namespace narayana::service;
using nlohmann::json;

namespace {

struct FakeClock {
  std::int64_t now = 1'700'000'000'000;
  Clock fn() {
    return [this] { return now; };
  }
};

GameService make_service(FakeClock& clock, std::ostream* log = nullptr, std::int64_t ttl = 60 * 60 * 1000) {
  ServiceOptions o;
  o.clock = clock.fn();
  o.log = log;
  o.seed = 42;
  o.ttl_ms = ttl;
  return GameService(o);
}

std::string create_id(GameService& svc, json body) {
  const auto r = svc.create(body);
  REQUIRE(r.status == 201);
  return r.body["id"].get<std::string>();
}

}  // namespace

TEST_CASE("create echoes the new game") {
  FakeClock clock;
  auto svc = make_service(clock);
  const auto r = svc.create({{"q", 3}, {"variant", "standard"}, {"beans", 47}});
  CHECK(r.status == 201);
  CHECK(r.body["beans"] == 47);
  CHECK(r.body["initialBeans"] == 47);
  CHECK(r.body["maxTake"] == 46);
  CHECK(r.body["toMove"] == "human");
  CHECK(r.body["status"] == "playing");
  CHECK(r.body["lastTake"].is_null());
  CHECK(r.body["history"].empty());
  CHECK(r.body["representation"] == json::array({"41", "6"}));
  CHECK(r.body["createdAt"] == clock.now);
  CHECK(r.body["id"].get<std::string>().size() == 16);
  CHECK(svc.size() == 1);
  const auto again = svc.create({{"q", 3}, {"beans", 47}});
  CHECK(again.body["id"] != r.body["id"]);
  CHECK(again.body["variant"] == "standard");
}

TEST_CASE("create rejects bad input") {
  FakeClock clock;
  auto svc = make_service(clock);
  CHECK(svc.create(json::array()).status == 400);
  CHECK(svc.create({{"beans", 10}}).status == 400);
  CHECK(svc.create({{"q", 4}, {"beans", 10}}).status == 400);
  CHECK(svc.create({{"q", 2}, {"beans", 1}}).status == 400);
  CHECK(svc.create({{"q", 2}, {"beans", "ten"}}).status == 400);
  CHECK(svc.create({{"q", 2}, {"beans", 10}, {"variant", "odd"}}).status == 400);
  CHECK(svc.create({{"q", 2}, {"beans", 10}, {"engineFirst", 1}}).status == 400);
  const auto r = svc.create({{"q", 2}, {"beans", 10}, {"variant", 3}});
  CHECK(r.status == 400);
  CHECK(r.body.contains("error"));
  CHECK(svc.size() == 0);
}

TEST_CASE("moves, engine replies and hints") {
  FakeClock clock;
  auto svc = make_service(clock);
  const auto id = create_id(svc, {{"q", 3}, {"beans", 49}});
  const auto hint = svc.hint(id);
  CHECK(hint.status == 200);
  CHECK(hint.body == json{{"take", 2}, {"leastSummand", true}, {"representation", {"41", "6", "2"}}, {"winning", true}});

  clock.now += 1000;
  const auto r = svc.move(id, {{"take", 5}});
  REQUIRE(r.status == 200);
  // 44 = 41 + 3 after the human; the engine removes 3
  CHECK(r.body["engineReply"]["take"] == 3);
  CHECK(r.body["engineReply"]["leastSummand"] == true);
  CHECK(r.body["engineReply"]["winning"] == true);
  CHECK(r.body["engineReply"]["representation"] == json::array({"41", "3"}));
  CHECK(r.body["beans"] == 41);
  CHECK(r.body["lastTake"] == 3);
  CHECK(r.body["maxTake"] == 8);
  CHECK(r.body["toMove"] == "human");
  CHECK(r.body["updatedAt"] == clock.now);
  CHECK(r.body["history"] == json::parse(R"([{"actor":"human","take":5},{"actor":"engine","take":3}])"));

  // 41 is a G-number: no winning move for the human
  const auto h = svc.hint(id);
  CHECK(h.body["winning"] == false);
  CHECK(h.body["leastSummand"] == false);
  CHECK(h.body["take"] == 1);

  const auto bad = svc.move(id, {{"take", 9}});
  CHECK(bad.status == 409);
  CHECK(bad.body["maxTake"] == 8);
  CHECK(svc.move(id, {{"take", 0}}).status == 409);
  CHECK(svc.move(id, {{"take", "x"}}).status == 400);
  CHECK(svc.move(id, json::object()).status == 400);
  CHECK(svc.get(id).body["beans"] == 41);
}

TEST_CASE("unknown games and deletion") {
  FakeClock clock;
  auto svc = make_service(clock);
  CHECK(svc.get("nope").status == 404);
  CHECK(svc.hint("nope").status == 404);
  CHECK(svc.move("nope", {{"take", 1}}).status == 404);
  CHECK(svc.remove("nope").status == 404);
  const auto id = create_id(svc, {{"q", 2}, {"beans", 10}});
  const auto d = svc.remove(id);
  CHECK(d.status == 204);
  CHECK(d.body.is_null());
  CHECK(svc.get(id).status == 404);
}

TEST_CASE("a human following hints beats the engine from a non-G pile") {
  for (int q = 1; q <= 3; ++q) {
    for (const char* variant : {"standard", "modified"}) {
      FakeClock clock;
      auto svc = make_service(clock);
      const std::int64_t beans = q == 3 ? 47 : 100;
      const auto id = create_id(svc, {{"q", q}, {"variant", variant}, {"beans", beans}});
      json state = svc.get(id).body;
      while (state["status"] == "playing") {
        const auto h = svc.hint(id).body;
        CHECK(h["winning"] == true);
        const auto r = svc.move(id, {{"take", h["take"]}});
        REQUIRE(r.status == 200);
        CHECK(r.body["maxTake"] == (r.body["status"] == "playing" ? r.body["maxTake"] : json(nullptr)));
        state = r.body;
      }
      CHECK(state["status"] == "human_won");
      CHECK(state["engineReply"].is_null());
      CHECK(svc.move(id, {{"take", 1}}).status == 409);
      CHECK(svc.hint(id).status == 409);
    }
  }
}

TEST_CASE("the engine wins from a G-number pile whatever the human does") {
  std::mt19937 rng(7);
  for (int q = 1; q <= 3; ++q) {
    for (int game = 0; game < 20; ++game) {
      FakeClock clock;
      auto svc = make_service(clock);
      const auto id = create_id(svc, {{"q", q}, {"beans", q == 1 ? 64 : (q == 2 ? 89 : 41)}});
      json state = svc.get(id).body;
      while (state["status"] == "playing") {
        const auto cap = state["maxTake"].get<std::int64_t>();
        const std::int64_t take = std::uniform_int_distribution<std::int64_t>(1, cap)(rng);
        state = svc.move(id, {{"take", take}}).body;
        if (state["status"] == "playing") CHECK(state["engineReply"]["winning"] == true);
      }
      CHECK(state["status"] == "engine_won");
    }
  }
}

TEST_CASE("engine-first games") {
  FakeClock clock;
  auto svc = make_service(clock);
  const auto r = svc.create({{"q", 3}, {"beans", 49}, {"engineFirst", true}});
  REQUIRE(r.status == 201);
  CHECK(r.body["engineFirst"] == true);
  CHECK(r.body["engineReply"]["take"] == 2);
  CHECK(r.body["beans"] == 47);
  CHECK(r.body["toMove"] == "human");
  CHECK(r.body["history"] == json::parse(R"([{"actor":"engine","take":2}])"));
  // from a G-number the engine has to fall back
  const auto g = svc.create({{"q", 3}, {"beans", 41}, {"engineFirst", true}});
  CHECK(g.body["engineReply"]["winning"] == false);
  CHECK(g.body["engineReply"]["take"] == 1);
}

TEST_CASE("idle sessions expire") {
  FakeClock clock;
  std::ostringstream log;
  auto svc = make_service(clock, &log, 1000);
  const auto a = create_id(svc, {{"q", 2}, {"beans", 10}});
  clock.now += 600;
  const auto b = create_id(svc, {{"q", 2}, {"beans", 10}});
  clock.now += 600;
  CHECK(svc.get(a).status == 404);
  CHECK(svc.get(b).status == 200);
  clock.now += 2000;
  CHECK(svc.expire_idle() == 1);
  CHECK(svc.size() == 0);
  CHECK(log.str().find(R"("event":"expire")") != std::string::npos);
}

TEST_CASE("event log replay reproduces sessions exactly") {
  FakeClock clock;
  std::ostringstream log;
  auto svc = make_service(clock, &log);
  const auto a = create_id(svc, {{"q", 3}, {"beans", 49}});
  clock.now += 10;
  svc.move(a, {{"take", 5}});
  clock.now += 10;
  svc.move(a, {{"take", 1}});
  const auto b = create_id(svc, {{"q", 2}, {"variant", "modified"}, {"beans", 30}, {"engineFirst", true}});
  const auto c = create_id(svc, {{"q", 1}, {"beans", 12}});
  clock.now += 10;
  svc.remove(c);
  const auto d = create_id(svc, {{"q", 1}, {"beans", 3}});
  svc.move(d, {{"take", 1}});  // the engine takes the last beans

  // every line is one JSON event with the common fields
  std::istringstream lines(log.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const auto e = json::parse(line);
    CHECK(e.contains("ts"));
    CHECK(e.contains("session"));
    const auto kind = e["event"].get<std::string>();
    CHECK((kind == "create" || kind == "move" || kind == "engine" || kind == "expire"));
    ++count;
  }
  CHECK(count == 12);

  FakeClock later;
  later.now = clock.now + 5;
  auto restored = make_service(later);
  std::istringstream in(log.str());
  restored.replay(in);
  CHECK(restored.size() == 3);
  for (const auto& id : {a, b, d}) CHECK(restored.get(id).body.dump() == svc.get(id).body.dump());
  CHECK(restored.get(c).status == 404);
  // play continues on the restored copy
  CHECK(restored.move(a, {{"take", 1}}).status == svc.move(a, {{"take", 1}}).status);

  std::istringstream junk("{\"ts\":1,\"session\":\"x\",\"event\":\"move\",\"take\":1}\n");
  CHECK_THROWS(make_service(later).replay(junk));
  std::istringstream broken("not json\n");
  CHECK_THROWS(make_service(later).replay(broken));
}

TEST_CASE("concurrent moves on distinct sessions") {
  FakeClock clock;
  auto svc = make_service(clock);
  std::vector<std::string> ids;
  for (int i = 0; i < 8; ++i) ids.push_back(create_id(svc, {{"q", 2}, {"beans", 200 + i}}));
  std::vector<std::thread> threads;
  std::vector<std::string> outcome(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    threads.emplace_back([&, i] {
      json state = svc.get(ids[i]).body;
      while (state["status"] == "playing") state = svc.move(ids[i], {{"take", svc.hint(ids[i]).body["take"]}}).body;
      outcome[i] = state["status"].get<std::string>();
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& o : outcome) CHECK(o == "human_won");
}

TEST_CASE("HTTP round trip") {
  FakeClock clock;
  auto svc = make_service(clock);
  httplib::Server server;
  bind_routes(server, svc, "http://localhost:5173");
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto created = client.Post("/games", R"({"q":3,"variant":"standard","beans":49})", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  CHECK(created->get_header_value("Content-Type") == "application/json");
  CHECK(created->get_header_value("Access-Control-Allow-Origin") == "http://localhost:5173");
  const auto id = json::parse(created->body)["id"].get<std::string>();

  auto hint = client.Get("/games/" + id + "/hint");
  REQUIRE(hint);
  CHECK(json::parse(hint->body)["take"] == 2);

  auto moved = client.Post("/games/" + id + "/moves", R"({"take":2})", "application/json");
  REQUIRE(moved);
  CHECK(moved->status == 200);
  CHECK(json::parse(moved->body).contains("engineReply"));

  auto illegal = client.Post("/games/" + id + "/moves", R"({"take":1000})", "application/json");
  REQUIRE(illegal);
  CHECK(illegal->status == 409);
  CHECK(json::parse(illegal->body).contains("maxTake"));

  auto malformed = client.Post("/games/" + id + "/moves", "{", "application/json");
  REQUIRE(malformed);
  CHECK(malformed->status == 400);

  auto preflight = client.Options("/games/" + id + "/moves");
  REQUIRE(preflight);
  CHECK(preflight->status == 204);
  CHECK(preflight->get_header_value("Access-Control-Allow-Methods").find("POST") != std::string::npos);

  auto got = client.Get("/games/" + id);
  REQUIRE(got);
  CHECK(json::parse(got->body) == svc.get(id).body);

  auto deleted = client.Delete("/games/" + id);
  REQUIRE(deleted);
  CHECK(deleted->status == 204);
  auto gone = client.Get("/games/" + id);
  REQUIRE(gone);
  CHECK(gone->status == 404);
  CHECK(json::parse(gone->body).contains("error"));

  auto unknown = client.Get("/elsewhere");
  REQUIRE(unknown);
  CHECK(unknown->status == 404);

  server.stop();
  t.join();
}

TEST_CASE("serve reports a busy port with exit code 2") {
  httplib::Server blocker;
  const int port = blocker.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread t([&] { blocker.listen_after_bind(); });
  blocker.wait_until_ready();
  ServeOptions o;
  o.port = port;
  std::ostringstream out, err;
  unsetenv("NARAYANA_PORT");
  CHECK(serve(o, out, err) == 2);
  CHECK(err.str().find("cannot bind") != std::string::npos);

  // the environment overrides --port
  o.port = 0;
  setenv("NARAYANA_PORT", std::to_string(port).c_str(), 1);
  CHECK(serve(o, out, err) == 2);
  setenv("NARAYANA_PORT", "http", 1);
  CHECK(serve(o, out, err) == 2);
  unsetenv("NARAYANA_PORT");
  blocker.stop();
  t.join();
}
