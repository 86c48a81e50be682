#include <chrono>
#include <cmath>
#include <string>
#include <thread>

#include "doctest.h"
#include "httplib.h"

#include "polyassign/engine.hpp"
#include "polyassign/error.hpp"
#include "polyassign/scenarios.hpp"
#include "polyassign/service.hpp"

using namespace polyassign;

namespace {

SessionConfig config_of(const std::string& spec) { return session_config_from_json(Json{{"case", spec}}); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected polyassign::Error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_SUITE("service") {

TEST_CASE("config parsing") {
  const SessionConfig tri = session_config_from_json(Json::parse(R"({"shape": {"kind": "triangle", "S": 1}, "metric": "cycle"})"));
  CHECK(tri.capacities == std::vector<int>{1, 1, 1});
  CHECK(config_of("triangle-lb").capacities == std::vector<int>{2, 2, 2});
  CHECK(code_of([] {
          (void)session_config_from_json(
              Json::parse(R"({"shape": {"kind": "ring", "profile": "linear", "n": 4, "d": 1}, "metric": "chord"})"));
        }) == ErrorCode::kUnsupportedMetric);
  CHECK(code_of([] { (void)session_config_from_json(Json::parse(R"({"case": "polygon-lb:n=3", "x": 1})")); }) ==
        ErrorCode::kSchema);
  CHECK(code_of([] { (void)session_config_from_json(Json::parse(R"({"metric": "cycle"})")); }) == ErrorCode::kSchema);
}

TEST_CASE("fresh snapshot") {
  SessionStore store;
  const SessionSnapshot s = store.create(session_config_from_json(
      Json::parse(R"({"shape": {"kind": "triangle", "S": 1}, "metric": "cycle"})")));
  CHECK(s.ratio == 1.0);
  CHECK(s.placed.empty());
  const Json doc = to_json(s);
  CHECK(doc["perimeter"] == 3.0);
  CHECK(doc["embedding"] == "polygon");
  REQUIRE(doc["facilities"].size() == 3);
  CHECK(doc["facilities"][0]["x"].get<double>() == doctest::Approx(0.0));
  CHECK(doc["facilities"][1]["x"].get<double>() == doctest::Approx(1.0));
  CHECK(doc["facilities"][2]["x"].get<double>() == doctest::Approx(0.5));
  CHECK(doc["facilities"][2]["y"].get<double>() == doctest::Approx(std::sqrt(3.0) / 2.0));
  CHECK(doc["last_step"].is_null());

  const SessionSnapshot sq = store.create(
      session_config_from_json(Json::parse(R"({"shape": {"kind": "rectangle", "w": 1, "h": 1}, "metric": "path"})")));
  CHECK(to_json(sq)["perimeter"] == 4.0);
  const SessionSnapshot lin = store.create(config_of("circle-linear:n=4"));
  CHECK(to_json(lin)["embedding"] == "none");
  CHECK(to_json(lin)["facilities"][0]["x"].is_null());
}

TEST_CASE("placements") {
  SessionStore store;
  const std::string id = store.create(config_of("triangle-exact")).id;
  SessionSnapshot s = store.place(id, 0.5);
  REQUIRE(s.last_step);
  CHECK(s.last_step->facility == 0);
  CHECK(s.last_step->cost == 0.5);
  CHECK(s.ratio == 1.0);
  s = store.place(id, 0.0);
  const double first_two = s.greedy.steps[0].cost + s.greedy.steps[1].cost;
  CHECK(store.get(id).greedy.total_cost == first_two);
  s = store.place(id, 1.0);
  CHECK(s.greedy.total_cost == 2.5);
  CHECK(s.opt.total_cost == 1.5);
  CHECK(s.ratio == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(s.residual == std::vector<int>{0, 0, 0});
  CHECK(code_of([&] { store.place(id, 2.0); }) == ErrorCode::kCapacityExhausted);
  CHECK(store.audit(id));
}

TEST_CASE("capacity, range and lookup errors") {
  SessionStore store;
  const std::string id = store.create(config_of("triangle-lb")).id;
  for (double s : {0.5, 0.5, 0.0, 0.0, 0.0, 0.0}) store.place(id, s);
  CHECK(store.get(id).greedy.total_cost == 5.0);
  CHECK(code_of([&] { store.place(id, 0.0); }) == ErrorCode::kCapacityExhausted);
  const std::string other = store.create(config_of("triangle-lb")).id;
  CHECK(code_of([&] { store.place(other, 3.2); }) == ErrorCode::kOutOfRange);
  CHECK(code_of([&] { store.place(other, std::nan("")); }) == ErrorCode::kOutOfRange);
  CHECK(code_of([&] { store.undo(other); }) == ErrorCode::kEmptySession);
  CHECK(code_of([&] { (void)store.get("feedbeef"); }) == ErrorCode::kNotFound);
  store.remove(other);
  CHECK(code_of([&] { (void)store.get(other); }) == ErrorCode::kNotFound);
}

TEST_CASE("undo restores the previous snapshot exactly") {
  SessionStore store;
  const std::string id = store.create(config_of("polygon-lb:n=8")).id;
  const Scenario base = build(PaperCase::kPolygonLB, {.n = 8});
  for (std::size_t i = 0; i < base.arrivals.size(); ++i) {
    const SessionSnapshot before = store.get(id);
    const SessionSnapshot after = store.place(id, base.arrivals[i].s);
    CHECK(store.undo(id) == before);
    CHECK(store.place(id, base.arrivals[i].s) == after);
    Scenario replay = base;
    replay.arrivals.resize(i + 1);
    CHECK(after.greedy == run_greedy(replay));
  }
  CHECK(store.get(id).ratio == 15.0);
  const SessionSnapshot cleared = store.reset(id);
  CHECK(cleared.placed.empty());
  CHECK(cleared.greedy.total_cost == 0.0);
  CHECK(cleared.opt.total_cost == 0.0);
  CHECK(store.export_scenario(id).arrivals.empty());
}

TEST_CASE("export is a scenario file") {
  SessionStore store;
  const std::string id = store.create(config_of("rectangle-lb")).id;
  for (double s : {3.5, 0.0, 1.0, 1.0}) store.place(id, s);
  const Scenario sc = store.export_scenario(id);
  CHECK(parse_scenario(to_json(sc).dump()) == sc);
  CHECK(run_greedy(sc).total_cost == 4.5);
}

TEST_CASE("idle sessions expire") {
  auto now = std::chrono::steady_clock::time_point{};
  SessionStore store(std::chrono::seconds(60), [&now] { return now; });
  const std::string a = store.create(config_of("triangle-exact")).id;
  now += std::chrono::seconds(50);
  const std::string b = store.create(config_of("triangle-exact")).id;
  now += std::chrono::seconds(20);
  CHECK(store.purge_expired() == 1);
  CHECK(store.size() == 1);
  CHECK(store.get(b).id == b);
  CHECK(code_of([&] { (void)store.get(a); }) == ErrorCode::kNotFound);
}

TEST_CASE("sessions are independent under concurrency") {
  SessionStore store;
  std::vector<std::string> ids;
  for (int k = 0; k < 8; ++k) ids.push_back(store.create(config_of("polygon-lb:n=12")).id);
  const Scenario base = build(PaperCase::kPolygonLB, {.n = 12});
  std::vector<std::thread> threads;
  for (const std::string& id : ids) {
    threads.emplace_back([&store, &base, id] {
      for (int round = 0; round < 5; ++round) {
        for (const BoundaryPoint& p : base.arrivals) store.place(id, p.s);
        store.reset(id);
      }
      for (const BoundaryPoint& p : base.arrivals) store.place(id, p.s);
    });
  }
  for (auto& t : threads) t.join();
  for (const std::string& id : ids) {
    CHECK(store.get(id).ratio == 23.0);
    CHECK(store.audit(id));
  }
}

TEST_CASE("HTTP API") {
  httplib::Server server;
  SessionStore store;
  mount_routes(server, store, "");
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread worker([&server] { server.listen_after_bind(); });
  server.wait_until_ready();
  httplib::Client client("127.0.0.1", port);

  auto res = client.Get("/api/cases");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(Json::parse(res->body).size() == preset_case_specs().size());

  res = client.Get("/api/cases/polygon-lb:n=8,d=1");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(parse_scenario(res->body) == build(PaperCase::kPolygonLB, {.n = 8}));

  res = client.Post("/api/sessions", R"({"case": "triangle-exact"})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 201);
  const std::string id = Json::parse(res->body)["id"];
  const std::string base = "/api/sessions/" + id;

  for (double s : {0.5, 0.0, 1.0}) {
    res = client.Post(base + "/customers", Json{{"s", s}}.dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);
  }
  Json snap = Json::parse(res->body);
  CHECK(snap["greedy_total"] == 2.5);
  CHECK(snap["opt_total"] == 1.5);
  CHECK(snap["capacity_left"] == 0);

  res = client.Post(base + "/customers", R"({"s": 2})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 409);
  CHECK(Json::parse(res->body)["error"]["code"] == "capacity_exhausted");

  res = client.Post(base + "/undo", "", "application/json");
  REQUIRE(res);
  CHECK(Json::parse(res->body)["placed"].size() == 2);

  res = client.Post(base + "/customers", R"({"s": 9})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 400);
  res = client.Post(base + "/customers", R"({"s": )", "application/json");
  REQUIRE(res);
  CHECK(res->status == 400);
  CHECK(Json::parse(res->body)["error"].contains("message"));

  res = client.Get(base + "/export");
  REQUIRE(res);
  CHECK(parse_scenario(res->body).arrivals.size() == 2);

  res = client.Post(base + "/reset", "", "application/json");
  REQUIRE(res);
  CHECK(Json::parse(res->body)["ratio"] == 1.0);
  res = client.Post(base + "/undo", "", "application/json");
  REQUIRE(res);
  CHECK(res->status == 409);

  res = client.Post("/api/sessions", R"({"shape": {"kind": "ring", "profile": "linear", "n": 4, "d": 1}, "metric": "chord"})",
                    "application/json");
  REQUIRE(res);
  CHECK(res->status == 400);
  CHECK(Json::parse(res->body)["error"]["code"] == "unsupported_metric");

  res = client.Delete(base);
  REQUIRE(res);
  CHECK(res->status == 204);
  res = client.Get(base);
  REQUIRE(res);
  CHECK(res->status == 404);

  server.stop();
  worker.join();
}

}  // TEST_SUITE
