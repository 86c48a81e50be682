#include "polyassign/service.hpp"

#include <filesystem>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <iomanip>

#include "httplib.h"

#include "polyassign/error.hpp"
#include "polyassign/scenarios.hpp"

namespace polyassign {

namespace {

SessionSnapshot derive(const std::string& id, const SessionConfig& config, const std::vector<BoundaryPoint>& placed) {
  Scenario sc;
  sc.name = config.base_name;
  sc.shape = config.shape;
  sc.metric = config.metric;
  sc.capacities = config.capacities;
  sc.arrivals = placed;

  SessionSnapshot snap;
  snap.id = id;
  snap.config = config;
  snap.placed = placed;
  snap.greedy = run_greedy(sc);
  snap.opt = solve_matching(sc);
  snap.ratio = competitive_ratio(snap.greedy.total_cost, snap.opt.total_cost);
  if (!placed.empty()) {
    snap.last_step = snap.greedy.steps.back();
  }
  snap.residual = config.capacities;
  for (const Assignment& a : snap.greedy.steps) --snap.residual[static_cast<std::size_t>(a.facility)];
  return snap;
}

void validate_config(const SessionConfig& config) {
  Scenario probe;
  probe.shape = config.shape;
  probe.metric = config.metric;
  probe.capacities = config.capacities;
  validate(probe);
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kCapacityExhausted:
    case ErrorCode::kEmptySession: return 409;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kUnsupportedMetric:
    case ErrorCode::kOutOfRange:
    case ErrorCode::kTooManyCustomers:
    case ErrorCode::kNoClaims:
    case ErrorCode::kParse:
    case ErrorCode::kSchema: return 400;
  }
  return 500;
}

void reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, std::string_view code, const std::string& message) {
  reply(res, status, Json{{"error", Json{{"code", std::string(code)}, {"message", message}}}});
}

// Runs a handler, turning library errors into the JSON error envelope.
template <typename Fn>
httplib::Server::Handler guarded(SessionStore& store, Fn fn) {
  return [&store, fn](const httplib::Request& req, httplib::Response& res) {
    try {
      store.purge_expired();
      fn(req, res);
    } catch (const Error& e) {
      reply_error(res, http_status(e.code()), to_string(e.code()), e.what());
    } catch (const Json::exception& e) {
      reply_error(res, 400, "bad_request", e.what());
    } catch (const std::exception& e) {
      reply_error(res, 500, "internal", e.what());
    }
  };
}

Json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  try {
    return Json::parse(req.body);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("malformed JSON body: ") + e.what());
  }
}

}  // namespace

SessionConfig session_config_from_json(const Json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::kSchema, "session config must be an object");
  SessionConfig config;
  if (doc.contains("case")) {
    for (const auto& item : doc.items()) {
      if (item.key() != "case") throw Error(ErrorCode::kSchema, "unknown field '" + item.key() + "' next to case");
    }
    if (!doc["case"].is_string()) throw Error(ErrorCode::kSchema, "case: expected a string");
    const Scenario base = build(parse_case_spec(doc["case"].get<std::string>()));
    config.base_name = base.name;
    config.shape = base.shape;
    config.metric = base.metric;
    config.capacities = base.capacities;
  } else {
    for (const auto& item : doc.items()) {
      if (item.key() != "shape" && item.key() != "metric" && item.key() != "capacities" && item.key() != "name") {
        throw Error(ErrorCode::kSchema, "unknown field '" + item.key() + "'");
      }
    }
    if (!doc.contains("shape")) throw Error(ErrorCode::kSchema, "missing field 'shape'");
    config.shape = shape_from_json(doc["shape"]);
    if (!doc.contains("metric") || !doc["metric"].is_string()) {
      throw Error(ErrorCode::kSchema, "metric: expected a string");
    }
    try {
      config.metric = parse_metric(doc["metric"].get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorCode::kSchema, std::string("metric: ") + e.what());
    }
    if (doc.contains("capacities")) {
      if (!doc["capacities"].is_array()) throw Error(ErrorCode::kSchema, "capacities: expected an array");
      for (const auto& c : doc["capacities"]) {
        if (!c.is_number_integer()) throw Error(ErrorCode::kSchema, "capacities: expected integers");
        config.capacities.push_back(c.get<int>());
      }
    } else {
      config.capacities.assign(static_cast<std::size_t>(config.shape.facility_count()), 1);
    }
    if (doc.contains("name") && doc["name"].is_string()) config.base_name = doc["name"].get<std::string>();
  }
  validate_config(config);
  return config;
}

Json to_json(const SessionSnapshot& snap) {
  const Shape& shape = snap.config.shape;
  const bool circle = shape.kind() == ShapeKind::kFacilityRing;
  Json facilities = Json::array();
  const auto sites = shape.sites();
  for (std::size_t j = 0; j < sites.size(); ++j) {
    Json f{{"id", static_cast<int>(j)},
           {"s", sites[j]},
           {"capacity", snap.config.capacities[j]},
           {"residual", snap.residual[j]}};
    if (shape.embeddable()) {
      const Point2 p = embed(shape, BoundaryPoint{sites[j]});
      f["x"] = p.x;
      f["y"] = p.y;
    } else {
      f["x"] = nullptr;
      f["y"] = nullptr;
    }
    facilities.push_back(f);
  }
  Json placed = Json::array();
  for (const auto& p : snap.placed) placed.push_back(p.s);
  Json greedy = Json::array();
  for (const auto& a : snap.greedy.steps) {
    greedy.push_back(Json{{"customer", a.customer}, {"facility", a.facility}, {"cost", a.cost}});
  }
  int left = 0;
  for (int r : snap.residual) left += r;
  Json out{{"id", snap.id},
           {"base", snap.config.base_name},
           {"shape", shape_to_json(shape)},
           {"metric", std::string(to_string(snap.config.metric))},
           {"perimeter", shape.perimeter()},
           {"boundary_length", boundary_length(shape, snap.config.metric)},
           {"embedding", !shape.embeddable() ? "none" : (circle ? "circle" : "polygon")},
           {"facilities", facilities},
           {"placed", placed},
           {"greedy", greedy},
           {"greedy_total", snap.greedy.total_cost},
           {"opt_assignment", snap.opt.assignment},
           {"opt_costs", snap.opt.costs},
           {"opt_total", snap.opt.total_cost},
           {"capacity_left", left}};
  out["ratio"] = number_to_json(snap.ratio);
  if (snap.last_step) {
    out["last_step"] = Json{{"customer", snap.last_step->customer},
                            {"facility", snap.last_step->facility},
                            {"cost", snap.last_step->cost}};
  } else {
    out["last_step"] = nullptr;
  }
  return out;
}

SessionStore::SessionStore(std::chrono::seconds idle_ttl, Clock clock)
    : idle_ttl_(idle_ttl), clock_(std::move(clock)) {}

std::string SessionStore::fresh_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream id;
  id << std::hex << std::setfill('0') << std::setw(16) << rng() << std::setw(8) << (++counter_ & 0xffffffffULL);
  return id.str();
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) {
  std::shared_lock lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::kNotFound, "no session '" + id + "'");
  return it->second;
}

SessionSnapshot SessionStore::create(SessionConfig config) {
  validate_config(config);
  auto session = std::make_shared<Session>();
  session->config = std::move(config);
  session->last_access = clock_();
  std::unique_lock lock(mutex_);
  const std::string id = fresh_id();
  session->snapshot = derive(id, session->config, session->placed);
  sessions_.emplace(id, session);
  return session->snapshot;
}

SessionSnapshot SessionStore::get(const std::string& id) {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  session->last_access = clock_();
  return session->snapshot;
}

SessionSnapshot SessionStore::place(const std::string& id, double s) {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  session->last_access = clock_();
  const SessionConfig& config = session->config;
  if (!in_range(config.shape, config.metric, BoundaryPoint{s})) {
    throw Error(ErrorCode::kOutOfRange, "s = " + std::to_string(s) + " is outside [0, " +
                                            std::to_string(boundary_length(config.shape, config.metric)) + ")");
  }
  if (static_cast<int>(session->placed.size()) >= total_capacity(config.capacities)) {
    throw Error(ErrorCode::kCapacityExhausted, "every facility is full");
  }
  std::vector<BoundaryPoint> next = session->placed;
  next.push_back(BoundaryPoint{s});
  session->snapshot = derive(id, config, next);
  session->placed = std::move(next);
  return session->snapshot;
}

SessionSnapshot SessionStore::undo(const std::string& id) {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  session->last_access = clock_();
  if (session->placed.empty()) throw Error(ErrorCode::kEmptySession, "nothing to undo");
  session->placed.pop_back();
  session->snapshot = derive(id, session->config, session->placed);
  return session->snapshot;
}

SessionSnapshot SessionStore::reset(const std::string& id) {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  session->last_access = clock_();
  session->placed.clear();
  session->snapshot = derive(id, session->config, session->placed);
  return session->snapshot;
}

void SessionStore::remove(const std::string& id) {
  std::unique_lock lock(mutex_);
  if (sessions_.erase(id) == 0) throw Error(ErrorCode::kNotFound, "no session '" + id + "'");
}

Scenario SessionStore::export_scenario(const std::string& id) {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  session->last_access = clock_();
  Scenario sc;
  sc.name = "session-" + id;
  sc.shape = session->config.shape;
  sc.metric = session->config.metric;
  sc.capacities = session->config.capacities;
  sc.arrivals = session->placed;
  return sc;
}

bool SessionStore::audit(const std::string& id) {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  Scenario sc;
  sc.shape = session->config.shape;
  sc.metric = session->config.metric;
  sc.capacities = session->config.capacities;
  sc.arrivals = session->placed;
  return run_greedy(sc) == session->snapshot.greedy && session->snapshot.placed == session->placed;
}

std::size_t SessionStore::purge_expired() {
  const auto now = clock_();
  std::unique_lock lock(mutex_);
  std::size_t removed = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    std::unique_lock session_lock(it->second->mutex, std::try_to_lock);
    // A session busy with a request is in use, not idle.
    if (session_lock.owns_lock() && now - it->second->last_access > idle_ttl_) {
      session_lock.unlock();
      it = sessions_.erase(it);
      ++removed;
    } else {
      ++it;
    }
  }
  return removed;
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

void mount_routes(httplib::Server& server, SessionStore& store, const std::string& static_dir) {
  const std::string session_path = R"(/api/sessions/([0-9a-f]+))";

  server.Post("/api/sessions", guarded(store, [&store](const httplib::Request& req, httplib::Response& res) {
                reply(res, 201, to_json(store.create(session_config_from_json(parse_body(req)))));
              }));
  server.Get(session_path, guarded(store, [&store](const httplib::Request& req, httplib::Response& res) {
               reply(res, 200, to_json(store.get(req.matches[1])));
             }));
  server.Delete(session_path, guarded(store, [&store](const httplib::Request& req, httplib::Response& res) {
                  store.remove(req.matches[1]);
                  res.status = 204;
                }));
  server.Post(session_path + "/customers",
              guarded(store, [&store](const httplib::Request& req, httplib::Response& res) {
                const Json body = parse_body(req);
                if (!body.is_object() || !body.contains("s") || !body["s"].is_number() || body.size() != 1) {
                  throw Error(ErrorCode::kSchema, "expected {\"s\": number}");
                }
                reply(res, 200, to_json(store.place(req.matches[1], body["s"].get<double>())));
              }));
  server.Post(session_path + "/undo", guarded(store, [&store](const httplib::Request& req, httplib::Response& res) {
                reply(res, 200, to_json(store.undo(req.matches[1])));
              }));
  server.Post(session_path + "/reset", guarded(store, [&store](const httplib::Request& req, httplib::Response& res) {
                reply(res, 200, to_json(store.reset(req.matches[1])));
              }));
  server.Get(session_path + "/export", guarded(store, [&store](const httplib::Request& req, httplib::Response& res) {
               reply(res, 200, to_json(store.export_scenario(req.matches[1])));
             }));
#ifndef NDEBUG
  server.Get(session_path + "/audit", guarded(store, [&store](const httplib::Request& req, httplib::Response& res) {
               reply(res, 200, Json{{"consistent", store.audit(req.matches[1])}});
             }));
#endif
  server.Get("/api/cases", guarded(store, [](const httplib::Request&, httplib::Response& res) {
               reply(res, 200, Json(preset_case_specs()));
             }));
  server.Get(R"(/api/cases/(.+))", guarded(store, [](const httplib::Request& req, httplib::Response& res) {
               reply(res, 200, to_json(build(parse_case_spec(req.matches[1].str()))));
             }));

  if (!static_dir.empty() && std::filesystem::is_directory(static_dir)) {
    server.set_mount_point("/", static_dir);
  }
}

int serve(const std::string& host, int port, const std::string& static_dir, std::ostream& log) {
  httplib::Server server;
  SessionStore store;
  mount_routes(server, store, static_dir);
  if (!server.bind_to_port(host, port)) {
    log << "cannot bind " << host << ":" << port << "\n";
    return 1;
  }
  log << "serving on http://" << host << ":" << port << "\n" << std::flush;
  return server.listen_after_bind() ? 0 : 1;
}

}  // namespace polyassign
