#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "polyassign/engine.hpp"
#include "polyassign/opt.hpp"
#include "polyassign/report.hpp"
#include "polyassign/scenario.hpp"

namespace httplib {
class Server;
}

namespace polyassign {

struct SessionConfig {
  std::string base_name = "custom";
  Shape shape = Shape::triangle(1.0);
  Metric metric = Metric::kCycle;
  std::vector<int> capacities;

  friend bool operator==(const SessionConfig&, const SessionConfig&) = default;
};

// Accepts {"case": "<case-spec>"} or {"shape": {...}, "metric": ..., "capacities"?: [...]}.
SessionConfig session_config_from_json(const Json& doc);

// Everything a client renders, re-derived from the placed arrivals on every
// request.
struct SessionSnapshot {
  std::string id;
  SessionConfig config;
  std::vector<BoundaryPoint> placed;
  AssignmentRecord greedy;
  OptResult opt;
  double ratio = 1.0;  // 0/0 counts as 1, so an empty session reports 1
  std::optional<Assignment> last_step;
  std::vector<int> residual;

  friend bool operator==(const SessionSnapshot&, const SessionSnapshot&) = default;
};

Json to_json(const SessionSnapshot& snapshot);

// In-memory adversary sessions. Sessions are independent; mutations of one
// session are serialized, reads see a consistent state. Idle sessions expire
// after `idle_ttl`.
class SessionStore {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  explicit SessionStore(std::chrono::seconds idle_ttl = std::chrono::hours(1),
                        Clock clock = [] { return std::chrono::steady_clock::now(); });

  SessionSnapshot create(SessionConfig config);
  SessionSnapshot get(const std::string& id);
  SessionSnapshot place(const std::string& id, double s);
  SessionSnapshot undo(const std::string& id);
  SessionSnapshot reset(const std::string& id);
  void remove(const std::string& id);
  Scenario export_scenario(const std::string& id);

  // True when the stored derivation matches a fresh greedy run on the arrivals.
  bool audit(const std::string& id);

  std::size_t purge_expired();
  std::size_t size() const;

 private:
  struct Session {
    std::mutex mutex;
    SessionConfig config;
    std::vector<BoundaryPoint> placed;
    SessionSnapshot snapshot;
    std::chrono::steady_clock::time_point last_access;
  };

  std::shared_ptr<Session> find(const std::string& id);
  std::string fresh_id();

  std::chrono::seconds idle_ttl_;
  Clock clock_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t counter_ = 0;
};

// Registers the JSON API and, when `static_dir` exists, serves it at "/".
void mount_routes(httplib::Server& server, SessionStore& store, const std::string& static_dir);

// Blocks serving HTTP until the process is stopped. Returns non-zero if the
// socket cannot be bound.
int serve(const std::string& host, int port, const std::string& static_dir, std::ostream& log);

}  // namespace polyassign
