#pragma once

#include <atomic>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include <json.hpp>

#include "atlas/events.hpp"
#include "atlas/run.hpp"

namespace httplib {
class Server;
}

namespace atlas {

struct ServiceConfig {
  RunConfig run;
  std::filesystem::path data_dir = default_data_dir();
  /// Simulated seconds per wall second; 0 runs as fast as possible and
  /// only ticks while a task is active.
  double speed = 1.0;
};

/// Resolves "home" to <data_dir>/scenarios/home.scenario; paths pass through.
std::filesystem::path resolve_scenario(const std::filesystem::path& data_dir, const std::string& name);

/// HTTP front end over one simulation. A single worker thread owns the
/// tick loop; handlers talk to it through a prompt queue and read
/// snapshots it publishes.
class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds and starts serving in the background. Returns the bound port.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  void stop();

  // Operations behind the endpoints, usable without HTTP.
  std::uint64_t submit(const std::string& text);
  std::optional<nlohmann::json> task(std::uint64_t id) const;
  nlohmann::json kb_snapshot() const;
  nlohmann::json world_snapshot() const;
  nlohmann::json metrics_since(double t) const;
  /// Returns false when a task is active or queued.
  bool reset(const std::optional<std::string>& scenario, const std::optional<std::uint64_t>& seed);
  /// Blocks until every submitted task has finished.
  bool wait_idle(std::chrono::milliseconds timeout) const;
  const EventBus& events() const { return bus_; }

 private:
  struct TaskRecord {
    std::string prompt;
    std::string status;  // queued, running, done
    std::optional<nlohmann::json> result;
  };

  void build_simulation();
  void publish_snapshot();
  void worker_loop();
  void setup_routes();

  ServiceConfig config_;
  std::unique_ptr<Simulation> sim_;
  std::mutex sim_mutex_;

  mutable std::mutex state_mutex_;
  mutable std::condition_variable state_cv_;
  std::deque<std::uint64_t> queue_;
  std::map<std::uint64_t, TaskRecord> tasks_;
  std::uint64_t next_task_id_ = 1;
  bool active_ = false;
  nlohmann::json world_json_;
  nlohmann::json kb_json_;
  std::vector<nlohmann::json> metrics_;
  std::uint64_t next_event_seq_ = 1;

  EventBus bus_;
  std::atomic<bool> running_{false};
  std::thread worker_;
  std::thread http_thread_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace atlas
