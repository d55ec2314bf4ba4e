#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

namespace atlas {

/// One entry of the executor/scheduler event stream.
struct Event {
  std::uint64_t seq = 0;
  std::string type;
  double t = 0.0;
  nlohmann::json payload;
};

nlohmann::json to_json(const Event& e);

using EventSink = std::function<void(const Event&)>;

/// Append-only event history with blocking reads for stream subscribers.
class EventBus {
 public:
  void publish(Event e);
  /// Events with seq > after.
  std::vector<Event> since(std::uint64_t after) const;
  /// Blocks until an event with seq > after exists or the timeout passes.
  std::vector<Event> wait_since(std::uint64_t after, std::chrono::milliseconds timeout) const;
  std::uint64_t last_seq() const;
  void clear();
  /// Wakes blocked readers, e.g. on shutdown.
  void notify_all() const { cv_.notify_all(); }

 private:
  mutable std::mutex mutex_;
  mutable std::condition_variable cv_;
  std::vector<Event> events_;
};

}  // namespace atlas
