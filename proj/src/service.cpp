#include "atlas/service.hpp"

#include <chrono>

#include <httplib.h>

#include "atlas/serialization.hpp"

namespace atlas {

namespace {

void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"error", message}});
}

}  // namespace

std::filesystem::path resolve_scenario(const std::filesystem::path& data_dir, const std::string& name) {
  const std::filesystem::path direct(name);
  if (std::filesystem::exists(direct)) return direct;
  return data_dir / "scenarios" / (name + ".scenario");
}

Service::Service(ServiceConfig config) : config_(std::move(config)) {
  config_.run.validate();
  build_simulation();
}

Service::~Service() { stop(); }

void Service::build_simulation() {
  sim_ = std::make_unique<Simulation>(load_scenario_file(config_.run.scenario_path, config_.run.seed),
                                      config_.run.make_planner(), config_.run.simulation_options());
  sim_->set_event_sink([this](const Event& e) {
    Event out = e;
    {
      std::scoped_lock lock(state_mutex_);
      out.seq = next_event_seq_++;
      if (e.type == "metrics_sample") {
        metrics_.push_back({{"t", e.payload.at("t")},
                            {"power_w", e.payload.at("power_w")},
                            {"ram_pct", e.payload.at("ram_pct")},
                            {"swap_pct", e.payload.at("swap_pct")}});
      }
    }
    // Snapshots refresh before the event becomes visible to subscribers.
    if (e.type == "kb_update" || e.type == "subtask_finished" || e.type == "task_finished") {
      publish_snapshot();
    }
    bus_.publish(std::move(out));
  });
  const double dt = config_.run.simulation_options().executor.nav.dt;
  sim_->set_tick_observer([this, dt](const Simulation&) {
    publish_snapshot();
    if (config_.speed > 0.0) {
      std::this_thread::sleep_for(std::chrono::duration<double>(dt / config_.speed));
    }
  });
  publish_snapshot();
}

void Service::publish_snapshot() {
  auto world = world_to_json(sim_->world());
  auto kb = kb_to_json(sim_->kb());
  std::scoped_lock lock(state_mutex_);
  world_json_ = std::move(world);
  kb_json_ = std::move(kb);
}

std::uint64_t Service::submit(const std::string& text) {
  std::uint64_t id;
  {
    std::scoped_lock lock(state_mutex_);
    id = next_task_id_++;
    tasks_[id] = {text, "queued", std::nullopt};
    queue_.push_back(id);
  }
  state_cv_.notify_all();
  return id;
}

std::optional<nlohmann::json> Service::task(std::uint64_t id) const {
  std::scoped_lock lock(state_mutex_);
  auto it = tasks_.find(id);
  if (it == tasks_.end()) return std::nullopt;
  nlohmann::json j = it->second.result ? *it->second.result : nlohmann::json::object();
  j["task_id"] = id;
  j["status"] = it->second.status;
  j["prompt"] = it->second.prompt;
  return j;
}

nlohmann::json Service::kb_snapshot() const {
  std::scoped_lock lock(state_mutex_);
  return kb_json_;
}

nlohmann::json Service::world_snapshot() const {
  std::scoped_lock lock(state_mutex_);
  return world_json_;
}

nlohmann::json Service::metrics_since(double t) const {
  std::scoped_lock lock(state_mutex_);
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& m : metrics_) {
    if (m.at("t").get<double>() > t) arr.push_back(m);
  }
  return arr;
}

bool Service::reset(const std::optional<std::string>& scenario, const std::optional<std::uint64_t>& seed) {
  {
    std::scoped_lock lock(state_mutex_);
    if (active_ || !queue_.empty()) return false;
  }
  std::scoped_lock sim_lock(sim_mutex_);
  if (scenario) config_.run.scenario_path = resolve_scenario(config_.data_dir, *scenario);
  if (seed) config_.run.seed = *seed;
  {
    std::scoped_lock lock(state_mutex_);
    metrics_.clear();
  }
  build_simulation();
  Event e;
  e.type = "reset";
  e.payload = {{"scenario", sim_->world().name}, {"seed", config_.run.seed}};
  {
    std::scoped_lock lock(state_mutex_);
    e.seq = next_event_seq_++;
  }
  bus_.publish(std::move(e));
  return true;
}

bool Service::wait_idle(std::chrono::milliseconds timeout) const {
  std::unique_lock lock(state_mutex_);
  return state_cv_.wait_for(lock, timeout, [&] { return !active_ && queue_.empty(); });
}

void Service::worker_loop() {
  while (running_) {
    std::optional<std::uint64_t> id;
    std::string prompt;
    {
      std::unique_lock lock(state_mutex_);
      if (queue_.empty() && config_.speed <= 0.0) {
        state_cv_.wait_for(lock, std::chrono::milliseconds(100));
      }
      if (!queue_.empty()) {
        id = queue_.front();
        queue_.pop_front();
        active_ = true;
        tasks_[*id].status = "running";
        prompt = tasks_[*id].prompt;
      }
    }
    std::scoped_lock sim_lock(sim_mutex_);
    if (id) {
      auto result = to_json(sim_->run_task(prompt));
      result["id"] = *id;
      {
        std::scoped_lock lock(state_mutex_);
        tasks_[*id].status = "done";
        tasks_[*id].result = std::move(result);
        active_ = false;
      }
      state_cv_.notify_all();
    } else if (config_.speed > 0.0) {
      sim_->idle(sim_->options().executor.nav.dt);
    }
  }
}

void Service::setup_routes() {
  auto& srv = *server_;
  srv.Post("/api/prompt", [this](const httplib::Request& req, httplib::Response& res) {
    nlohmann::json body;
    try {
      body = nlohmann::json::parse(req.body);
    } catch (const nlohmann::json::exception&) {
      return send_error(res, 400, "body must be JSON");
    }
    if (!body.is_object() || !body.contains("text") || !body["text"].is_string() ||
        body["text"].get<std::string>().find_first_not_of(" \t\r\n") == std::string::npos) {
      return send_error(res, 400, "body must be {\"text\": <non-empty string>}");
    }
    send_json(res, 202, {{"task_id", submit(body["text"].get<std::string>())}});
  });

  srv.Get(R"(/api/tasks/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    std::uint64_t id = 0;
    try {
      std::size_t used = 0;
      id = std::stoull(req.matches[1].str(), &used);
      if (used != req.matches[1].str().size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      return send_error(res, 404, "unknown task");
    }
    auto t = task(id);
    if (!t) return send_error(res, 404, "unknown task");
    send_json(res, 200, *t);
  });

  srv.Get("/api/kb", [this](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, kb_snapshot());
  });

  srv.Get("/api/world", [this](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, world_snapshot());
  });

  srv.Get("/api/metrics", [this](const httplib::Request& req, httplib::Response& res) {
    double since = -1.0;
    if (req.has_param("since")) {
      try {
        since = std::stod(req.get_param_value("since"));
      } catch (const std::exception&) {
        return send_error(res, 400, "since must be a number");
      }
    }
    send_json(res, 200, metrics_since(since));
  });

  srv.Post("/api/reset", [this](const httplib::Request& req, httplib::Response& res) {
    std::optional<std::string> scenario;
    std::optional<std::uint64_t> seed;
    if (!req.body.empty()) {
      try {
        const auto body = nlohmann::json::parse(req.body);
        if (!body.is_object()) throw std::invalid_argument("object expected");
        if (body.contains("scenario")) scenario = body.at("scenario").get<std::string>();
        if (body.contains("seed")) seed = body.at("seed").get<std::uint64_t>();
      } catch (const std::exception&) {
        return send_error(res, 400, "body must be {\"scenario\"?: string, \"seed\"?: integer}");
      }
    }
    if (scenario && !std::filesystem::exists(resolve_scenario(config_.data_dir, *scenario))) {
      return send_error(res, 400, "unknown scenario");
    }
    try {
      if (!reset(scenario, seed)) return send_error(res, 409, "a task is active");
    } catch (const std::exception& e) {
      return send_error(res, 400, e.what());
    }
    send_json(res, 200, {{"scenario", world_snapshot().at("name")}, {"seed", config_.run.seed}});
  });

  srv.Get("/api/events", [this](const httplib::Request& req, httplib::Response& res) {
    std::uint64_t after = 0;
    std::size_t limit = 0;
    try {
      if (req.has_param("since")) after = std::stoull(req.get_param_value("since"));
      if (req.has_header("Last-Event-ID")) after = std::stoull(req.get_header_value("Last-Event-ID"));
      if (req.has_param("limit")) limit = std::stoull(req.get_param_value("limit"));
    } catch (const std::exception&) {
      return send_error(res, 400, "since, limit and Last-Event-ID must be integers");
    }
    auto cursor = std::make_shared<std::uint64_t>(after);
    auto sent = std::make_shared<std::size_t>(0);
    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider(
        "text/event-stream", [this, cursor, sent, limit](std::size_t, httplib::DataSink& sink) {
          if (!running_) {
            sink.done();
            return true;
          }
          for (const auto& e : bus_.wait_since(*cursor, std::chrono::milliseconds(250))) {
            const auto msg = "id: " + std::to_string(e.seq) + "\nevent: " + e.type +
                             "\ndata: " + to_json(e).dump() + "\n\n";
            if (!sink.write(msg.data(), msg.size())) return false;
            *cursor = e.seq;
            if (limit && ++*sent >= limit) {
              sink.done();
              return true;
            }
          }
          return true;
        });
  });
}

int Service::start(const std::string& host, int port) {
  server_ = std::make_unique<httplib::Server>();
  setup_routes();
  const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  running_ = true;
  worker_ = std::thread([this] { worker_loop(); });
  http_thread_ = std::thread([this] { server_->listen_after_bind(); });
  return bound;
}

void Service::stop() {
  if (!running_.exchange(false)) return;
  state_cv_.notify_all();
  bus_.notify_all();
  if (server_) server_->stop();
  if (http_thread_.joinable()) http_thread_.join();
  if (worker_.joinable()) worker_.join();
}

}  // namespace atlas
