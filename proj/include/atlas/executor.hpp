#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atlas/events.hpp"
#include "atlas/grader.hpp"
#include "atlas/knowledge_base.hpp"
#include "atlas/path_planner.hpp"
#include "atlas/plan.hpp"
#include "atlas/planner.hpp"
#include "atlas/scenario.hpp"
#include "atlas/scheduler.hpp"
#include "atlas/world.hpp"

namespace atlas {

enum class ExecMode { Strict, Lenient };
enum class OutcomeStatus { Success, Failed };
enum class FailureReason { NotInKB, Unreachable, OutOfReach, NotHolding, PlanError };

std::string_view to_string(ExecMode m);
std::string_view to_string(OutcomeStatus s);
std::string_view to_string(FailureReason r);
ExecMode exec_mode_from(std::string_view s);

struct SubTaskOutcome {
  SubTask subtask;
  OutcomeStatus status = OutcomeStatus::Success;
  std::optional<FailureReason> reason;
  double elapsed_sim_s = 0.0;
};

struct TaskResult {
  std::uint64_t id = 0;
  std::string prompt;
  std::string raw_plan;
  PlanParse plan;
  PlannerFailure planner_failure = PlannerFailure::None;
  std::optional<FailureReason> failure;  // PlanError when no plan could be executed
  std::vector<SubTaskOutcome> outcomes;
  Score score;
  ExecMode mode = ExecMode::Lenient;
  PlanKind plan_kind = PlanKind::Navigation;
  double planning_latency_s = 0.0;
  double decode_start = 0.0;
  double decode_end = 0.0;
  double started_at = 0.0;
  double finished_at = 0.0;

  double elapsed_sim_s() const { return finished_at - started_at; }
};

struct ExecutorConfig {
  ExecMode mode = ExecMode::Lenient;
  double grab_radius = 0.5;
  bool spin_after_task = true;
  /// Store detections at robot pose + range/bearing instead of robot pose.
  bool projected_detection_pose = false;
  NavigationConfig nav;
};

/// Detector phase of one tick: every detection is written to the KB at the
/// robot's current pose. Returns the names whose write was accepted.
std::vector<std::string> kb_process_tick(const World& world, KnowledgeBase& kb,
                                         const DetectorConfig& detector,
                                         const std::vector<Detection>& detections,
                                         bool projected = false);
std::vector<std::string> kb_process_tick(const World& world, KnowledgeBase& kb,
                                         const DetectorConfig& detector);

struct SimulationOptions {
  KBMode kb_mode = KBMode::Growing;
  Deployment config = Deployment::Onboard;
  ResourceProfile profile;
  double sample_rate_hz = 2.0;
  ExecutorConfig executor;
};

/// The agent loop: a deterministic two-phase tick (detector, then executor)
/// around one world, one knowledge base and one planner. Tasks run one at a
/// time.
class Simulation {
 public:
  Simulation(Scenario scenario, std::shared_ptr<Planner> planner, SimulationOptions options = {});

  /// Plans and executes one prompt; all failures land in the result.
  TaskResult run_task(std::string_view prompt);

  /// Executes an already parsed plan against the KB and world.
  std::vector<SubTaskOutcome> exec_subtasks(const Plan& plan);

  /// Lets simulated time pass with the robot stationary.
  void idle(double seconds);

  const World& world() const { return world_; }
  World& mutable_world() { return world_; }
  const KnowledgeBase& kb() const { return kb_; }
  KnowledgeBase& kb() { return kb_; }
  const DetectorConfig& detector() const { return detector_; }
  const ProcessState& process_state() const { return state_; }
  const MetricsRecorder& metrics() const { return metrics_; }
  const SimulationOptions& options() const { return options_; }
  const Navigator& navigator() const { return navigator_; }
  const std::vector<Event>& events() const { return events_; }

  void set_planner(std::shared_ptr<Planner> planner) { planner_ = std::move(planner); }
  /// Receives every event as it is emitted.
  void set_event_sink(EventSink sink) { sink_ = std::move(sink); }
  /// Runs after each tick's detector phase (pacing, snapshots).
  void set_tick_observer(std::function<void(const Simulation&)> observer) {
    observer_ = std::move(observer);
  }
  void set_exec_mode(ExecMode mode) { options_.executor.mode = mode; }

 private:
  void on_tick(World& world);
  void emit(std::string type, nlohmann::json payload);
  void transition(ProcessEvent event);
  void absorb(const std::vector<Detection>& detections);
  SubTaskOutcome exec_one(const SubTask& s);

  World world_;
  KnowledgeBase kb_;
  DetectorConfig detector_;
  std::shared_ptr<Planner> planner_;
  SimulationOptions options_;
  Navigator navigator_;
  ProcessState state_;
  MetricsRecorder metrics_;
  TickHook hook_;
  EventSink sink_;
  std::function<void(const Simulation&)> observer_;
  std::vector<Event> events_;
  std::vector<std::string> visible_;
  std::uint64_t next_seq_ = 1;
  std::uint64_t next_task_id_ = 1;
};

}  // namespace atlas
