#include <algorithm>
#include <cmath>

#include "atlas/executor.hpp"
#include "atlas/serialization.hpp"

namespace atlas {

void EventBus::publish(Event e) {
  {
    std::scoped_lock lock(mutex_);
    events_.push_back(std::move(e));
  }
  cv_.notify_all();
}

std::vector<Event> EventBus::since(std::uint64_t after) const {
  std::scoped_lock lock(mutex_);
  std::vector<Event> out;
  for (const auto& e : events_) {
    if (e.seq > after) out.push_back(e);
  }
  return out;
}

std::vector<Event> EventBus::wait_since(std::uint64_t after, std::chrono::milliseconds timeout) const {
  std::unique_lock lock(mutex_);
  cv_.wait_for(lock, timeout, [&] { return !events_.empty() && events_.back().seq > after; });
  std::vector<Event> out;
  for (const auto& e : events_) {
    if (e.seq > after) out.push_back(e);
  }
  return out;
}

std::uint64_t EventBus::last_seq() const {
  std::scoped_lock lock(mutex_);
  return events_.empty() ? 0 : events_.back().seq;
}

void EventBus::clear() {
  std::scoped_lock lock(mutex_);
  events_.clear();
}

Simulation::Simulation(Scenario scenario, std::shared_ptr<Planner> planner, SimulationOptions options)
    : world_(std::move(scenario.world)),
      kb_(scenario.landmarks, options.kb_mode),
      detector_(std::move(scenario.detector)),
      planner_(std::move(planner)),
      options_(options),
      navigator_(world_.grid, options.executor.nav),
      state_(ProcessState::initial(options.config)),
      metrics_(options.sample_rate_hz) {
  options_.profile.validate();
  detector_.validate();
  hook_ = [this](World& w) { on_tick(w); };
  transition(ProcessEvent::DetectorStarted);
}

void Simulation::emit(std::string type, nlohmann::json payload) {
  Event e{next_seq_++, std::move(type), world_.clock, std::move(payload)};
  if (sink_) sink_(e);
  events_.push_back(std::move(e));
}

void Simulation::transition(ProcessEvent event) {
  state_ = process_transition(state_, event);
  emit("process_state", {{"event", to_string(event)},
                         {"detector", to_string(state_.detector)},
                         {"llm", to_string(state_.llm)},
                         {"config", to_string(state_.config)}});
}

void Simulation::absorb(const std::vector<Detection>& detections) {
  std::vector<std::string> now_visible;
  for (const auto& d : detections) {
    now_visible.push_back(d.class_name);
    if (std::find(visible_.begin(), visible_.end(), d.class_name) == visible_.end()) {
      auto payload = to_json(d);
      payload["robot"] = to_json(world_.robot.pose);
      emit("detection", std::move(payload));
    }
  }
  visible_ = std::move(now_visible);

  for (const auto& d : detections) {
    const auto before = kb_.entry(d.class_name);
    const auto accepted = kb_process_tick(world_, kb_, detector_, {d},
                                          options_.executor.projected_detection_pose);
    if (accepted.empty()) continue;
    const auto after = kb_.entry(d.class_name);
    if (!before || before->pose != after->pose) {
      auto payload = to_json(*after);
      payload["new"] = !before.has_value();
      emit("kb_update", std::move(payload));
    }
  }
}

void Simulation::on_tick(World& world) {
  // Detector phase; the executor's motion step follows.
  absorb(sense(world, detector_));
  const auto before = metrics_.samples().size();
  metrics_.advance(world.clock, state_, options_.profile);
  for (auto i = before; i < metrics_.samples().size(); ++i) {
    auto payload = to_json(metrics_.samples()[i]);
    payload["robot"] = to_json(world.robot.pose);
    payload["holding"] = world.robot.holding ? json(*world.robot.holding) : json(nullptr);
    emit("metrics_sample", std::move(payload));
  }
  if (observer_) observer_(*this);
}

void Simulation::idle(double seconds) {
  const double dt = options_.executor.nav.dt;
  const auto ticks = static_cast<std::size_t>(std::ceil(seconds / dt - 1e-9));
  for (std::size_t i = 0; i < ticks; ++i) {
    on_tick(world_);
    step_robot(world_, {0.0, 0.0}, dt);
  }
}

SubTaskOutcome Simulation::exec_one(const SubTask& s) {
  const double t0 = world_.clock;
  SubTaskOutcome out{s, OutcomeStatus::Success, std::nullopt, 0.0};
  auto fail = [&](FailureReason r) {
    out.status = OutcomeStatus::Failed;
    out.reason = r;
  };

  switch (s.kind) {
    case Action::Navigate: {
      const auto goal = kb_.lookup(s.target);
      if (!goal) {
        fail(FailureReason::NotInKB);
        break;
      }
      const auto nav = navigator_.navigate_to(world_, *goal, hook_);
      if (!nav.reached) fail(FailureReason::Unreachable);
      break;
    }
    case Action::Grab: {
      const auto at = kb_.lookup(s.target);
      if (!at) {
        fail(FailureReason::NotInKB);
        break;
      }
      if (distance(world_.robot.pose, *at) > options_.executor.grab_radius) {
        const auto nav = navigator_.navigate_to(world_, *at, hook_);
        if (!nav.reached) {
          fail(FailureReason::Unreachable);
          break;
        }
      }
      const auto ev = arm_action(world_, ArmAction::Grab, s.target, *at, options_.executor.grab_radius);
      if (ev.status != ArmStatus::Ok) fail(FailureReason::OutOfReach);
      break;
    }
    case Action::Drop: {
      const auto ev = arm_action(world_, ArmAction::Drop, {}, world_.robot.pose);
      if (ev.status != ArmStatus::Ok) fail(FailureReason::NotHolding);
      break;
    }
  }
  out.elapsed_sim_s = world_.clock - t0;
  return out;
}

std::vector<SubTaskOutcome> Simulation::exec_subtasks(const Plan& plan) {
  std::vector<SubTaskOutcome> outcomes;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const auto& s = plan.subtasks[i];
    emit("subtask_started", {{"index", i}, {"subtask", serialize_subtask(s)}});
    auto out = exec_one(s);
    auto payload = to_json(out);
    payload["index"] = i;
    payload["robot"] = to_json(world_.robot.pose);
    payload["holding"] = world_.robot.holding ? json(*world_.robot.holding) : json(nullptr);
    emit("subtask_finished", std::move(payload));
    const bool failed = out.status == OutcomeStatus::Failed;
    outcomes.push_back(std::move(out));
    if (failed && options_.executor.mode == ExecMode::Strict) break;
  }
  return outcomes;
}

TaskResult Simulation::run_task(std::string_view prompt) {
  TaskResult r;
  r.id = next_task_id_++;
  r.prompt = std::string(prompt);
  r.mode = options_.executor.mode;
  r.started_at = world_.clock;
  emit("task_started", {{"task_id", r.id}, {"prompt", r.prompt}});

  auto finish = [&]() -> TaskResult {
    r.finished_at = world_.clock;
    emit("task_finished", {{"task_id", r.id}, {"result", to_json(r)}});
    return r;
  };

  PlannerRequest request;
  try {
    request = build_prompt(kb_, prompt, planner_ ? planner_->kind() : PlannerKind::Template);
  } catch (const EmptyPromptError&) {
    r.plan = parse_plan("");
    r.failure = FailureReason::PlanError;
    r.score = {0, 1};
    return finish();
  }

  transition(ProcessEvent::PromptReceived);
  r.decode_start = world_.clock;
  PlannerResponse response = planner_ ? planner_->plan(request, options_.profile, options_.config)
                                      : template_plan(request, options_.profile, options_.config);
  idle(response.latency_sim_s);
  transition(ProcessEvent::DecodeFinished);
  r.decode_end = world_.clock;

  r.raw_plan = response.raw_text;
  r.plan = response.plan;
  r.planner_failure = response.failure;
  r.planning_latency_s = response.latency_sim_s;
  r.plan_kind = r.plan.ok() && r.plan.plan.is_manipulation() ? PlanKind::Manipulation
                                                             : PlanKind::Navigation;
  nlohmann::json plan_payload = {{"task_id", r.id},
                                 {"raw_text", r.raw_plan},
                                 {"latency_sim_s", r.planning_latency_s},
                                 {"plan_kind", to_string(r.plan_kind)}};
  plan_payload["plan"] = r.plan.ok() ? to_json(r.plan.plan) : json(nullptr);
  plan_payload["planner_failure"] =
      r.planner_failure == PlannerFailure::None ? json(nullptr) : json(to_string(r.planner_failure));
  emit("plan_generated", std::move(plan_payload));

  if (!response.ok()) {
    r.failure = FailureReason::PlanError;
    r.score = {0, 1};
    return finish();
  }

  r.outcomes = exec_subtasks(r.plan.plan);
  const auto successes = static_cast<std::size_t>(
      std::count_if(r.outcomes.begin(), r.outcomes.end(),
                    [](const SubTaskOutcome& o) { return o.status == OutcomeStatus::Success; }));
  r.score = {successes, r.plan.plan.size()};

  const bool all_ok = successes == r.plan.plan.size();
  if (options_.executor.spin_after_task && (all_ok || r.mode == ExecMode::Lenient)) {
    const auto found = navigator_.spin_scan(world_, options_.executor.nav.spin_steps, detector_, hook_);
    absorb(found);
  }
  return finish();
}

}  // namespace atlas
