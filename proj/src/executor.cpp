#include "atlas/executor.hpp"

#include <cmath>

namespace atlas {

std::string_view to_string(ExecMode m) { return m == ExecMode::Strict ? "strict" : "lenient"; }
std::string_view to_string(OutcomeStatus s) { return s == OutcomeStatus::Success ? "success" : "failed"; }

std::string_view to_string(FailureReason r) {
  switch (r) {
    case FailureReason::NotInKB: return "not_in_kb";
    case FailureReason::Unreachable: return "unreachable";
    case FailureReason::OutOfReach: return "out_of_reach";
    case FailureReason::NotHolding: return "not_holding";
    case FailureReason::PlanError: return "plan_error";
  }
  return "?";
}

ExecMode exec_mode_from(std::string_view s) {
  if (s == "strict") return ExecMode::Strict;
  if (s == "lenient") return ExecMode::Lenient;
  throw std::invalid_argument("unknown exec mode: " + std::string(s));
}

std::vector<std::string> kb_process_tick(const World& world, KnowledgeBase& kb,
                                         const DetectorConfig&,
                                         const std::vector<Detection>& detections, bool projected) {
  std::vector<std::string> accepted;
  const auto& robot = world.robot.pose;
  for (const auto& d : detections) {
    Pose at = robot;
    if (projected) {
      const double heading = robot.theta + d.bearing;
      at = Pose(robot.x + d.range * std::cos(heading), robot.y + d.range * std::sin(heading), heading);
    }
    if (kb.insert(d.class_name, at, world.clock)) accepted.push_back(d.class_name);
  }
  return accepted;
}

std::vector<std::string> kb_process_tick(const World& world, KnowledgeBase& kb,
                                         const DetectorConfig& detector) {
  return kb_process_tick(world, kb, detector, sense(world, detector));
}

}  // namespace atlas
