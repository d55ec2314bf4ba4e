#include "atlas/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "atlas/vocabulary.hpp"

namespace atlas {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double detection_coin(std::uint64_t seed, std::uint64_t tick, std::size_t index) {
  const auto h = splitmix64(splitmix64(splitmix64(seed) ^ tick) ^ index);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace

std::optional<std::string> World::room_at(double x, double y) const {
  for (const auto& r : rooms) {
    if (r.rect.contains(x, y)) return r.name;
  }
  return std::nullopt;
}

DetectorConfig DetectorConfig::defaults() {
  DetectorConfig cfg;
  for (auto c : detector_classes()) cfg.allowlist.emplace(c);
  return cfg;
}

void DetectorConfig::validate() const {
  if (!(fov_degrees > 0.0 && fov_degrees <= 360.0)) {
    throw std::invalid_argument("fov_degrees must be in (0, 360]");
  }
  if (!(max_range > 0.0)) throw std::invalid_argument("max_range must be positive");
  if (!(detection_probability >= 0.0 && detection_probability <= 1.0)) {
    throw std::invalid_argument("detection_probability must be in [0, 1]");
  }
}

void step_robot(World& world, const VelocityCommand& cmd, double dt) {
  auto& pose = world.robot.pose;
  const double heading_mid = pose.theta + 0.5 * cmd.angular * dt;
  const double nx = pose.x + cmd.linear * dt * std::cos(heading_mid);
  const double ny = pose.y + cmd.linear * dt * std::sin(heading_mid);
  const bool moved = nx != pose.x || ny != pose.y;
  if (!moved || line_of_sight(world.grid, pose.x, pose.y, nx, ny)) {
    pose.x = nx;
    pose.y = ny;
  }
  pose.theta = normalize_angle(pose.theta + cmd.angular * dt);
  if (world.robot.held_object) world.objects[*world.robot.held_object].pose = pose;
  world.clock += dt;
  ++world.tick;
}

std::vector<Detection> sense(const World& world, const DetectorConfig& cfg) {
  std::vector<Detection> out;
  const auto& robot = world.robot.pose;
  const double half_fov = cfg.fov_degrees * std::numbers::pi / 360.0;
  for (std::size_t i = 0; i < world.objects.size(); ++i) {
    const auto& obj = world.objects[i];
    if (obj.carried) continue;
    if (cfg.allowlist.find(obj.class_name) == cfg.allowlist.end()) continue;
    const double dx = obj.pose.x - robot.x;
    const double dy = obj.pose.y - robot.y;
    const double range = std::hypot(dx, dy);
    if (!(range > 0.0) || range > cfg.max_range) continue;
    const double bearing = normalize_angle(std::atan2(dy, dx) - robot.theta);
    if (std::abs(bearing) > half_fov) continue;
    if (!line_of_sight(world.grid, robot.x, robot.y, obj.pose.x, obj.pose.y)) continue;
    if (cfg.detection_probability < 1.0 &&
        detection_coin(world.rng_seed, world.tick, i) >= cfg.detection_probability) {
      continue;
    }
    out.push_back({obj.class_name, range, bearing, 1.0});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Detection& a, const Detection& b) { return a.range < b.range; });
  return out;
}

std::string_view to_string(ArmAction a) { return a == ArmAction::Grab ? "grab" : "drop"; }

std::string_view to_string(ArmStatus s) {
  switch (s) {
    case ArmStatus::Ok: return "ok";
    case ArmStatus::OutOfReach: return "out_of_reach";
    case ArmStatus::NotHolding: return "not_holding";
  }
  return "?";
}

ArmEvent arm_action(World& world, ArmAction action, std::string_view target,
                    const Pose& reference, double grab_radius) {
  auto& robot = world.robot;
  ArmEvent ev{action, std::string(target), ArmStatus::Ok, robot.pose};

  if (action == ArmAction::Drop) {
    if (!robot.held_object) {
      ev.status = ArmStatus::NotHolding;
      return ev;
    }
    auto& obj = world.objects[*robot.held_object];
    obj.carried = false;
    obj.pose = robot.pose;
    ev.target = obj.class_name;
    robot.holding.reset();
    robot.held_object.reset();
    return ev;
  }

  if (robot.held_object || distance(robot.pose, reference) > grab_radius) {
    ev.status = ArmStatus::OutOfReach;
    return ev;
  }
  std::optional<std::size_t> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < world.objects.size(); ++i) {
    const auto& obj = world.objects[i];
    if (obj.carried || obj.class_name != target) continue;
    const double d = distance(obj.pose, robot.pose);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  if (!best) {
    ev.status = ArmStatus::OutOfReach;
    return ev;
  }
  auto& obj = world.objects[*best];
  obj.carried = true;
  obj.pose = robot.pose;
  robot.holding = obj.class_name;
  robot.held_object = *best;
  return ev;
}

}  // namespace atlas
