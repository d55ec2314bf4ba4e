#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "atlas/grid.hpp"
#include "atlas/pose.hpp"

namespace atlas {

struct Room {
  std::string name;
  Rect rect;
};

struct WorldObject {
  std::string class_name;
  Pose pose;
  bool carried = false;
};

struct RobotState {
  Pose pose;
  std::optional<std::string> holding;
  std::optional<std::size_t> held_object;  // index into World::objects
};

/// Simulation ground truth. Only the tick loop mutates it.
struct World {
  std::string name;
  OccupancyGrid grid;
  std::vector<Room> rooms;
  std::vector<WorldObject> objects;
  RobotState robot;
  double clock = 0.0;
  std::uint64_t tick = 0;
  std::uint64_t rng_seed = 0;

  /// Room containing (x, y), if any.
  std::optional<std::string> room_at(double x, double y) const;
};

struct DetectorConfig {
  double fov_degrees = 60.0;
  double max_range = 2.5;
  std::set<std::string, std::less<>> allowlist;
  double detection_probability = 1.0;

  /// Allowlist = the full detector vocabulary.
  static DetectorConfig defaults();
  void validate() const;
};

struct Detection {
  std::string class_name;
  double range = 0.0;
  double bearing = 0.0;
  double confidence = 1.0;

  friend bool operator==(const Detection&, const Detection&) = default;
};

struct VelocityCommand {
  double linear = 0.0;   // m/s
  double angular = 0.0;  // rad/s
};

/// Unicycle integration over dt. Translation is dropped when the swept
/// segment touches an occupied cell; rotation always applies. The clock
/// advances by dt and a carried object follows the robot.
void step_robot(World& world, const VelocityCommand& cmd, double dt);

/// Objects visible from the current robot pose, nearest first. The
/// detection coin is keyed on (rng_seed, tick, object index).
std::vector<Detection> sense(const World& world, const DetectorConfig& cfg);

enum class ArmAction { Grab, Drop };
enum class ArmStatus { Ok, OutOfReach, NotHolding };

std::string_view to_string(ArmAction a);
std::string_view to_string(ArmStatus s);

struct ArmEvent {
  ArmAction action = ArmAction::Grab;
  std::string target;
  ArmStatus status = ArmStatus::Ok;
  Pose at;
};

/// Grab requires the robot within grab_radius of `reference` (the KB pose
/// used for the target) and an uncarried instance of the class; the nearest
/// one is taken. Drop places the held object at the robot pose.
ArmEvent arm_action(World& world, ArmAction action, std::string_view target,
                    const Pose& reference, double grab_radius = 0.5);

}  // namespace atlas
