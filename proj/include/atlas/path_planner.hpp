#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "atlas/grid.hpp"
#include "atlas/pose.hpp"
#include "atlas/world.hpp"

namespace atlas {

struct Path {
  std::vector<Cell> cells;
  double length_m = 0.0;
};

enum class PlanStatus { Ok, Unreachable, StartOccupied, GoalOccupied };
std::string_view to_string(PlanStatus s);

struct PathResult {
  PlanStatus status = PlanStatus::Unreachable;
  Path path;
  bool ok() const { return status == PlanStatus::Ok; }
};

/// A* over an 8-connected grid with octile heuristic. Diagonal moves
/// require both orthogonal neighbours to be free.
PathResult plan_path(const OccupancyGrid& grid, const Pose& start, const Pose& goal);

struct PathQuery {
  const OccupancyGrid* grid = nullptr;
  Pose start;
  Pose goal;
};

/// plan_path over many independent queries, OpenMP-parallel.
std::vector<PathResult> plan_paths(std::span<const PathQuery> queries);
std::vector<PathResult> plan_paths_serial(std::span<const PathQuery> queries);

struct NavigationConfig {
  double arrival_tolerance = 0.15;
  std::size_t step_budget = 10'000;
  double robot_radius = 0.18;
  double max_linear = 0.5;   // m/s
  double max_angular = 2.0;  // rad/s
  double dt = 1.0 / 16.0;
  int spin_steps = 12;
};

enum class NavStatus { Reached, Unreachable, StartOccupied, GoalOccupied, BudgetExhausted };
std::string_view to_string(NavStatus s);

struct NavigationOutcome {
  bool reached = false;
  NavStatus status = NavStatus::Unreachable;
  std::vector<Pose> trajectory;
  double elapsed_sim_s = 0.0;
};

/// Called at every tick boundary before the motion step is applied.
using TickHook = std::function<void(World&)>;

/// Follows planned paths on an inflated copy of the world grid.
class Navigator {
 public:
  Navigator(const OccupancyGrid& raw, NavigationConfig cfg = {});

  const NavigationConfig& config() const { return cfg_; }
  const OccupancyGrid& inflated() const { return inflated_; }

  NavigationOutcome navigate_to(World& world, const Pose& goal, const TickHook& hook = {}) const;

  /// Full rotation in `steps` increments, sensing at each heading.
  /// One Detection per class, nearest range kept.
  std::vector<Detection> spin_scan(World& world, int steps, const DetectorConfig& detector,
                                   const TickHook& hook = {}) const;

  /// Rotates in place to `heading` at bounded angular speed.
  /// Returns the number of ticks used.
  std::size_t turn_to(World& world, double heading, const TickHook& hook,
                      std::vector<Pose>* trajectory = nullptr) const;

 private:
  OccupancyGrid planning_grid(const World& world, const Pose& goal) const;
  bool drive_to(World& world, double x, double y, const TickHook& hook,
                std::vector<Pose>& trajectory, std::size_t& ticks) const;

  OccupancyGrid inflated_;
  NavigationConfig cfg_;
};

NavigationOutcome navigate_to(World& world, const Pose& goal, const NavigationConfig& cfg = {},
                              const TickHook& hook = {});
std::vector<Detection> spin_scan(World& world, int steps, const DetectorConfig& detector,
                                 const NavigationConfig& cfg = {}, const TickHook& hook = {});

}  // namespace atlas
