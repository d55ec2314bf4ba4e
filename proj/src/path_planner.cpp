#include "atlas/path_planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <queue>

namespace atlas {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

struct Move {
  int dc, dr;
  double cost;
};

constexpr Move kMoves[8] = {
    {1, 0, 1.0},     {-1, 0, 1.0},     {0, 1, 1.0},      {0, -1, 1.0},
    {1, 1, kSqrt2},  {1, -1, kSqrt2},  {-1, 1, kSqrt2},  {-1, -1, kSqrt2},
};

double octile(Cell a, Cell b) {
  const double dx = std::abs(a.col - b.col);
  const double dy = std::abs(a.row - b.row);
  return dx + dy + (kSqrt2 - 2.0) * std::min(dx, dy);
}

}  // namespace

std::string_view to_string(PlanStatus s) {
  switch (s) {
    case PlanStatus::Ok: return "ok";
    case PlanStatus::Unreachable: return "unreachable";
    case PlanStatus::StartOccupied: return "start_occupied";
    case PlanStatus::GoalOccupied: return "goal_occupied";
  }
  return "?";
}

std::string_view to_string(NavStatus s) {
  switch (s) {
    case NavStatus::Reached: return "reached";
    case NavStatus::Unreachable: return "unreachable";
    case NavStatus::StartOccupied: return "start_occupied";
    case NavStatus::GoalOccupied: return "goal_occupied";
    case NavStatus::BudgetExhausted: return "budget_exhausted";
  }
  return "?";
}

PathResult plan_path(const OccupancyGrid& grid, const Pose& start_pose, const Pose& goal_pose) {
  PathResult result;
  const Cell start = grid.cell_of(start_pose.x, start_pose.y);
  const Cell goal = grid.cell_of(goal_pose.x, goal_pose.y);
  if (grid.occupied(start)) {
    result.status = PlanStatus::StartOccupied;
    return result;
  }
  if (grid.occupied(goal)) {
    result.status = PlanStatus::GoalOccupied;
    return result;
  }

  const int w = grid.width();
  const auto n = static_cast<std::size_t>(w) * static_cast<std::size_t>(grid.height());
  auto idx = [w](Cell c) { return static_cast<std::size_t>(c.row) * w + c.col; };
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> g(n, inf);
  std::vector<std::int64_t> parent(n, -1);
  std::vector<std::uint8_t> closed(n, 0);

  struct Node {
    double f, g;
    Cell cell;
  };
  auto worse = [](const Node& a, const Node& b) {
    if (a.f != b.f) return a.f > b.f;
    return a.g < b.g;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);

  g[idx(start)] = 0.0;
  open.push({octile(start, goal), 0.0, start});
  while (!open.empty()) {
    const Node cur = open.top();
    open.pop();
    const auto ci = idx(cur.cell);
    if (closed[ci]) continue;
    closed[ci] = 1;
    if (cur.cell == goal) break;
    for (const auto& m : kMoves) {
      const Cell next{cur.cell.col + m.dc, cur.cell.row + m.dr};
      if (grid.occupied(next)) continue;
      if (m.dc != 0 && m.dr != 0 &&
          (grid.occupied({cur.cell.col + m.dc, cur.cell.row}) ||
           grid.occupied({cur.cell.col, cur.cell.row + m.dr}))) {
        continue;
      }
      const auto ni = idx(next);
      const double tentative = cur.g + m.cost;
      if (closed[ni] || tentative >= g[ni]) continue;
      g[ni] = tentative;
      parent[ni] = static_cast<std::int64_t>(ci);
      open.push({tentative + octile(next, goal), tentative, next});
    }
  }

  if (!closed[idx(goal)]) {
    result.status = PlanStatus::Unreachable;
    return result;
  }
  for (auto i = static_cast<std::int64_t>(idx(goal)); i >= 0; i = parent[i]) {
    result.path.cells.push_back({static_cast<int>(i % w), static_cast<int>(i / w)});
  }
  std::reverse(result.path.cells.begin(), result.path.cells.end());
  result.path.length_m = g[idx(goal)] * grid.resolution();
  result.status = PlanStatus::Ok;
  return result;
}

std::vector<PathResult> plan_paths_serial(std::span<const PathQuery> queries) {
  std::vector<PathResult> out;
  out.reserve(queries.size());
  for (const auto& q : queries) out.push_back(plan_path(*q.grid, q.start, q.goal));
  return out;
}

std::vector<PathResult> plan_paths(std::span<const PathQuery> queries) {
  std::vector<PathResult> out(queries.size());
  const auto count = static_cast<std::int64_t>(queries.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto& q = queries[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = plan_path(*q.grid, q.start, q.goal);
  }
  return out;
}

Navigator::Navigator(const OccupancyGrid& raw, NavigationConfig cfg)
    : inflated_(inflate_obstacles(raw, cfg.robot_radius)), cfg_(cfg) {}

OccupancyGrid Navigator::planning_grid(const World& world, const Pose& goal) const {
  // Start and goal cells stay usable when only inflation blocks them.
  OccupancyGrid g = inflated_;
  for (const Cell c : {world.grid.cell_of(world.robot.pose.x, world.robot.pose.y),
                       world.grid.cell_of(goal.x, goal.y)}) {
    if (world.grid.free(c)) g.set(c, false);
  }
  return g;
}

std::size_t Navigator::turn_to(World& world, double heading, const TickHook& hook,
                               std::vector<Pose>* trajectory) const {
  std::size_t ticks = 0;
  for (;;) {
    const double err = normalize_angle(heading - world.robot.pose.theta);
    if (std::abs(err) < 1e-9) break;
    const double w = std::clamp(err / cfg_.dt, -cfg_.max_angular, cfg_.max_angular);
    if (hook) hook(world);
    step_robot(world, {0.0, w}, cfg_.dt);
    ++ticks;
    if (trajectory) trajectory->push_back(world.robot.pose);
    if (std::abs(err) <= cfg_.max_angular * cfg_.dt) {
      world.robot.pose.theta = normalize_angle(heading);
      break;
    }
  }
  return ticks;
}

bool Navigator::drive_to(World& world, double x, double y, const TickHook& hook,
                         std::vector<Pose>& trajectory, std::size_t& ticks) const {
  for (;;) {
    if (ticks >= cfg_.step_budget) return false;
    auto& pose = world.robot.pose;
    const double dx = x - pose.x;
    const double dy = y - pose.y;
    const double d = std::hypot(dx, dy);
    if (d < 1e-9) return true;
    const double heading = std::atan2(dy, dx);
    if (std::abs(normalize_angle(heading - pose.theta)) > 1e-9) {
      ticks += turn_to(world, heading, hook, &trajectory);
      continue;
    }
    const double v = std::min(cfg_.max_linear, d / cfg_.dt);
    if (hook) hook(world);
    const double before_x = pose.x;
    const double before_y = pose.y;
    step_robot(world, {v, 0.0}, cfg_.dt);
    ++ticks;
    trajectory.push_back(pose);
    if (v == d / cfg_.dt) {
      // Snap the final sub-step onto the waypoint.
      if (pose.x != before_x || pose.y != before_y) {
        pose.x = x;
        pose.y = y;
        if (world.robot.held_object) world.objects[*world.robot.held_object].pose = pose;
        return true;
      }
    }
  }
}

NavigationOutcome Navigator::navigate_to(World& world, const Pose& goal, const TickHook& hook) const {
  NavigationOutcome out;
  const double t0 = world.clock;
  auto finish = [&](NavStatus status) {
    out.status = status;
    out.reached = status == NavStatus::Reached &&
                  distance(world.robot.pose, goal) <= cfg_.arrival_tolerance;
    if (status == NavStatus::Reached && !out.reached) out.status = NavStatus::BudgetExhausted;
    out.elapsed_sim_s = world.clock - t0;
    return out;
  };

  if (world.grid.occupied(world.grid.cell_of(goal.x, goal.y))) return finish(NavStatus::GoalOccupied);

  std::size_t ticks = 0;
  if (distance(world.robot.pose, goal) > cfg_.arrival_tolerance) {
    const auto grid = planning_grid(world, goal);
    const auto planned = plan_path(grid, world.robot.pose, goal);
    switch (planned.status) {
      case PlanStatus::Ok: break;
      case PlanStatus::StartOccupied: return finish(NavStatus::StartOccupied);
      case PlanStatus::GoalOccupied: return finish(NavStatus::GoalOccupied);
      case PlanStatus::Unreachable: return finish(NavStatus::Unreachable);
    }

    // Waypoints: start cell center, every direction change, then the goal.
    const auto& cells = planned.path.cells;
    std::vector<std::pair<double, double>> waypoints;
    auto center = [&](Cell c) {
      double x, y;
      world.grid.cell_center(c, x, y);
      return std::pair{x, y};
    };
    waypoints.push_back(center(cells.front()));
    for (std::size_t i = 1; i + 1 < cells.size(); ++i) {
      const int dc0 = cells[i].col - cells[i - 1].col, dr0 = cells[i].row - cells[i - 1].row;
      const int dc1 = cells[i + 1].col - cells[i].col, dr1 = cells[i + 1].row - cells[i].row;
      if (dc0 != dc1 || dr0 != dr1) waypoints.push_back(center(cells[i]));
    }
    if (cells.size() > 1) waypoints.push_back(center(cells.back()));
    waypoints.emplace_back(goal.x, goal.y);

    for (const auto& [x, y] : waypoints) {
      if (!drive_to(world, x, y, hook, out.trajectory, ticks)) return finish(NavStatus::BudgetExhausted);
    }
  }
  ticks += turn_to(world, goal.theta, hook, &out.trajectory);
  if (ticks > cfg_.step_budget) return finish(NavStatus::BudgetExhausted);
  return finish(NavStatus::Reached);
}

std::vector<Detection> Navigator::spin_scan(World& world, int steps, const DetectorConfig& detector,
                                            const TickHook& hook) const {
  std::map<std::string, Detection, std::less<>> nearest;
  const double increment = 2.0 * std::numbers::pi / std::max(1, steps);
  const double initial = world.robot.pose.theta;
  for (int i = 0; i < std::max(1, steps); ++i) {
    for (auto& d : sense(world, detector)) {
      auto it = nearest.find(d.class_name);
      if (it == nearest.end()) {
        nearest.emplace(d.class_name, d);
      } else if (d.range < it->second.range) {
        it->second = d;
      }
    }
    double remaining = increment;
    while (remaining > 1e-12) {
      const double w = std::min(cfg_.max_angular, remaining / cfg_.dt);
      if (hook) hook(world);
      step_robot(world, {0.0, w}, cfg_.dt);
      remaining -= w * cfg_.dt;
    }
  }
  world.robot.pose.theta = normalize_angle(initial);
  std::vector<Detection> out;
  for (auto& [_, d] : nearest) out.push_back(d);
  std::stable_sort(out.begin(), out.end(),
                   [](const Detection& a, const Detection& b) { return a.range < b.range; });
  return out;
}

NavigationOutcome navigate_to(World& world, const Pose& goal, const NavigationConfig& cfg,
                              const TickHook& hook) {
  return Navigator(world.grid, cfg).navigate_to(world, goal, hook);
}

std::vector<Detection> spin_scan(World& world, int steps, const DetectorConfig& detector,
                                 const NavigationConfig& cfg, const TickHook& hook) {
  return Navigator(world.grid, cfg).spin_scan(world, steps, detector, hook);
}

}  // namespace atlas
