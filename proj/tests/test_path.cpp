#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "atlas/path_planner.hpp"
#include "atlas/run.hpp"
#include "atlas/scenario.hpp"
#include "oracles.hpp"

using namespace atlas;

namespace {

Pose center(const OccupancyGrid& g, Cell c) {
  double x, y;
  g.cell_center(c, x, y);
  return Pose(x, y);
}

void expect_valid_path(const OccupancyGrid& g, const Path& p, Cell s, Cell t) {
  ASSERT_FALSE(p.cells.empty());
  EXPECT_EQ(p.cells.front(), s);
  EXPECT_EQ(p.cells.back(), t);
  double cost = 0;
  for (std::size_t i = 0; i < p.cells.size(); ++i) {
    EXPECT_TRUE(g.free(p.cells[i]));
    if (i == 0) continue;
    const int dc = std::abs(p.cells[i].col - p.cells[i - 1].col);
    const int dr = std::abs(p.cells[i].row - p.cells[i - 1].row);
    ASSERT_TRUE(dc <= 1 && dr <= 1 && dc + dr > 0);
    cost += (dc + dr == 2) ? std::sqrt(2.0) : 1.0;
  }
  EXPECT_NEAR(cost * g.resolution(), p.length_m, 1e-9);
}

std::filesystem::path scenario(const char* name) {
  return default_data_dir() / "scenarios" / (std::string(name) + ".scenario");
}

}  // namespace

TEST(PlanPath, StraightLine) {
  OccupancyGrid g(10, 10, 0.05);
  const auto r = plan_path(g, center(g, {0, 0}), center(g, {0, 9}));
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.path.cells.size(), 10u);
  EXPECT_NEAR(r.path.length_m, 9 * 0.05, 1e-12);
}

TEST(PlanPath, DetourMatchesOracle) {
  OccupancyGrid g(10, 10, 1.0);
  for (int r = 0; r < 8; ++r) g.set({5, r}, true);
  const Cell s{0, 0}, t{9, 0};
  const auto res = plan_path(g, center(g, s), center(g, t));
  ASSERT_TRUE(res.ok());
  expect_valid_path(g, res.path, s, t);
  EXPECT_NEAR(res.path.length_m, *oracle::shortest_cost(g, s, t), 1e-9);
}

TEST(PlanPath, EnclosedAndOccupied) {
  OccupancyGrid g(10, 10, 1.0);
  for (int c = 4; c <= 6; ++c)
    for (int r = 4; r <= 6; ++r)
      if (c != 5 || r != 5) g.set({c, r}, true);
  EXPECT_EQ(plan_path(g, center(g, {0, 0}), center(g, {5, 5})).status, PlanStatus::Unreachable);
  EXPECT_EQ(plan_path(g, center(g, {4, 4}), center(g, {0, 0})).status, PlanStatus::StartOccupied);
  EXPECT_EQ(plan_path(g, center(g, {0, 0}), center(g, {4, 4})).status, PlanStatus::GoalOccupied);
}

TEST(PlanPath, NoCornerCutting) {
  OccupancyGrid g(2, 2, 1.0);
  g.set({1, 0}, true);
  g.set({0, 1}, true);
  EXPECT_EQ(plan_path(g, center(g, {0, 0}), center(g, {1, 1})).status, PlanStatus::Unreachable);
}

TEST(PlanPath, RandomGridsAgreeWithOracle) {
  std::mt19937_64 rng(2024);
  int reachable = 0;
  for (int i = 0; i < 200; ++i) {
    auto g = oracle::random_grid(rng, 20, 20, 0.2);
    const Cell s{static_cast<int>(rng() % 20), static_cast<int>(rng() % 20)};
    const Cell t{static_cast<int>(rng() % 20), static_cast<int>(rng() % 20)};
    g.set(s, false);
    g.set(t, false);
    const auto want = oracle::shortest_cost(g, s, t);
    const auto got = plan_path(g, center(g, s), center(g, t));
    ASSERT_EQ(got.ok(), want.has_value()) << "grid " << i;
    if (want) {
      ++reachable;
      EXPECT_NEAR(got.path.length_m, *want, 1e-9) << "grid " << i;
      expect_valid_path(g, got.path, s, t);
    }
  }
  EXPECT_GT(reachable, 100);
}

TEST(PlanPath, DenseGridsAgreeOnUnreachable) {
  std::mt19937_64 rng(99);
  int unreachable = 0;
  for (int i = 0; i < 300; ++i) {
    auto g = oracle::random_grid(rng, 20, 20, 0.4);
    const Cell s{static_cast<int>(rng() % 20), static_cast<int>(rng() % 20)};
    const Cell t{static_cast<int>(rng() % 20), static_cast<int>(rng() % 20)};
    g.set(s, false);
    g.set(t, false);
    const auto want = oracle::shortest_cost(g, s, t);
    const auto got = plan_path(g, center(g, s), center(g, t));
    ASSERT_EQ(got.ok(), want.has_value()) << "grid " << i;
    if (want) EXPECT_NEAR(got.path.length_m, *want, 1e-9);
    unreachable += !want;
  }
  EXPECT_GT(unreachable, 50);
}

TEST(PlanPath, ParallelMatchesSerial) {
  std::mt19937_64 rng(8);
  std::vector<OccupancyGrid> grids;
  for (int i = 0; i < 64; ++i) grids.push_back(oracle::random_grid(rng, 30, 30, 0.25));
  std::vector<PathQuery> qs;
  for (const auto& g : grids) {
    qs.push_back({&g, center(g, {static_cast<int>(rng() % 30), static_cast<int>(rng() % 30)}),
                  center(g, {static_cast<int>(rng() % 30), static_cast<int>(rng() % 30)})});
  }
  const auto a = plan_paths(qs), b = plan_paths_serial(qs);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].status, b[i].status);
    EXPECT_EQ(a[i].path.cells, b[i].path.cells);
  }
}

TEST(Inflation, ParallelMatchesSerialAndCoversRadius) {
  std::mt19937_64 rng(4);
  const auto g = oracle::random_grid(rng, 60, 40, 0.03, 0.05);
  const auto a = inflate_obstacles(g, 0.18);
  EXPECT_EQ(a, inflate_obstacles_serial(g, 0.18));
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      bool near = false;
      for (int rr = 0; rr < g.height() && !near; ++rr)
        for (int cc = 0; cc < g.width() && !near; ++cc)
          near = g.occupied({cc, rr}) && std::hypot(cc - c, rr - r) * 0.05 <= 0.18 + 1e-9;
      ASSERT_EQ(a.occupied({c, r}), near) << c << "," << r;
    }
  }
}

TEST(LineOfSight, AgreesWithSlabOracle) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 8.0);
  int blocked = 0;
  OccupancyGrid g;
  for (int i = 0; i < 3000; ++i) {
    if (i % 50 == 0) g = oracle::random_grid(rng, 16, 16, 0.15, 0.5);
    const double x0 = u(rng), y0 = u(rng), x1 = u(rng), y1 = u(rng);
    const bool want = g.free(g.cell_of(x0, y0)) && g.free(g.cell_of(x1, y1)) &&
                      oracle::clear_segment(g, x0, y0, x1, y1);
    ASSERT_EQ(line_of_sight(g, x0, y0, x1, y1), want) << x0 << "," << y0 << " -> " << x1 << "," << y1;
    blocked += !want;
  }
  EXPECT_GT(blocked, 500);
}

TEST(Navigate, HomeStartToKitchen) {
  auto sc = load_scenario_file(scenario("home"));
  Pose kitchen;
  for (const auto& l : sc.landmarks)
    if (l.name == "kitchen") kitchen = l.pose;
  const auto out = navigate_to(sc.world, kitchen);
  EXPECT_TRUE(out.reached);
  EXPECT_EQ(out.status, NavStatus::Reached);
  EXPECT_LE(distance(sc.world.robot.pose, kitchen), 0.15);
  EXPECT_NEAR(sc.world.robot.pose.theta, kitchen.theta, 1e-9);
  EXPECT_GT(out.elapsed_sim_s, 0);
  EXPECT_FALSE(out.trajectory.empty());
  EXPECT_EQ(sc.world.room_at(sc.world.robot.pose.x, sc.world.robot.pose.y), "kitchen");
}

TEST(Navigate, GoalInObstacleAndIdentity) {
  auto sc = load_scenario_file(scenario("home"));
  const auto start = sc.world.robot.pose;
  const auto bad = navigate_to(sc.world, Pose(3.0, 4.0));  // interior wall
  EXPECT_FALSE(bad.reached);
  EXPECT_EQ(bad.status, NavStatus::GoalOccupied);
  EXPECT_EQ(sc.world.robot.pose, start);

  const auto same = navigate_to(sc.world, start);
  EXPECT_TRUE(same.reached);
  EXPECT_TRUE(same.trajectory.empty());
  EXPECT_EQ(same.elapsed_sim_s, 0.0);
}

TEST(Navigate, EnclosedGoalUnreachable) {
  auto sc = load_scenario_file(scenario("minimal"));
  sc.world.grid.fill_rect({0.4, 0.4, 1.0, 0.5});
  sc.world.grid.fill_rect({0.4, 0.4, 0.5, 1.0});
  sc.world.grid.fill_rect({0.4, 1.0, 1.0, 1.1});
  sc.world.grid.fill_rect({1.0, 0.4, 1.1, 1.1});
  const auto out = navigate_to(sc.world, Pose(0.75, 0.75));
  EXPECT_FALSE(out.reached);
  EXPECT_EQ(out.status, NavStatus::Unreachable);
}

TEST(Navigate, BudgetExhausted) {
  auto sc = load_scenario_file(scenario("home"));
  NavigationConfig cfg;
  cfg.step_budget = 5;
  const auto out = navigate_to(sc.world, Pose(1.5, 4.0), cfg);
  EXPECT_FALSE(out.reached);
  EXPECT_EQ(out.status, NavStatus::BudgetExhausted);
}

TEST(Navigate, SoundOnRandomGoals) {
  auto sc = load_scenario_file(scenario("office"));
  Navigator nav(sc.world.grid);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> x(0.3, 11.7), y(0.3, 5.7), th(-3, 3);
  int reached = 0;
  for (int i = 0; i < 15; ++i) {
    const Pose goal(x(rng), y(rng), th(rng));
    const auto out = nav.navigate_to(sc.world, goal);
    if (out.reached) {
      ++reached;
      EXPECT_LE(distance(sc.world.robot.pose, goal), nav.config().arrival_tolerance);
    }
    EXPECT_TRUE(sc.world.grid.free(sc.world.grid.cell_of(sc.world.robot.pose.x, sc.world.robot.pose.y)));
  }
  EXPECT_GT(reached, 5);
}

TEST(SpinScan, KitchenCenterMatchesGeometry) {
  auto sc = load_scenario_file(scenario("home"));
  sc.world.robot.pose = Pose(1.5, 4.0, 0.3);
  const int steps = 12;
  auto probe = sc.world;
  std::set<std::string> want;
  for (int k = 0; k < steps; ++k) {
    probe.robot.pose = Pose(1.5, 4.0, 0.3 + k * 2 * std::numbers::pi / steps);
    for (const auto& o : probe.objects)
      if (oracle::should_detect(probe, o, sc.detector)) want.insert(o.class_name);
  }
  const auto got = spin_scan(sc.world, steps, sc.detector);
  std::set<std::string> got_names;
  for (const auto& d : got) got_names.insert(d.class_name);
  EXPECT_EQ(got_names.size(), got.size());
  EXPECT_TRUE(std::includes(got_names.begin(), got_names.end(), want.begin(), want.end()));
  for (const char* c : {"cup", "bowl", "apple", "orange", "bottle"}) EXPECT_TRUE(got_names.contains(c)) << c;
  EXPECT_NEAR(sc.world.robot.pose.theta, 0.3, 1e-9);
  EXPECT_EQ(sc.world.robot.pose.x, 1.5);
}

TEST(SpinScan, EmptyAndDedup) {
  auto minimal = load_scenario_file(scenario("minimal"));
  EXPECT_TRUE(spin_scan(minimal.world, 12, minimal.detector).empty());

  World w;
  w.grid = OccupancyGrid(10, 10, 1.0);
  w.robot.pose = Pose(5, 5, 0);
  w.objects.push_back({"cup", Pose(6.5, 5.0), false});
  auto cfg = DetectorConfig::defaults();
  cfg.fov_degrees = 200;  // the cup is visible at two adjacent headings
  const auto got = spin_scan(w, 4, cfg);
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0].class_name, "cup");
  EXPECT_DOUBLE_EQ(got[0].range, 1.5);
}

TEST(SpinScan, SupersetOfEachHeading) {
  auto sc = load_scenario_file(scenario("office"));
  sc.world.robot.pose = Pose(10.5, 4.0, 0);
  std::set<std::string> seen_in_ticks;
  const auto got = spin_scan(sc.world, 12, sc.detector, {}, [&](World& w) {
    for (const auto& d : sense(w, sc.detector)) seen_in_ticks.insert(d.class_name);
  });
  std::set<std::string> names;
  for (const auto& d : got) names.insert(d.class_name);
  EXPECT_TRUE(std::includes(names.begin(), names.end(), seen_in_ticks.begin(), seen_in_ticks.end()));
  EXPECT_TRUE(names.contains("teddy bear"));
}
