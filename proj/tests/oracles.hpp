#pragma once

// Independent reference implementations used by the tests. They share no
// code with the library beyond the grid container.

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "atlas/grid.hpp"
#include "atlas/world.hpp"

namespace oracle {

/// Label-correcting shortest path (queue relaxation until no label
/// improves) on the 8-connected grid. Diagonal moves need both orthogonal
/// neighbours free. Returns the cost in cells, nullopt when unreachable.
inline std::optional<double> shortest_cost(const atlas::OccupancyGrid& g, atlas::Cell s, atlas::Cell t) {
  if (g.occupied(s) || g.occupied(t)) return std::nullopt;
  const int w = g.width(), h = g.height();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(w * h), inf);
  std::vector<char> queued(dist.size(), 0);
  auto id = [w](atlas::Cell c) { return static_cast<std::size_t>(c.row * w + c.col); };
  std::deque<atlas::Cell> q{s};
  dist[id(s)] = 0;
  queued[id(s)] = 1;
  while (!q.empty()) {
    const auto c = q.front();
    q.pop_front();
    queued[id(c)] = 0;
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        if (dr == 0 && dc == 0) continue;
        const atlas::Cell n{c.col + dc, c.row + dr};
        if (g.occupied(n)) continue;
        if (dr != 0 && dc != 0 &&
            (g.occupied({c.col + dc, c.row}) || g.occupied({c.col, c.row + dr}))) {
          continue;
        }
        const double nd = dist[id(c)] + ((dr != 0 && dc != 0) ? std::numbers::sqrt2 : 1.0);
        if (nd < dist[id(n)] - 1e-12) {
          dist[id(n)] = nd;
          if (!queued[id(n)]) {
            queued[id(n)] = 1;
            q.push_back(n);
          }
        }
      }
    }
  }
  if (dist[id(t)] == inf) return std::nullopt;
  return dist[id(t)];
}

/// Does the segment overlap the box along a stretch of positive length?
/// Liang-Barsky clipping of the parametric segment.
inline bool segment_hits_box(double x0, double y0, double x1, double y1, double bx0, double by0,
                             double bx1, double by1) {
  double t0 = 0.0, t1 = 1.0;
  const double d[2] = {x1 - x0, y1 - y0};
  const double p[2] = {x0, y0};
  const double lo[2] = {bx0, by0};
  const double hi[2] = {bx1, by1};
  for (int k = 0; k < 2; ++k) {
    if (d[k] == 0.0) {
      if (p[k] <= lo[k] || p[k] >= hi[k]) return false;
      continue;
    }
    double a = (lo[k] - p[k]) / d[k];
    double b = (hi[k] - p[k]) / d[k];
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
  }
  return t0 < t1;
}

/// Line of sight by testing every occupied cell as a box.
inline bool clear_segment(const atlas::OccupancyGrid& g, double x0, double y0, double x1, double y1) {
  const double r = g.resolution();
  for (int row = 0; row < g.height(); ++row) {
    for (int col = 0; col < g.width(); ++col) {
      if (g.free({col, row})) continue;
      if (segment_hits_box(x0, y0, x1, y1, col * r, row * r, (col + 1) * r, (row + 1) * r)) return false;
    }
  }
  return true;
}

/// Conditions (a) to (d) of the detector, evaluated from scratch.
inline bool should_detect(const atlas::World& w, const atlas::WorldObject& o, const atlas::DetectorConfig& cfg) {
  if (o.carried || !cfg.allowlist.contains(o.class_name)) return false;
  const double dx = o.pose.x - w.robot.pose.x, dy = o.pose.y - w.robot.pose.y;
  const double range = std::sqrt(dx * dx + dy * dy);
  if (range <= 0.0 || range > cfg.max_range) return false;
  double b = std::atan2(dy, dx) - w.robot.pose.theta;
  while (b > std::numbers::pi) b -= 2 * std::numbers::pi;
  while (b <= -std::numbers::pi) b += 2 * std::numbers::pi;
  if (std::abs(b) > cfg.fov_degrees / 2.0 * std::numbers::pi / 180.0) return false;
  return clear_segment(w.grid, w.robot.pose.x, w.robot.pose.y, o.pose.x, o.pose.y);
}

/// Random grid with the given obstacle density.
inline atlas::OccupancyGrid random_grid(std::mt19937_64& rng, int w, int h, double density, double res = 1.0) {
  atlas::OccupancyGrid g(w, h, res);
  std::bernoulli_distribution occ(density);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) g.set({c, r}, occ(rng));
  return g;
}

}  // namespace oracle
