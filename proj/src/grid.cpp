#include "atlas/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace atlas {

namespace {

constexpr double kEdgeEps = 1e-9;

struct Offset {
  int dc, dr;
};

std::vector<Offset> disc_offsets(double radius, double resolution) {
  const int reach = static_cast<int>(std::floor(radius / resolution + kEdgeEps));
  std::vector<Offset> out;
  for (int dr = -reach; dr <= reach; ++dr) {
    for (int dc = -reach; dc <= reach; ++dc) {
      if (std::hypot(dc, dr) * resolution <= radius + kEdgeEps) out.push_back({dc, dr});
    }
  }
  return out;
}

bool any_occupied_near(const OccupancyGrid& grid, int col, int row,
                       const std::vector<Offset>& offsets) {
  for (const auto& o : offsets) {
    const Cell n{col + o.dc, row + o.dr};
    if (grid.in_bounds(n) && grid.occupied(n)) return true;
  }
  return false;
}

}  // namespace

OccupancyGrid::OccupancyGrid(int width, int height, double resolution)
    : width_(width), height_(height), resolution_(resolution) {
  if (width <= 0 || height <= 0 || !(resolution > 0.0)) {
    throw std::invalid_argument("grid dimensions and resolution must be positive");
  }
  cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

Cell OccupancyGrid::cell_of(double x, double y) const {
  return {static_cast<int>(std::floor(x / resolution_)),
          static_cast<int>(std::floor(y / resolution_))};
}

void OccupancyGrid::cell_center(Cell c, double& x, double& y) const {
  x = (c.col + 0.5) * resolution_;
  y = (c.row + 0.5) * resolution_;
}

void OccupancyGrid::fill_rect(const Rect& r) {
  const int c0 = std::max(0, static_cast<int>(std::floor(r.x0 / resolution_ + kEdgeEps)));
  const int r0 = std::max(0, static_cast<int>(std::floor(r.y0 / resolution_ + kEdgeEps)));
  const int c1 = std::min(width_, static_cast<int>(std::ceil(r.x1 / resolution_ - kEdgeEps)));
  const int r1 = std::min(height_, static_cast<int>(std::ceil(r.y1 / resolution_ - kEdgeEps)));
  for (int row = r0; row < r1; ++row) {
    for (int col = c0; col < c1; ++col) set({col, row}, true);
  }
}

std::size_t OccupancyGrid::occupied_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

OccupancyGrid inflate_obstacles_serial(const OccupancyGrid& grid, double radius) {
  if (radius <= 0.0) return grid;
  const auto offsets = disc_offsets(radius, grid.resolution());
  OccupancyGrid out = grid;
  for (int row = 0; row < grid.height(); ++row) {
    for (int col = 0; col < grid.width(); ++col) {
      if (grid.free({col, row}) && any_occupied_near(grid, col, row, offsets)) {
        out.set({col, row}, true);
      }
    }
  }
  return out;
}

OccupancyGrid inflate_obstacles(const OccupancyGrid& grid, double radius) {
  if (radius <= 0.0) return grid;
  const auto offsets = disc_offsets(radius, grid.resolution());
  OccupancyGrid out = grid;
  const int height = grid.height();
  const int width = grid.width();
  auto& cells = out.data();
#pragma omp parallel for schedule(static)
  for (int row = 0; row < height; ++row) {
    for (int col = 0; col < width; ++col) {
      if (grid.free({col, row}) && any_occupied_near(grid, col, row, offsets)) {
        cells[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
              static_cast<std::size_t>(col)] = 1;
      }
    }
  }
  return out;
}

// Amanatides-Woo traversal over every cell the segment enters.
bool line_of_sight(const OccupancyGrid& grid, double x0, double y0, double x1, double y1) {
  const double res = grid.resolution();
  Cell cur = grid.cell_of(x0, y0);
  const Cell last = grid.cell_of(x1, y1);
  if (grid.occupied(cur)) return false;

  const double dx = x1 - x0;
  const double dy = y1 - y0;
  const int step_c = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
  const int step_r = dy > 0 ? 1 : (dy < 0 ? -1 : 0);
  constexpr double inf = std::numeric_limits<double>::infinity();

  const double next_x = (cur.col + (step_c > 0 ? 1 : 0)) * res;
  const double next_y = (cur.row + (step_r > 0 ? 1 : 0)) * res;
  double t_max_x = step_c != 0 ? (next_x - x0) / dx : inf;
  double t_max_y = step_r != 0 ? (next_y - y0) / dy : inf;
  const double t_delta_x = step_c != 0 ? res / std::abs(dx) : inf;
  const double t_delta_y = step_r != 0 ? res / std::abs(dy) : inf;

  const int max_steps = std::abs(last.col - cur.col) + std::abs(last.row - cur.row) + 2;
  for (int i = 0; i < max_steps && !(cur == last); ++i) {
    if (t_max_x < t_max_y) {
      cur.col += step_c;
      t_max_x += t_delta_x;
    } else if (t_max_y < t_max_x) {
      cur.row += step_r;
      t_max_y += t_delta_y;
    } else {
      // Exact corner crossing: the segment touches both side cells only at
      // a point, so step diagonally.
      cur.col += step_c;
      cur.row += step_r;
      t_max_x += t_delta_x;
      t_max_y += t_delta_y;
    }
    if (grid.occupied(cur)) return false;
  }
  return true;
}

}  // namespace atlas
