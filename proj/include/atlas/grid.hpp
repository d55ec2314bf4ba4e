#pragma once

#include <cstdint>
#include <vector>

namespace atlas {

struct Cell {
  int col = 0;
  int row = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct Rect {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  bool contains(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Row-major occupancy grid anchored at world (0, 0). Cells outside the
/// grid count as occupied.
class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  OccupancyGrid(int width, int height, double resolution);

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }

  bool in_bounds(Cell c) const {
    return c.col >= 0 && c.row >= 0 && c.col < width_ && c.row < height_;
  }
  bool occupied(Cell c) const {
    return !in_bounds(c) || cells_[index(c)] != 0;
  }
  bool free(Cell c) const { return !occupied(c); }
  void set(Cell c, bool occ) { cells_[index(c)] = occ ? 1 : 0; }

  Cell cell_of(double x, double y) const;
  void cell_center(Cell c, double& x, double& y) const;

  /// Marks every cell overlapping the rectangle with positive area.
  void fill_rect(const Rect& r);

  std::size_t occupied_count() const;
  const std::vector<std::uint8_t>& data() const { return cells_; }
  std::vector<std::uint8_t>& data() { return cells_; }

  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

 private:
  std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.col);
  }

  int width_ = 0;
  int height_ = 0;
  double resolution_ = 0.05;
  std::vector<std::uint8_t> cells_;
};

/// Obstacle inflation: a cell becomes occupied when some occupied cell's
/// center lies within `radius` meters of its center.
OccupancyGrid inflate_obstacles(const OccupancyGrid& grid, double radius);
/// Single-threaded reference for inflate_obstacles.
OccupancyGrid inflate_obstacles_serial(const OccupancyGrid& grid, double radius);

/// True iff the segment (x0,y0)-(x1,y1) passes through no occupied cell.
bool line_of_sight(const OccupancyGrid& grid, double x0, double y0, double x1, double y1);

}  // namespace atlas
