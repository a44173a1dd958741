#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace varexp {

enum class BoundaryMode { truncated, periodic };

using Point = std::array<double, 3>;

// Uniform tensor grid with nodes origin + i*spacing on every axis, row-major
// flat indexing (last axis fastest). Each node stands for one cell of volume
// spacing^dim, so sums times cell_volume() are midpoint-rule integrals.
class Grid {
 public:
  // Box [-L, L)^dim with `nodes` points per axis; x = 0 is a node for even counts.
  static Grid box(int dim, std::size_t nodes, double half_width,
                  BoundaryMode mode = BoundaryMode::truncated);
  // Time axis on (0, T]: nodes t_k = k*T/K, k = 1..K.
  static Grid time_axis(double horizon, std::size_t steps);

  int dim() const noexcept { return dim_; }
  std::size_t nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return size_; }
  double origin() const noexcept { return origin_; }
  double spacing() const noexcept { return spacing_; }
  BoundaryMode boundary() const noexcept { return mode_; }
  double half_width() const noexcept { return 0.5 * spacing_ * static_cast<double>(nodes_); }
  double cell_volume() const noexcept;
  double measure() const noexcept;

  double coordinate(std::size_t axis_index) const noexcept {
    return origin_ + spacing_ * static_cast<double>(axis_index);
  }
  std::array<std::size_t, 3> unflatten(std::size_t flat) const noexcept;
  Point point(std::size_t flat) const noexcept;

  // Same box geometry at a different resolution (box grids only).
  Grid refined(std::size_t factor) const;
  // Box of `factor` times the half-width at the same spacing.
  Grid enlarged(std::size_t factor) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  Grid(int dim, std::size_t nodes, double origin, double spacing, BoundaryMode mode);

  int dim_ = 1;
  std::size_t nodes_ = 1;
  std::size_t size_ = 1;
  double origin_ = 0.0;
  double spacing_ = 1.0;
  BoundaryMode mode_ = BoundaryMode::truncated;
};

double euclidean_norm(const Point& x, int dim) noexcept;

// Real-valued samples on a grid; values must be finite.
class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<double> values);
  explicit GridFunction(Grid grid);  // zeros

  static GridFunction sample(const Grid& grid, const std::function<double(const Point&)>& fn);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }

  double sup_abs() const noexcept;
  GridFunction scaled(double factor) const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

// Sampled field u(t, x) with `components` spatial components per time slice.
class SpaceTimeField {
 public:
  SpaceTimeField(Grid space, Grid time, int components);

  const Grid& space() const noexcept { return space_; }
  const Grid& time() const noexcept { return time_; }
  int components() const noexcept { return components_; }
  std::size_t time_count() const noexcept { return time_.size(); }

  std::span<double> values(std::size_t t, int c);
  std::span<const double> values(std::size_t t, int c) const;
  GridFunction slice(std::size_t t, int c) const;
  void set_slice(std::size_t t, int c, const GridFunction& f);
  // Euclidean magnitude over components at one time slice.
  std::vector<double> magnitude(std::size_t t) const;

 private:
  Grid space_;
  Grid time_;
  int components_;
  std::vector<double> data_;
};

void require_same_grid(const Grid& a, const Grid& b, const char* context);

}  // namespace varexp
