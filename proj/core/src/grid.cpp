#include "varexp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "varexp/errors.hpp"

namespace varexp {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

Grid::Grid(int dim, std::size_t nodes, double origin, double spacing, BoundaryMode mode)
    : dim_(dim), nodes_(nodes), size_(ipow(nodes, dim)), origin_(origin), spacing_(spacing),
      mode_(mode) {}

Grid Grid::box(int dim, std::size_t nodes, double half_width, BoundaryMode mode) {
  if (dim < 1 || dim > 3) throw InvalidArgument("grid dimension must be 1, 2 or 3");
  if (nodes < 1) throw InvalidArgument("grid needs at least one node per axis");
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw InvalidArgument("grid half-width must be positive");
  const double h = 2.0 * half_width / static_cast<double>(nodes);
  return Grid(dim, nodes, -half_width, h, mode);
}

Grid Grid::time_axis(double horizon, std::size_t steps) {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw InvalidArgument("time horizon must be positive");
  if (steps < 1) throw InvalidArgument("time axis needs at least one step");
  const double dt = horizon / static_cast<double>(steps);
  return Grid(1, steps, dt, dt, BoundaryMode::truncated);
}

double Grid::cell_volume() const noexcept { return std::pow(spacing_, dim_); }

double Grid::measure() const noexcept {
  return std::pow(spacing_ * static_cast<double>(nodes_), dim_);
}

std::array<std::size_t, 3> Grid::unflatten(std::size_t flat) const noexcept {
  std::array<std::size_t, 3> idx{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    idx[static_cast<std::size_t>(a)] = flat % nodes_;
    flat /= nodes_;
  }
  return idx;
}

Point Grid::point(std::size_t flat) const noexcept {
  const auto idx = unflatten(flat);
  Point x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a) x[static_cast<std::size_t>(a)] = coordinate(idx[static_cast<std::size_t>(a)]);
  return x;
}

Grid Grid::refined(std::size_t factor) const {
  if (factor < 1) throw InvalidArgument("refinement factor must be >= 1");
  return Grid(dim_, nodes_ * factor, origin_, spacing_ / static_cast<double>(factor), mode_);
}

Grid Grid::enlarged(std::size_t factor) const {
  if (factor < 1) throw InvalidArgument("enlargement factor must be >= 1");
  const double f = static_cast<double>(factor);
  return Grid(dim_, nodes_ * factor, origin_ * f, spacing_, mode_);
}

double euclidean_norm(const Point& x, int dim) noexcept {
  double s = 0.0;
  for (int a = 0; a < dim; ++a) s += x[static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(a)];
  return std::sqrt(s);
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw InvalidArgument("grid function has " + std::to_string(values_.size()) +
                          " values for a grid of " + std::to_string(grid_.size()) + " nodes");
  for (double v : values_)
    if (!std::isfinite(v)) throw InvalidArgument("grid function values must be finite");
}

GridFunction::GridFunction(Grid grid) : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}

GridFunction GridFunction::sample(const Grid& grid,
                                  const std::function<double(const Point&)>& fn) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.point(i));
  return GridFunction(grid, std::move(v));
}

double GridFunction::sup_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

GridFunction GridFunction::scaled(double factor) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= factor;
  return GridFunction(grid_, std::move(v));
}

SpaceTimeField::SpaceTimeField(Grid space, Grid time, int components)
    : space_(std::move(space)), time_(std::move(time)), components_(components) {
  if (components < 1) throw InvalidArgument("space-time field needs at least one component");
  if (time_.dim() != 1) throw InvalidArgument("time grid must be one-dimensional");
  data_.assign(time_.size() * static_cast<std::size_t>(components_) * space_.size(), 0.0);
}

std::span<double> SpaceTimeField::values(std::size_t t, int c) {
  const std::size_t off = (t * static_cast<std::size_t>(components_) + static_cast<std::size_t>(c)) * space_.size();
  return {data_.data() + off, space_.size()};
}

std::span<const double> SpaceTimeField::values(std::size_t t, int c) const {
  const std::size_t off = (t * static_cast<std::size_t>(components_) + static_cast<std::size_t>(c)) * space_.size();
  return {data_.data() + off, space_.size()};
}

GridFunction SpaceTimeField::slice(std::size_t t, int c) const {
  const auto v = values(t, c);
  return GridFunction(space_, std::vector<double>(v.begin(), v.end()));
}

void SpaceTimeField::set_slice(std::size_t t, int c, const GridFunction& f) {
  require_same_grid(space_, f.grid(), "SpaceTimeField::set_slice");
  std::ranges::copy(f.values(), values(t, c).begin());
}

std::vector<double> SpaceTimeField::magnitude(std::size_t t) const {
  std::vector<double> m(space_.size(), 0.0);
  for (int c = 0; c < components_; ++c) {
    const auto v = values(t, c);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += v[i] * v[i];
  }
  for (double& x : m) x = std::sqrt(x);
  return m;
}

void require_same_grid(const Grid& a, const Grid& b, const char* context) {
  if (!(a == b)) throw GridMismatch(std::string(context) + ": inputs live on different grids");
}

}  // namespace varexp
