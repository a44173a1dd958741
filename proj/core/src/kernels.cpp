#include "varexp/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "varexp/errors.hpp"

namespace varexp {

namespace {

double norm2(const Point& xi, int dim) {
  double s = 0.0;
  for (int a = 0; a < dim; ++a) s += xi[static_cast<std::size_t>(a)] * xi[static_cast<std::size_t>(a)];
  return s;
}

void check_alpha_t(double alpha, double t) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be positive");
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("time must be non-negative");
}

}  // namespace

double eta_value(double t, double m, int dim, double radius) noexcept {
  return std::pow(t, -dim) * std::pow(1.0 + radius / t, -m);
}

GridFunction sample_eta(double t, double m, const Grid& grid) {
  if (!(t > 0.0)) throw InvalidArgument("eta needs t > 0");
  if (!(m > grid.dim())) throw InvalidArgument("eta_{t,m} needs m > n to be integrable");
  return GridFunction::sample(grid, [&](const Point& x) {
    return eta_value(t, m, grid.dim(), euclidean_norm(x, grid.dim()));
  });
}

Multiplier heat_multiplier(double alpha, double t, const Grid& grid) {
  check_alpha_t(alpha, t);
  Multiplier m{grid, std::vector<Complex>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r2 = norm2(wavevector(grid, i), grid.dim());
    m.values[i] = std::exp(-t * std::pow(r2, alpha));
  }
  return m;
}

Multiplier heat_derivative_multiplier(double alpha, double t, double kappa, const Grid& grid) {
  check_alpha_t(alpha, t);
  if (kappa < 0.0) throw InvalidArgument("derivative order kappa must be >= 0");
  Multiplier m{grid, std::vector<Complex>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r2 = norm2(wavevector(grid, i), grid.dim());
    const double amp = kappa == 0.0 ? 1.0 : std::pow(r2, 0.5 * kappa);
    m.values[i] = amp * std::exp(-t * std::pow(r2, alpha));
  }
  return m;
}

Multiplier oseen_multiplier(double alpha, double t, int j, int h, int k, const Grid& grid) {
  check_alpha_t(alpha, t);
  const int n = grid.dim();
  if (j < 0 || h < 0 || k < 0 || j >= n || h >= n || k >= n)
    throw InvalidArgument("Oseen indices must lie in [0, n)");
  Multiplier m{grid, std::vector<Complex>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point xi = wavevector_odd(grid, i);
    const double r2 = norm2(xi, n);
    if (r2 == 0.0) continue;
    const double proj = (j == h ? 1.0 : 0.0) - xi[static_cast<std::size_t>(j)] * xi[static_cast<std::size_t>(h)] / r2;
    const double heat = std::exp(-t * std::pow(norm2(wavevector(grid, i), n), alpha));
    m.values[i] = Complex(0.0, xi[static_cast<std::size_t>(k)] * proj * heat);
  }
  return m;
}

std::string kernel_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::eta: return "eta";
    case KernelKind::heat: return "heat";
    case KernelKind::heat_derivative: return "heat_derivative";
    case KernelKind::oseen: return "oseen";
    case KernelKind::riesz: return "riesz";
  }
  return "unknown";
}

void validate(const KernelSpec& s, int dim) {
  switch (s.kind) {
    case KernelKind::eta:
      if (!(s.t > 0.0)) throw InvalidArgument("eta kernel needs t > 0");
      if (!(s.m > dim)) throw InvalidArgument("eta kernel needs m > n");
      break;
    case KernelKind::heat:
      check_alpha_t(s.alpha, s.t);
      if (s.t == 0.0) throw InvalidArgument("heat kernel needs t > 0");
      break;
    case KernelKind::heat_derivative:
      check_alpha_t(s.alpha, s.t);
      if (s.t == 0.0) throw InvalidArgument("derivative kernel needs t > 0");
      if (s.kappa < 0.0) throw InvalidArgument("kappa must be >= 0");
      break;
    case KernelKind::oseen:
      check_alpha_t(s.alpha, s.t);
      if (s.t == 0.0) throw InvalidArgument("Oseen kernel needs t > 0");
      for (int i : s.jhk)
        if (i < 0 || i >= dim) throw InvalidArgument("Oseen indices must lie in [0, n)");
      break;
    case KernelKind::riesz:
      if (!(s.beta > 0.0) || !(s.beta < dim)) throw InvalidArgument("Riesz order must lie in (0, n)");
      break;
  }
}

GridFunction sample_kernel(const KernelSpec& s, const Grid& grid) {
  validate(s, grid.dim());
  switch (s.kind) {
    case KernelKind::eta: return sample_eta(s.t, s.m, grid);
    case KernelKind::heat: return kernel_from_multiplier(heat_multiplier(s.alpha, s.t, grid));
    case KernelKind::heat_derivative:
      return kernel_from_multiplier(heat_derivative_multiplier(s.alpha, s.t, s.kappa, grid));
    case KernelKind::oseen:
      return kernel_from_multiplier(oseen_multiplier(s.alpha, s.t, s.jhk[0], s.jhk[1], s.jhk[2], grid));
    case KernelKind::riesz:
      return GridFunction::sample(grid, [&](const Point& x) {
        const double r = euclidean_norm(x, grid.dim());
        return r == 0.0 ? 0.0 : std::pow(r, -(grid.dim() - s.beta));
      });
  }
  throw InvalidArgument("unknown kernel kind");
}

GridFunction comparison_bound(const KernelSpec& s, const Grid& grid) {
  validate(s, grid.dim());
  const int n = grid.dim();
  const double scale = std::pow(s.t, 1.0 / (2.0 * s.alpha));
  switch (s.kind) {
    case KernelKind::heat:
      return sample_eta(scale, n + 2.0 * s.alpha, grid);
    case KernelKind::oseen:
      return sample_eta(scale, n + 1.0, grid).scaled(std::pow(s.t, -1.0 / (2.0 * s.alpha)));
    case KernelKind::heat_derivative:
      if (!(s.kappa > 0.0)) throw InvalidArgument("derivative bound needs kappa > 0");
      return sample_eta(scale, n + s.kappa, grid).scaled(std::pow(s.t, -s.kappa / (2.0 * s.alpha)));
    default:
      throw InvalidArgument("no eta-type comparison bound for kernel " + kernel_name(s.kind));
  }
}

PointwiseBound pointwise_bound_check(const GridFunction& kernel, const GridFunction& bound,
                                     double region_fraction) {
  require_same_grid(kernel.grid(), bound.grid(), "pointwise_bound_check");
  const Grid& g = kernel.grid();
  const double cut = region_fraction * g.half_width();
  PointwiseBound r;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point x = g.point(i);
    double m = 0.0;
    for (int a = 0; a < g.dim(); ++a) m = std::max(m, std::abs(x[static_cast<std::size_t>(a)]));
    if (m > cut || bound[i] <= 0.0) continue;
    const double q = std::abs(kernel[i]) / bound[i];
    if (q > r.c_hat) {
      r.c_hat = q;
      r.argmax = i;
    }
  }
  return r;
}

AliasingReport aliasing_monitor(const GridFunction& f, double threshold) {
  AliasingReport r;
  r.boundary_mass = boundary_mass(f);
  r.flagged = r.boundary_mass > threshold;
  return r;
}

std::vector<double> riesz_potential_1d(std::span<const double> values,
                                       std::span<const double> edges,
                                       std::span<const double> points, double gamma) {
  if (!(gamma > 0.0) || !(gamma < 1.0)) throw InvalidArgument("Riesz order gamma must lie in (0, 1)");
  if (edges.size() != values.size() + 1) throw InvalidArgument("need one more edge than cell value");
  for (std::size_t j = 1; j < edges.size(); ++j)
    if (!(edges[j] > edges[j - 1])) throw InvalidArgument("cell edges must increase");
  // int_a^b |t - s|^{gamma-1} ds in closed form.
  auto cell = [gamma](double t, double a, double b) {
    if (t <= a) return (std::pow(b - t, gamma) - std::pow(a - t, gamma)) / gamma;
    if (t >= b) return (std::pow(t - a, gamma) - std::pow(t - b, gamma)) / gamma;
    return (std::pow(t - a, gamma) + std::pow(b - t, gamma)) / gamma;
  };
  std::vector<double> out(points.size(), 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j)
      s += values[j] * cell(points[i], edges[j], edges[j + 1]);
    out[i] = s;
  }
  return out;
}

std::vector<double> riesz_potential_1d(std::span<const double> values, const Grid& time,
                                       double gamma) {
  if (values.size() != time.size()) throw InvalidArgument("one value per time node expected");
  std::vector<double> edges(time.size() + 1), pts(time.size());
  edges[0] = time.coordinate(0) - time.spacing();
  for (std::size_t k = 0; k < time.size(); ++k) {
    pts[k] = time.coordinate(k);
    edges[k + 1] = pts[k];
  }
  return riesz_potential_1d(values, edges, pts, gamma);
}

}  // namespace varexp
