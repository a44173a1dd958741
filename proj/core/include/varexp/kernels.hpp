#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "varexp/grid.hpp"
#include "varexp/spectral.hpp"

namespace varexp {

// eta_{t,m}(x) = t^{-n} (1 + |x|/t)^{-m}; integrable when m > n.
double eta_value(double t, double m, int dim, double radius) noexcept;
GridFunction sample_eta(double t, double m, const Grid& grid);

// e^{-t |xi|^{2 alpha}}
Multiplier heat_multiplier(double alpha, double t, const Grid& grid);
// |xi|^kappa e^{-t |xi|^{2 alpha}}
Multiplier heat_derivative_multiplier(double alpha, double t, double kappa, const Grid& grid);
// i xi_k (delta_jh - xi_j xi_h / |xi|^2) e^{-t |xi|^{2 alpha}}, zero at xi = 0;
// indices are 0-based.
Multiplier oseen_multiplier(double alpha, double t, int j, int h, int k, const Grid& grid);

enum class KernelKind { eta, heat, heat_derivative, oseen, riesz };

struct KernelSpec {
  KernelKind kind = KernelKind::heat;
  double alpha = 1.0;
  double t = 1.0;
  double m = 2.0;      // eta decay order
  double kappa = 0.0;  // derivative order
  double beta = 0.5;   // riesz order, kernel |x|^{-(n - beta)}
  std::array<int, 3> jhk{0, 0, 0};
};

std::string kernel_name(KernelKind kind);
void validate(const KernelSpec& spec, int dim);

// Grid samples of the kernel; heat-type kernels are the periodic kernels
// of their multipliers.
GridFunction sample_kernel(const KernelSpec& spec, const Grid& grid);

// The eta-type majorant the kernel is compared against:
//   heat:            eta_{s, n + 2 alpha}
//   oseen:           t^{-1/(2 alpha)} eta_{s, n + 1}
//   heat_derivative: t^{-kappa/(2 alpha)} eta_{s, n + kappa}
// with s = t^{1/(2 alpha)}.
GridFunction comparison_bound(const KernelSpec& spec, const Grid& grid);

struct PointwiseBound {
  double c_hat = 0.0;
  std::size_t argmax = 0;
};
// max |kernel| / bound over nodes with max_i |x_i| <= region_fraction * L.
PointwiseBound pointwise_bound_check(const GridFunction& kernel, const GridFunction& bound,
                                     double region_fraction = 0.5);

struct AliasingReport {
  double boundary_mass = 0.0;
  bool flagged = false;  // above the warning threshold
};
inline constexpr double kAliasingWarnThreshold = 1e-8;
AliasingReport aliasing_monitor(const GridFunction& f, double threshold = kAliasingWarnThreshold);

// Product integration of int_0^T |t - s|^{gamma - 1} f(s) ds with f constant on
// each cell [edges[j], edges[j+1]], evaluated at `points`.
std::vector<double> riesz_potential_1d(std::span<const double> values,
                                       std::span<const double> edges,
                                       std::span<const double> points, double gamma);
// Cells (t_k - dt, t_k] of a time axis, evaluated at its nodes.
std::vector<double> riesz_potential_1d(std::span<const double> values, const Grid& time,
                                       double gamma);

}  // namespace varexp
