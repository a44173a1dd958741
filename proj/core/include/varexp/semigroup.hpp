#pragma once

#include <optional>

#include "varexp/inequalities.hpp"

namespace varexp {

struct SpectralOptions {
  // Boundary mass of the result above this aborts with AliasingError.
  double severe_aliasing = 5e-2;
};

// e^{-t(-Delta)^alpha} u0; t = 0 returns u0 unchanged.
GridFunction apply_semigroup(const GridFunction& u0, double alpha, double t,
                             const SpectralOptions& options = {});
// (-Delta)^{kappa/2} e^{-t(-Delta)^alpha} u0; requires t > 0 when kappa > 0.
GridFunction apply_derivative_semigroup(const GridFunction& u0, double alpha, double t,
                                        double kappa, const SpectralOptions& options = {});

enum class SmoothingVariant {
  sigma,  // L^r -> L^p
  omega,  // L^r cap L^nu -> L^p
  psi     // L^r -> L^p with r_inf = r_minus
};
std::string to_string(SmoothingVariant v);

struct SmoothingInputs {
  ExponentDescriptor r;  // data exponent
  ExponentDescriptor p;  // target exponent
  double alpha = 1.0;
  SmoothingVariant variant = SmoothingVariant::sigma;
  double nu = 1.0;
  // Fit the log-log slope on the middle fraction of t_grid (constant exponents only).
  bool fit_slope = true;
  double slope_window = 0.6;
};

DecayProfile smoothing_profile(const ExponentField& r, const ExponentField& p,
                               SmoothingVariant variant, double nu);

// ratio(t) = ||g_{alpha,t} * phi||_p t^{(n/2alpha) d(t)} / ||phi||_X over the
// corpus, computed with spectral multipliers on the periodic box.
VerificationReport smoothing_check(const VerificationSetup& setup, const SmoothingInputs& in);

struct SlopeFit {
  double slope = 0.0;
  double expected = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};
// Least-squares slope of log ||g_{alpha,t} * phi||_p against log t for the
// homogeneous probe phi ~ |x|^{-n/r}, over the middle `window` of t_grid.
SlopeFit smoothing_slope(const Grid& grid, double alpha, double r, double p,
                         std::span<const double> t_grid, double window = 0.6);

}  // namespace varexp
