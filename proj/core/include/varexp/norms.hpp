#pragma once

#include <span>
#include <vector>

#include "varexp/exponents.hpp"
#include "varexp/grid.hpp"

namespace varexp {

inline constexpr double kNormTolerance = 1e-10;

// omega_p(t): t^p for finite p; for p = inf, 0 on [0, 1] and inf beyond.
double modular_density(double t, Exponent p) noexcept;

// rho_p(f) = sum_x omega_{p(x)}(|f(x)|) * cell_volume. May be +inf.
double modular(std::span<const double> values, std::span<const Exponent> exponents,
               double cell_volume);
double modular(const GridFunction& f, const ExponentField& p);

// inf { lambda > 0 : rho_p(f / lambda) <= 1 } by bracketing and bisection,
// relative tolerance `tol`. Zero data gives 0.
double luxemburg_norm(std::span<const double> values, std::span<const Exponent> exponents,
                      double cell_volume, double tol = kNormTolerance);
double luxemburg_norm(const GridFunction& f, const ExponentField& p, double tol = kNormTolerance);

struct UnitBallResult {
  double norm = 0.0;
  double modular = 0.0;
  bool norm_in_ball = false;
  bool modular_in_ball = false;
};
UnitBallResult unit_ball_check(const GridFunction& f, const ExponentField& p,
                               double tol = kNormTolerance);

// max over the listed spaces.
double intersection_norm(const GridFunction& f, std::span<const ExponentField> spaces,
                         double tol = kNormTolerance);
double intersection_norm(const GridFunction& f, const ExponentField& a, const ExponentField& b,
                         double tol = kNormTolerance);

// Spatial norm of the Euclidean magnitude per slice (max over `spatial`
// when several are given), then the Luxemburg norm of that series on the
// time grid with p_t.
double mixed_norm(const SpaceTimeField& u, const ExponentField& p_t,
                  std::span<const ExponentField> spatial, double tol = kNormTolerance);
double mixed_norm(const SpaceTimeField& u, const ExponentField& p_t, const ExponentField& q_x,
                  double tol = kNormTolerance);
// Spatial norms of every slice, in time order.
std::vector<double> slice_norms(const SpaceTimeField& u, std::span<const ExponentField> spatial,
                                double tol = kNormTolerance);

struct RatioResult {
  double ratio = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  bool skipped = false;  // denominator vanished
};

// ||f g||_s / (||f||_p ||g||_q) with 1/s = 1/p + 1/q.
RatioResult holder_check(const GridFunction& f, const GridFunction& g, const ExponentField& p,
                         const ExponentField& q, double tol = kNormTolerance);

// || sum_j w_j F_j ||_p / sum_j w_j ||F_j||_p
RatioResult minkowski_integral_check(std::span<const GridFunction> slices,
                                     std::span<const double> weights, const ExponentField& p,
                                     double tol = kNormTolerance);

struct OneInLsOptions {
  std::size_t growth_factor = 2;
  double stabilization_tol = 1e-6;
  double tol = kNormTolerance;
};
struct OneInLsResult {
  double value = 0.0;  // +inf when the norm keeps growing with the box
  double small_box = 0.0;
  double large_box = 0.0;
  bool stabilized = false;
};
// ||1||_{s} on the exponent's box, compared with a box `growth_factor` times
// larger at the same spacing (rebuilt from the descriptor).
OneInLsResult one_in_Ls(const ExponentField& s, const OneInLsOptions& options = {});

// 1/s = max(1/p - 1/q, 0), pointwise.
ExponentField embedding_exponent(const ExponentField& p, const ExponentField& q);

// ||f||_p / (2 ||1||_s ||f||_q) for the embedding L^q into L^p on a set where 1 in L^s.
RatioResult embedding_check(const GridFunction& f, const ExponentField& p, const ExponentField& q,
                            double tol = kNormTolerance);

}  // namespace varexp
