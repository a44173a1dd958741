#include "varexp/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "varexp/errors.hpp"
#include "varexp/parallel.hpp"

namespace varexp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Evaluates rho(f/lambda) from precomputed logarithms of |f|; zero entries
// are dropped since they contribute nothing for any exponent.
class ScaledModular {
 public:
  ScaledModular(std::span<const double> values, std::span<const Exponent> exps, double cell)
      : cell_(cell) {
    if (values.size() != exps.size())
      throw InvalidArgument("modular: value and exponent counts differ");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!std::isfinite(values[i])) throw InvalidArgument("modular: non-finite data value");
      const double a = std::abs(values[i]);
      if (a == 0.0) continue;
      log_abs_.push_back(std::log(a));
      exps_.push_back(exps[i]);
      sup_ = std::max(sup_, a);
    }
  }

  double sup() const noexcept { return sup_; }

  // rho(f/lambda), stopping early once the partial sum exceeds `cap`.
  double operator()(double lambda, double cap = kInf) const {
    const double ll = std::log(lambda);
    const double limit = cap / cell_;
    double sum = 0.0;
    for (std::size_t i = 0; i < log_abs_.size(); ++i) {
      const double d = log_abs_[i] - ll;
      if (exps_[i].is_infinite()) {
        if (d > 0.0) return kInf;
        continue;
      }
      sum += std::exp(exps_[i].value() * d);
      if (sum > limit) return sum * cell_;
    }
    return sum * cell_;
  }

  bool feasible(double lambda) const { return (*this)(lambda, 1.0) <= 1.0; }

 private:
  std::vector<double> log_abs_;
  std::vector<Exponent> exps_;
  double cell_;
  double sup_ = 0.0;
};

std::span<const double> as_span(const std::vector<double>& v) { return {v.data(), v.size()}; }

}  // namespace

double modular_density(double t, Exponent p) noexcept {
  if (p.is_infinite()) return t <= 1.0 ? 0.0 : kInf;
  return std::pow(t, p.value());
}

double modular(std::span<const double> values, std::span<const Exponent> exponents,
               double cell_volume) {
  if (values.size() != exponents.size())
    throw InvalidArgument("modular: value and exponent counts differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw InvalidArgument("modular: non-finite data value");
    const double w = modular_density(std::abs(values[i]), exponents[i]);
    if (std::isinf(w)) return kInf;
    sum += w;
  }
  return sum * cell_volume;
}

double modular(const GridFunction& f, const ExponentField& p) {
  require_same_grid(f.grid(), p.grid(), "modular");
  return modular(f.values(), p.samples(), f.grid().cell_volume());
}

double luxemburg_norm(std::span<const double> values, std::span<const Exponent> exponents,
                      double cell_volume, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("luxemburg_norm: tolerance must be positive");
  const ScaledModular rho(values, exponents, cell_volume);
  if (rho.sup() == 0.0) return 0.0;

  const double measure = cell_volume * static_cast<double>(values.size());
  double hi = std::max(1.0, rho.sup() * measure);
  double lo = tol;
  for (int guard = 0; !rho.feasible(hi); ++guard) {
    if (guard > 2000) throw NumericalAbort("luxemburg_norm: no feasible upper bracket");
    lo = hi;
    hi *= 2.0;
  }
  if (lo >= hi) lo = 0.5 * hi;
  for (int guard = 0; rho.feasible(lo); ++guard) {
    if (guard > 2000) throw NumericalAbort("luxemburg_norm: no infeasible lower bracket");
    hi = lo;
    lo *= 0.5;
  }
  while (hi > 2.0 * lo) {
    const double mid = std::sqrt(lo * hi);
    (rho.feasible(mid) ? hi : lo) = mid;
  }
  while (hi - lo > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (rho.feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

double luxemburg_norm(const GridFunction& f, const ExponentField& p, double tol) {
  require_same_grid(f.grid(), p.grid(), "luxemburg_norm");
  return luxemburg_norm(f.values(), p.samples(), f.grid().cell_volume(), tol);
}

UnitBallResult unit_ball_check(const GridFunction& f, const ExponentField& p, double tol) {
  UnitBallResult r;
  r.norm = luxemburg_norm(f, p, tol);
  r.modular = modular(f, p);
  r.norm_in_ball = r.norm <= 1.0;
  r.modular_in_ball = r.modular <= 1.0;
  return r;
}

double intersection_norm(const GridFunction& f, std::span<const ExponentField> spaces, double tol) {
  if (spaces.empty()) throw InvalidArgument("intersection_norm: no spaces given");
  double m = 0.0;
  for (const auto& p : spaces) m = std::max(m, luxemburg_norm(f, p, tol));
  return m;
}

double intersection_norm(const GridFunction& f, const ExponentField& a, const ExponentField& b,
                         double tol) {
  return std::max(luxemburg_norm(f, a, tol), luxemburg_norm(f, b, tol));
}

std::vector<double> slice_norms(const SpaceTimeField& u, std::span<const ExponentField> spatial,
                                double tol) {
  if (spatial.empty()) throw InvalidArgument("slice_norms: no spatial exponent given");
  for (const auto& q : spatial) require_same_grid(u.space(), q.grid(), "slice_norms");
  std::vector<double> out(u.time_count(), 0.0);
  const double cell = u.space().cell_volume();
  parallel_for(u.time_count(), [&](std::size_t t) {
    const std::vector<double> mag = u.magnitude(t);
    double m = 0.0;
    for (const auto& q : spatial) m = std::max(m, luxemburg_norm(as_span(mag), q.samples(), cell, tol));
    out[t] = m;
  });
  return out;
}

double mixed_norm(const SpaceTimeField& u, const ExponentField& p_t,
                  std::span<const ExponentField> spatial, double tol) {
  require_same_grid(u.time(), p_t.grid(), "mixed_norm (time exponent)");
  const std::vector<double> s = slice_norms(u, spatial, tol);
  return luxemburg_norm(as_span(s), p_t.samples(), u.time().spacing(), tol);
}

double mixed_norm(const SpaceTimeField& u, const ExponentField& p_t, const ExponentField& q_x,
                  double tol) {
  return mixed_norm(u, p_t, std::span<const ExponentField>(&q_x, 1), tol);
}

RatioResult holder_check(const GridFunction& f, const GridFunction& g, const ExponentField& p,
                         const ExponentField& q, double tol) {
  require_same_grid(f.grid(), g.grid(), "holder_check");
  const ExponentField s = holder_sum(p, q);
  std::vector<double> fg(f.size());
  for (std::size_t i = 0; i < fg.size(); ++i) fg[i] = f[i] * g[i];
  RatioResult r;
  r.numerator = luxemburg_norm(as_span(fg), s.samples(), f.grid().cell_volume(), tol);
  r.denominator = luxemburg_norm(f, p, tol) * luxemburg_norm(g, q, tol);
  r.skipped = r.denominator == 0.0;
  r.ratio = r.skipped ? 0.0 : r.numerator / r.denominator;
  return r;
}

RatioResult minkowski_integral_check(std::span<const GridFunction> slices,
                                     std::span<const double> weights, const ExponentField& p,
                                     double tol) {
  if (slices.empty() || slices.size() != weights.size())
    throw InvalidArgument("minkowski_integral_check: need one weight per slice");
  std::vector<double> sum(p.grid().size(), 0.0);
  RatioResult r;
  for (std::size_t j = 0; j < slices.size(); ++j) {
    require_same_grid(slices[j].grid(), p.grid(), "minkowski_integral_check");
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += weights[j] * slices[j][i];
    r.denominator += std::abs(weights[j]) * luxemburg_norm(slices[j], p, tol);
  }
  r.numerator = luxemburg_norm(as_span(sum), p.samples(), p.grid().cell_volume(), tol);
  r.skipped = r.denominator == 0.0;
  r.ratio = r.skipped ? 0.0 : r.numerator / r.denominator;
  return r;
}

OneInLsResult one_in_Ls(const ExponentField& s, const OneInLsOptions& options) {
  auto norm_of_one = [&](const ExponentField& e) {
    const std::vector<double> ones(e.grid().size(), 1.0);
    return luxemburg_norm(as_span(ones), e.samples(), e.grid().cell_volume(), options.tol);
  };
  OneInLsResult r;
  r.small_box = norm_of_one(s);
  if (!s.descriptor()) {
    r.value = r.small_box;
    r.large_box = r.small_box;
    return r;
  }
  const ExponentField big = build_exponent(*s.descriptor(), s.grid().enlarged(options.growth_factor));
  r.large_box = norm_of_one(big);
  r.stabilized = std::abs(r.large_box - r.small_box) <= options.stabilization_tol * r.small_box;
  r.value = r.stabilized ? r.large_box : kInf;
  return r;
}

ExponentField embedding_exponent(const ExponentField& p, const ExponentField& q) {
  require_same_grid(p.grid(), q.grid(), "embedding_exponent");
  std::vector<Exponent> s(p.samples().size());
  for (std::size_t i = 0; i < s.size(); ++i)
    s[i] = Exponent::from_reciprocal(std::max(p[i].reciprocal() - q[i].reciprocal(), 0.0));
  Exponent lo = s.front(), hi = s.front();
  for (const Exponent& e : s) {
    if (e < lo) lo = e;
    if (hi < e) hi = e;
  }
  ExponentBounds b{lo, hi, std::nullopt};
  return ExponentField(p.grid(), std::move(s), b, std::nullopt,
                       "embedding(" + p.label() + ", " + q.label() + ")");
}

RatioResult embedding_check(const GridFunction& f, const ExponentField& p, const ExponentField& q,
                            double tol) {
  const ExponentField s = embedding_exponent(p, q);
  const std::vector<double> ones(s.grid().size(), 1.0);
  const double one_s = luxemburg_norm(as_span(ones), s.samples(), s.grid().cell_volume(), tol);
  RatioResult r;
  r.numerator = luxemburg_norm(f, p, tol);
  r.denominator = 2.0 * one_s * luxemburg_norm(f, q, tol);
  r.skipped = r.denominator == 0.0;
  r.ratio = r.skipped ? 0.0 : r.numerator / r.denominator;
  return r;
}

}  // namespace varexp
