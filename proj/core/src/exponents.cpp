#include "varexp/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "varexp/errors.hpp"
#include "varexp/random.hpp"

namespace varexp {

namespace {

constexpr double kBelowOneSlack = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

ExponentBounds sample_bounds(std::span<const Exponent> s) {
  Exponent lo = s.front(), hi = s.front();
  for (const Exponent& e : s) {
    if (e < lo) lo = e;
    if (hi < e) hi = e;
  }
  return {lo, hi, std::nullopt};
}

// Smallest box shell |x|_inf >= L - 1.5h; used to estimate a missing limit.
bool on_outer_shell(const Grid& g, std::size_t flat) {
  const auto idx = g.unflatten(flat);
  for (int a = 0; a < g.dim(); ++a) {
    const std::size_t i = idx[static_cast<std::size_t>(a)];
    if (i == 0 || i + 1 == g.nodes()) return true;
  }
  return false;
}

}  // namespace

Exponent Exponent::finite(double value) {
  if (!std::isfinite(value) || !(value > 0.0))
    throw InvalidArgument("finite exponent must be a positive real, got " + fmt(value));
  Exponent e;
  e.value_ = value;
  return e;
}

Exponent Exponent::from_reciprocal(double g) {
  if (!std::isfinite(g) || g < 0.0)
    throw InvalidArgument("exponent reciprocal must be a non-negative real, got " + fmt(g));
  if (g == 0.0) return infinity();
  return finite(1.0 / g);
}

double Exponent::value() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

Exponent conjugate(Exponent p) noexcept {
  if (p.is_infinite()) return Exponent::finite(1.0);
  const double g = 1.0 - p.reciprocal();
  if (g <= 0.0) return Exponent::infinity();
  return Exponent::finite(1.0 / g);
}

std::string to_string(Exponent p) { return p.is_infinite() ? "inf" : fmt(p.value()); }

std::string family_name(const ExponentDescriptor& d) {
  return std::visit(overloaded{
                        [](const ConstantExponent&) { return std::string("constant"); },
                        [](const AffineRadialExponent&) { return std::string("affine_radial"); },
                        [](const ExponentialApproachExponent&) {
                          return std::string("exponential_approach");
                        },
                        [](const SinusoidalExponent&) { return std::string("sinusoidal_bounded"); },
                        [](const PiecewiseInfinityExponent&) {
                          return std::string("piecewise_infinity");
                        },
                    },
                    d);
}

std::string describe(const ExponentDescriptor& d) {
  return std::visit(
      overloaded{
          [](const ConstantExponent& c) { return to_string(c.value); },
          [](const AffineRadialExponent& a) {
            return fmt(a.base) + " + " + fmt(a.slope) + "*sum|x_i|";
          },
          [](const ExponentialApproachExponent& e) {
            return fmt(e.limit) + " - " + fmt(e.depth) + "*exp(-" + fmt(e.rate) + "|x|)";
          },
          [](const SinusoidalExponent& s) {
            return fmt(s.base) + " + " + fmt(s.amplitude) + "*|sin(" + fmt(s.frequency) +
                   "*sum x_i)|^" + fmt(s.power);
          },
          [](const PiecewiseInfinityExponent& p) {
            return fmt(p.inner) + " on |x|<=" + fmt(p.radius) + ", " + to_string(p.outer) +
                   " outside";
          },
      },
      d);
}

Exponent evaluate(const ExponentDescriptor& d, const Point& x, int dim) {
  return std::visit(
      overloaded{
          [](const ConstantExponent& c) { return c.value; },
          [&](const AffineRadialExponent& a) {
            double s = 0.0;
            for (int i = 0; i < dim; ++i) s += std::abs(x[static_cast<std::size_t>(i)]);
            return Exponent::finite(a.base + a.slope * s);
          },
          [&](const ExponentialApproachExponent& e) {
            return Exponent::finite(e.limit - e.depth * std::exp(-e.rate * euclidean_norm(x, dim)));
          },
          [&](const SinusoidalExponent& s) {
            double arg = 0.0;
            for (int i = 0; i < dim; ++i) arg += x[static_cast<std::size_t>(i)];
            return Exponent::finite(s.base +
                                    s.amplitude * std::pow(std::abs(std::sin(s.frequency * arg)), s.power));
          },
          [&](const PiecewiseInfinityExponent& p) {
            return euclidean_norm(x, dim) <= p.radius ? Exponent::finite(p.inner) : p.outer;
          },
      },
      d);
}

ExponentBounds analytic_bounds(const ExponentDescriptor& d) {
  return std::visit(
      overloaded{
          [](const ConstantExponent& c) { return ExponentBounds{c.value, c.value, c.value}; },
          [](const AffineRadialExponent& a) {
            if (a.slope < 0.0) throw InvalidArgument("affine_radial slope must be >= 0");
            const Exponent base = Exponent::finite(a.base);
            if (a.slope == 0.0) return ExponentBounds{base, base, base};
            return ExponentBounds{base, Exponent::infinity(), Exponent::infinity()};
          },
          [](const ExponentialApproachExponent& e) {
            if (!(e.rate > 0.0)) throw InvalidArgument("exponential_approach rate must be > 0");
            const Exponent at0 = Exponent::finite(e.limit - e.depth);
            const Exponent lim = Exponent::finite(e.limit);
            return e.depth >= 0.0 ? ExponentBounds{at0, lim, lim} : ExponentBounds{lim, at0, lim};
          },
          [](const SinusoidalExponent& s) {
            if (!(s.power > 0.0)) throw InvalidArgument("sinusoidal_bounded power must be > 0");
            const Exponent a = Exponent::finite(s.base);
            const Exponent b = Exponent::finite(s.base + s.amplitude);
            if (s.amplitude == 0.0) return ExponentBounds{a, a, a};
            return s.amplitude > 0.0 ? ExponentBounds{a, b, std::nullopt}
                                     : ExponentBounds{b, a, std::nullopt};
          },
          [](const PiecewiseInfinityExponent& p) {
            const Exponent in = Exponent::finite(p.inner);
            return in <= p.outer ? ExponentBounds{in, p.outer, p.outer}
                                 : ExponentBounds{p.outer, in, p.outer};
          },
      },
      d);
}

ExponentField::ExponentField(Grid grid, std::vector<Exponent> samples, ExponentBounds bounds,
                             std::optional<ExponentDescriptor> descriptor, std::string label)
    : grid_(std::move(grid)), samples_(std::move(samples)), bounds_(bounds),
      descriptor_(std::move(descriptor)), label_(std::move(label)) {
  if (samples_.size() != grid_.size())
    throw InvalidArgument("exponent field sample count does not match its grid");
  for (const Exponent& e : samples_) {
    if (!e.is_infinite() && e.value() < 1.0 - kBelowOneSlack)
      throw InvalidArgument("exponent " + label_ + " drops below 1 (value " + to_string(e) + ")");
  }
  const ExponentBounds sb = sample_bounds(samples_);
  // Bounds are essential inf/sup over R^n; samples must lie inside them.
  if (sb.minus < bounds_.minus || bounds_.plus < sb.plus) {
    const double slack = 1e-12;
    const bool lo_ok = bounds_.minus.reciprocal() + slack >= sb.minus.reciprocal();
    const bool hi_ok = bounds_.plus.reciprocal() <= sb.plus.reciprocal() + slack;
    if (!lo_ok || !hi_ok)
      throw InvalidArgument("exponent field " + label_ + " has samples outside its bounds");
  }
}

bool ExponentField::is_constant() const noexcept {
  if (!(bounds_.minus == bounds_.plus)) return false;
  return std::ranges::all_of(samples_, [&](const Exponent& e) { return e == samples_.front(); });
}

bool ExponentField::has_infinity() const noexcept {
  return std::ranges::any_of(samples_, [](const Exponent& e) { return e.is_infinite(); });
}

ExponentField build_exponent(const ExponentDescriptor& d, const Grid& grid) {
  const ExponentBounds bounds = analytic_bounds(d);
  std::vector<Exponent> s(grid.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = evaluate(d, grid.point(i), grid.dim());
  return ExponentField(grid, std::move(s), bounds, d, describe(d));
}

ExponentField constant_exponent(Exponent value, const Grid& grid) {
  return build_exponent(ConstantExponent{value}, grid);
}

ExponentField conjugate(const ExponentField& p) {
  std::vector<Exponent> s(p.samples().size());
  std::ranges::transform(p.samples(), s.begin(), [](Exponent e) { return conjugate(e); });
  ExponentBounds b{conjugate(p.plus()), conjugate(p.minus()), std::nullopt};
  if (p.limit()) b.limit = conjugate(*p.limit());
  return ExponentField(p.grid(), std::move(s), b, std::nullopt, "conjugate(" + p.label() + ")");
}

ExponentField half(const ExponentField& p) {
  auto halve = [](Exponent e) {
    const Exponent h = Exponent::from_reciprocal(2.0 * e.reciprocal());
    if (!h.is_infinite() && h.value() < 1.0 - kBelowOneSlack)
      throw InvalidArgument("p/2 drops below 1 (p = " + to_string(e) + ")");
    return h;
  };
  std::vector<Exponent> s(p.samples().size());
  std::ranges::transform(p.samples(), s.begin(), halve);
  ExponentBounds b{halve(p.minus()), halve(p.plus()), std::nullopt};
  if (p.limit()) b.limit = halve(*p.limit());
  return ExponentField(p.grid(), std::move(s), b, std::nullopt, "(" + p.label() + ")/2");
}

ExponentField holder_sum(const ExponentField& p, const ExponentField& q) {
  require_same_grid(p.grid(), q.grid(), "holder_sum");
  auto sum = [](Exponent a, Exponent b) {
    const double g = a.reciprocal() + b.reciprocal();
    if (g > 1.0 + kBelowOneSlack)
      throw InvalidArgument("Hoelder exponent 1/(1/p + 1/q) drops below 1");
    return Exponent::from_reciprocal(std::min(g, 1.0));
  };
  std::vector<Exponent> s(p.samples().size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = sum(p[i], q[i]);
  ExponentBounds b;
  if (q.is_constant()) {
    b = {sum(p.minus(), q.minus()), sum(p.plus(), q.minus()), std::nullopt};
  } else if (p.is_constant()) {
    b = {sum(p.minus(), q.minus()), sum(p.minus(), q.plus()), std::nullopt};
  } else {
    b = sample_bounds(s);
  }
  if (p.limit() && q.limit()) b.limit = sum(*p.limit(), *q.limit());
  return ExponentField(p.grid(), std::move(s), b, std::nullopt,
                       "holder(" + p.label() + ", " + q.label() + ")");
}

ExponentField young_r(const ExponentField& p, Exponent r) {
  auto solve = [&](Exponent pe) {
    const double g = 1.0 + r.reciprocal() - pe.reciprocal();
    if (g > 1.0 + kBelowOneSlack)
      throw InvalidArgument("Young exponent q drops below 1: need p <= r (p = " + to_string(pe) +
                            ", r = " + to_string(r) + ")");
    return Exponent::from_reciprocal(std::min(g, 1.0));
  };
  std::vector<Exponent> s(p.samples().size());
  std::ranges::transform(p.samples(), s.begin(), solve);
  ExponentBounds b{solve(p.plus()), solve(p.minus()), std::nullopt};
  if (p.limit()) b.limit = solve(*p.limit());
  return ExponentField(p.grid(), std::move(s), b, std::nullopt,
                       "young(" + p.label() + ", r=" + to_string(r) + ")");
}

ExponentField residual(const ExponentField& a, Exponent p, Exponent r) {
  auto solve = [&](Exponent ae) {
    if (ae.is_infinite()) throw InvalidArgument("residual exponent needs a finite A");
    const double slack = 1.0 - ae.value() * p.reciprocal();
    if (!(slack > 0.0))
      throw InvalidArgument("residual exponent r(1 - A/p) is not positive (A = " + to_string(ae) +
                            ", p = " + to_string(p) + ")");
    if (r.is_infinite()) return Exponent::infinity();
    const double c = r.value() * slack;
    if (c < 1.0 - kBelowOneSlack)
      throw InvalidArgument("residual exponent r(1 - A/p) = " + fmt(c) + " drops below 1");
    return Exponent::finite(std::max(c, 1.0));
  };
  std::vector<Exponent> s(a.samples().size());
  std::ranges::transform(a.samples(), s.begin(), solve);
  ExponentBounds b{solve(a.plus()), solve(a.minus()), std::nullopt};
  if (a.limit()) b.limit = solve(*a.limit());
  return ExponentField(a.grid(), std::move(s), b, std::nullopt,
                       to_string(r) + "(1 - (" + a.label() + ")/" + to_string(p) + ")");
}

ExponentField combine(Relation relation, std::span<const ExponentField> operands) {
  auto need = [&](std::size_t n) {
    if (operands.size() != n)
      throw InvalidArgument("combine: relation expects " + std::to_string(n) + " operands");
  };
  auto constant_of = [](const ExponentField& f) {
    if (!f.is_constant()) throw InvalidArgument("combine: operand must be constant");
    return f.minus();
  };
  switch (relation) {
    case Relation::half:
      need(1);
      return half(operands[0]);
    case Relation::holder_sum:
      need(2);
      return holder_sum(operands[0], operands[1]);
    case Relation::young_r:
      need(2);
      return young_r(operands[0], constant_of(operands[1]));
    case Relation::residual:
      need(3);
      return residual(operands[0], constant_of(operands[1]), constant_of(operands[2]));
  }
  throw InvalidArgument("combine: unknown relation");
}

LogHolderEstimate log_holder_check(const ExponentField& p, const LogHolderOptions& options) {
  const Grid& grid = p.grid();
  const std::size_t n = grid.size();
  if (n < 2) throw InvalidArgument("log_holder_check: grid has a single node");

  const bool recip = options.target == HolderTarget::reciprocal;
  auto g_of = [&](Exponent e) { return recip ? e.reciprocal() : e.value(); };
  auto diff = [](double a, double b) {
    if (std::isinf(a) || std::isinf(b)) return a == b ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(a - b);
  };

  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = g_of(p[i]);

  LogHolderEstimate est;
  auto visit_pair = [&](std::size_t i, std::size_t j) {
    const Point xi = grid.point(i), xj = grid.point(j);
    Point d{xi[0] - xj[0], xi[1] - xj[1], xi[2] - xj[2]};
    const double dist = euclidean_norm(d, grid.dim());
    const double w = std::log(std::numbers::e + 1.0 / dist);
    est.c_local = std::max(est.c_local, diff(g[i], g[j]) * w);
    ++est.pairs_evaluated;
  };

  const double total = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  if (total <= static_cast<double>(options.pair_budget)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) visit_pair(i, j);
  } else {
    // Neighbours along every axis carry the largest weights; random pairs
    // cover the long range.
    std::size_t stride = 1;
    for (int a = grid.dim() - 1; a >= 0; --a) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto idx = grid.unflatten(i);
        if (idx[static_cast<std::size_t>(a)] + 1 < grid.nodes()) visit_pair(i, i + stride);
      }
      stride *= grid.nodes();
    }
    Rng rng(options.seed);
    while (est.pairs_evaluated < options.pair_budget) {
      const std::size_t i = rng.below(n), j = rng.below(n);
      if (i != j) visit_pair(i, j);
    }
  }

  if (p.limit()) {
    est.g_infinity = g_of(*p.limit());
    est.limit_known = true;
  } else {
    double s = 0.0;
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (on_outer_shell(grid, i)) {
        s += g[i];
        ++c;
      }
    est.g_infinity = s / static_cast<double>(c);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double r = euclidean_norm(grid.point(i), grid.dim());
    est.c_decay = std::max(est.c_decay, diff(g[i], est.g_infinity) * std::log(std::numbers::e + r));
  }
  est.pass_local = est.c_local <= options.tol_local;
  est.pass_decay = est.limit_known && est.c_decay <= options.tol_decay;
  return est;
}

}  // namespace varexp
