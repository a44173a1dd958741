#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "varexp/grid.hpp"

namespace varexp {

// An exponent in [1, inf] (intermediate results may be below 1). Infinity is a
// flag, never a large float; arithmetic goes through reciprocal() where 1/inf = 0.
class Exponent {
 public:
  constexpr Exponent() = default;
  static Exponent finite(double value);
  static constexpr Exponent infinity() {
    Exponent e;
    e.infinite_ = true;
    e.value_ = 0.0;
    return e;
  }
  // g = 1/p with g == 0 meaning p = inf.
  static Exponent from_reciprocal(double g);

  bool is_infinite() const noexcept { return infinite_; }
  // Finite value; +inf as a double when infinite (for display and comparison).
  double value() const noexcept;
  double reciprocal() const noexcept { return infinite_ ? 0.0 : 1.0 / value_; }

  friend bool operator==(const Exponent& a, const Exponent& b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend bool operator<(const Exponent& a, const Exponent& b) noexcept {
    return a.reciprocal() > b.reciprocal();
  }
  friend bool operator<=(const Exponent& a, const Exponent& b) noexcept {
    return a.reciprocal() >= b.reciprocal();
  }

 private:
  double value_ = 1.0;
  bool infinite_ = false;
};

Exponent conjugate(Exponent p) noexcept;
std::string to_string(Exponent p);

// p(x) = value
struct ConstantExponent {
  Exponent value;
};
// p(x) = base + slope * sum_i |x_i|
struct AffineRadialExponent {
  double base = 1.0;
  double slope = 0.0;
};
// p(x) = limit - depth * exp(-rate * |x|)
struct ExponentialApproachExponent {
  double limit = 2.0;
  double depth = 0.0;
  double rate = 1.0;
};
// p(x) = base + amplitude * |sin(frequency * sum_i x_i)|^power
struct SinusoidalExponent {
  double base = 2.0;
  double amplitude = 0.0;
  double frequency = 1.0;
  double power = 1.0;
};
// p(x) = inner for |x| <= radius, outer elsewhere (outer defaults to inf)
struct PiecewiseInfinityExponent {
  double inner = 2.0;
  double radius = 1.0;
  Exponent outer = Exponent::infinity();
};

using ExponentDescriptor = std::variant<ConstantExponent, AffineRadialExponent,
                                        ExponentialApproachExponent, SinusoidalExponent,
                                        PiecewiseInfinityExponent>;

std::string family_name(const ExponentDescriptor& d);
std::string describe(const ExponentDescriptor& d);
Exponent evaluate(const ExponentDescriptor& d, const Point& x, int dim);

// Essential inf/sup over R^n and the limit at infinity (absent when the
// family oscillates).
struct ExponentBounds {
  Exponent minus;
  Exponent plus;
  std::optional<Exponent> limit;
};
ExponentBounds analytic_bounds(const ExponentDescriptor& d);

class ExponentField {
 public:
  ExponentField(Grid grid, std::vector<Exponent> samples, ExponentBounds bounds,
                std::optional<ExponentDescriptor> descriptor, std::string label);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const Exponent> samples() const noexcept { return samples_; }
  Exponent operator[](std::size_t i) const noexcept { return samples_[i]; }
  Exponent minus() const noexcept { return bounds_.minus; }
  Exponent plus() const noexcept { return bounds_.plus; }
  std::optional<Exponent> limit() const noexcept { return bounds_.limit; }
  const ExponentBounds& bounds() const noexcept { return bounds_; }
  const std::optional<ExponentDescriptor>& descriptor() const noexcept { return descriptor_; }
  const std::string& label() const noexcept { return label_; }
  bool is_constant() const noexcept;
  bool has_infinity() const noexcept;

 private:
  Grid grid_;
  std::vector<Exponent> samples_;
  ExponentBounds bounds_;
  std::optional<ExponentDescriptor> descriptor_;
  std::string label_;
};

ExponentField build_exponent(const ExponentDescriptor& d, const Grid& grid);
ExponentField constant_exponent(Exponent value, const Grid& grid);
ExponentField conjugate(const ExponentField& p);

enum class Relation {
  half,        // p / 2
  holder_sum,  // 1/s = 1/p + 1/q
  young_r,     // 1/p + 1/q = 1 + 1/r, solved for q from (p, r)
  residual     // C = r (1 - A/p), operands (A, p, r) with p, r constant
};

ExponentField combine(Relation relation, std::span<const ExponentField> operands);
ExponentField half(const ExponentField& p);
ExponentField holder_sum(const ExponentField& p, const ExponentField& q);
ExponentField young_r(const ExponentField& p, Exponent r);
ExponentField residual(const ExponentField& a, Exponent p, Exponent r);

enum class HolderTarget { reciprocal, exponent };

struct LogHolderOptions {
  std::size_t pair_budget = 200000;
  std::uint64_t seed = 0x5eedULL;
  double tol_local = 10.0;
  double tol_decay = 10.0;
  HolderTarget target = HolderTarget::reciprocal;
};

struct LogHolderEstimate {
  double c_local = 0.0;
  double c_decay = 0.0;
  double g_infinity = 0.0;
  bool limit_known = false;
  bool pass_local = false;
  bool pass_decay = false;
  std::size_t pairs_evaluated = 0;
};

// Sampled log-Hoelder constants of g = 1/p (or p itself):
//   local: max |g(x)-g(y)| log(e + 1/|x-y|) over node pairs,
//   decay: max |g(x)-g_inf| log(e + |x|).
LogHolderEstimate log_holder_check(const ExponentField& p, const LogHolderOptions& options = {});

}  // namespace varexp
