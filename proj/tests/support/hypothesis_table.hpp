#pragma once

// Hand-built parameter sets for the existence-theorem gates, two per theorem
// (one inside the admissible region, one outside). Expected outcomes were
// worked out by hand from the theorem conditions; the arithmetic is in the
// comment next to each row.

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "varexp/nse.hpp"

namespace varexp::table {

struct HypothesisCase {
  std::string name;
  TheoremId theorem;
  HypothesisInputs inputs;
  bool expected;
};

inline ExponentBounds constant_bounds(double v) {
  const Exponent e = Exponent::finite(v);
  return {e, e, e};
}
inline ExponentBounds bounds(double lo, double hi, std::optional<double> lim) {
  std::optional<Exponent> l;
  if (lim) l = std::isinf(*lim) ? Exponent::infinity() : Exponent::finite(*lim);
  const Exponent h = std::isinf(hi) ? Exponent::infinity() : Exponent::finite(hi);
  return {Exponent::finite(lo), h, l};
}

inline HypothesisInputs inputs(double alpha, int dim, ExponentBounds p, ExponentBounds q,
                               std::optional<double> nu = std::nullopt) {
  HypothesisInputs in;
  in.alpha = alpha;
  in.dim = dim;
  in.p = p;
  in.q = q;
  in.nu = nu;
  in.p_log_holder = true;
  in.q_log_holder = true;
  return in;
}

inline std::vector<HypothesisCase> hypothesis_cases() {
  const double inf = std::numeric_limits<double>::infinity();
  return {
      // theta_1 = 1/12, M = 1/4: 2/6 + 1/8 = 11/24 < 1/2
      {"local_lq/p6_q12", TheoremId::local_lq, inputs(1.0, 3, constant_bounds(6), constant_bounds(12)), true},
      // q- = 6 = 3/(2 alpha - 1) at alpha = 3/4: 3/200 + 1/4 >= 1/4
      {"local_lq/q_at_exclusion", TheoremId::local_lq, inputs(0.75, 3, constant_bounds(100), constant_bounds(6)),
       false},
      // M = 3 * 2/12 = 1/2: 2/16 + 1/4 = 3/8 < 1/2
      {"local_lq_infinite_limit/q12_inf", TheoremId::local_lq_infinite_limit,
       inputs(1.0, 3, constant_bounds(16), bounds(12, inf, inf)), true},
      // limit of q is finite
      {"local_lq_infinite_limit/finite_limit", TheoremId::local_lq_infinite_limit,
       inputs(1.0, 3, constant_bounds(16), constant_bounds(12)), false},
      // p- = 5 > 4 alpha/(2 alpha - 1) = 4
      {"local_lq_cap_linf/p5", TheoremId::local_lq_cap_linf, inputs(1.0, 3, constant_bounds(5), constant_bounds(3)),
       true},
      // p- = 4 sits on the exclusion p- <= 4 alpha/(2 alpha - 1)
      {"local_lq_cap_linf/p_at_exclusion", TheoremId::local_lq_cap_linf,
       inputs(1.0, 3, constant_bounds(4), constant_bounds(3)), false},
      // omega = 2/7, M = max(6/7, 6/7): 2/40 + 3/7 < 1/2
      {"local_lq_cap_lnu/nu3.5_p40", TheoremId::local_lq_cap_lnu,
       inputs(1.0, 3, constant_bounds(40), bounds(2, 2.45, 2.45), 3.5), true},
      // same with p- = 20: 1/10 + 3/7 > 1/2
      {"local_lq_cap_lnu/nu3.5_p20", TheoremId::local_lq_cap_lnu,
       inputs(1.0, 3, constant_bounds(20), bounds(2, 2.45, 2.45), 3.5), false},
      // phi = 2/6 - 1/8 = 5/24, M = 5/8: 2/16 + 5/16 < 1/2
      {"local_lq_minus_limit/q6_8", TheoremId::local_lq_minus_limit,
       inputs(1.0, 3, constant_bounds(16), bounds(6, 8, 6)), true},
      // q- = 8 differs from q_inf = 10
      {"local_lq_minus_limit/limit_is_max", TheoremId::local_lq_minus_limit,
       inputs(1.0, 3, constant_bounds(16), bounds(8, 10, 10)), false},
      // theta = 3/4 (second case), M = max(1/2, 7/8): 2/64 + 7/16 < 1/2
      {"local_1d_lq_cap_l2/q4_p64", TheoremId::local_1d_lq_cap_l2,
       inputs(1.0, 1, constant_bounds(64), constant_bounds(4)), true},
      // alpha = 0.7 <= 3/4
      {"local_1d_lq_cap_l2/alpha_0.7", TheoremId::local_1d_lq_cap_l2,
       inputs(0.7, 1, constant_bounds(64), constant_bounds(4)), false},
      // p- = p_inf = 2 alpha/(2 alpha - 1) = 2
      {"global_lq_cap_linf/p2", TheoremId::global_lq_cap_linf, inputs(1.0, 3, constant_bounds(2), constant_bounds(4)),
       true},
      // p- = 2 but p_inf = 3
      {"global_lq_cap_linf/p_limit_3", TheoremId::global_lq_cap_linf,
       inputs(1.0, 3, bounds(2, 3, 3), constant_bounds(4)), false},
      // q = 6 > 3, p = 2/(1 - 1/2) = 4
      {"global_constant_q/q6_p4", TheoremId::global_constant_q, inputs(1.0, 3, constant_bounds(4), constant_bounds(6)),
       true},
      // q = 3 = n/(2 alpha - 1) is excluded
      {"global_constant_q/q_at_exclusion", TheoremId::global_constant_q,
       inputs(1.0, 3, constant_bounds(4), constant_bounds(3)), false},
      // theta_1 = 1/12: 1/4 + 1/8 <= 1/2, p- = 4 > 2
      {"global_finite_horizon/q12_p4", TheoremId::global_finite_horizon,
       inputs(1.0, 3, constant_bounds(4), constant_bounds(12)), true},
      // p- = 2 = 2 alpha/(2 alpha - 1)
      {"global_finite_horizon/p_at_critical", TheoremId::global_finite_horizon,
       inputs(1.0, 3, constant_bounds(2), constant_bounds(12)), false},
  };
}

}  // namespace varexp::table
