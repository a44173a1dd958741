#pragma once

#include <string>

#include "varexp/exponents.hpp"

namespace varexp {

// Time-decay exponents d(t) entering bounds of the form C t^{-n d(t)}.
// Every profile is split at t = 1, the first branch covering t <= 1.
enum class ProfileKind {
  vartheta,        // eta lemma, p_inf finite
  vartheta_infty,  // eta lemma, p_inf = inf
  varphi,          // eta lemma, p_minus = p_inf
  omega_general,   // eta * f from L^{in} cap L^nu into L^{out}
  zeta,            // 1/in_minus, 1/in_plus
  sigma,           // heat smoothing L^r -> L^p
  psi,             // heat smoothing L^r -> L^p, r_inf = r_minus
  varsigma,        // product lemma, L^p cap L^2
  k_profile        // product lemma, p_minus = 2
};

std::string profile_name(ProfileKind kind);

struct ProfileValue {
  double value = 0.0;
  // Which branch of a two-case table fired ("A"/"B"); empty otherwise.
  std::string branch;
};

class DecayProfile {
 public:
  // 2 <= p_minus <= p_inf < inf
  static DecayProfile vartheta(Exponent p_minus, Exponent p_inf);
  // 2 <= p_minus, p_inf = inf
  static DecayProfile vartheta_infty(Exponent p_minus);
  // 2 <= p_minus = p_inf, p_plus >= p_minus
  static DecayProfile varphi(Exponent p_minus, Exponent p_plus);
  // (1/in-)(1 - nu/out+) for t <= 1, (1/in+)(1 - nu/out-) beyond; 1 <= nu <= out-
  static DecayProfile omega_general(Exponent in_minus, Exponent in_plus, Exponent out_minus,
                                    Exponent out_plus, double nu);
  static DecayProfile zeta(Exponent in_minus, Exponent in_plus);
  // r_plus <= p_plus = p_inf < inf, or p_plus = inf
  static DecayProfile sigma(Exponent r_minus, Exponent r_plus, Exponent p_plus, Exponent p_inf);
  // r_minus <= p_minus
  static DecayProfile psi(Exponent r_minus, Exponent r_plus, Exponent p_minus, Exponent p_plus);
  // 2 <= p_minus
  static DecayProfile varsigma(Exponent p_minus, Exponent p_plus);
  // p_minus = 2
  static DecayProfile k_profile(Exponent p_plus);

  ProfileKind kind() const noexcept { return kind_; }
  ProfileValue evaluate(double t) const;
  double operator()(double t) const { return evaluate(t).value; }
  std::string describe() const;

 private:
  DecayProfile(ProfileKind kind) : kind_(kind) {}

  ProfileKind kind_;
  Exponent a_, b_, c_, d_;
  double nu_ = 1.0;
};

double decay_eval(const DecayProfile& profile, double t);

// Two-case exponent for eta * f from L^{in} cap L^1 into L^{out}:
//   case A: (out-/out+)(1 - 1/out-) + z(t)(1 - out-/out+)
//   case B: 1 - 1/out-
// with z(t) = 1/in- (t <= 1) or 1/in+ (t > 1); case A fires when
// t <= 1 and 1 - 1/out- <= z, or t > 1 and 1 - 1/out- > z.
// out_minus = inf gives z(t).
ProfileValue two_case_exponent(Exponent out_minus, Exponent out_plus, Exponent in_minus,
                               Exponent in_plus, double t);

}  // namespace varexp
