#include "varexp/decay.hpp"

#include <cmath>
#include <sstream>

#include "varexp/errors.hpp"

namespace varexp {

namespace {

void require(bool ok, const std::string& condition) {
  if (!ok) throw HypothesisViolation(condition);
}

const Exponent kTwo = Exponent::finite(2.0);

}  // namespace

std::string profile_name(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::vartheta: return "vartheta";
    case ProfileKind::vartheta_infty: return "vartheta_infty";
    case ProfileKind::varphi: return "varphi";
    case ProfileKind::omega_general: return "omega_general";
    case ProfileKind::zeta: return "zeta";
    case ProfileKind::sigma: return "sigma";
    case ProfileKind::psi: return "psi";
    case ProfileKind::varsigma: return "varsigma";
    case ProfileKind::k_profile: return "K_profile";
  }
  return "unknown";
}

DecayProfile DecayProfile::vartheta(Exponent p_minus, Exponent p_inf) {
  require(kTwo <= p_minus, "2 <= p-");
  require(p_minus <= p_inf, "p- <= p_inf");
  require(!p_inf.is_infinite(), "p_inf < inf");
  DecayProfile d(ProfileKind::vartheta);
  d.a_ = p_minus;
  d.b_ = p_inf;
  return d;
}

DecayProfile DecayProfile::vartheta_infty(Exponent p_minus) {
  require(kTwo <= p_minus, "2 <= p-");
  DecayProfile d(ProfileKind::vartheta_infty);
  d.a_ = p_minus;
  return d;
}

DecayProfile DecayProfile::varphi(Exponent p_minus, Exponent p_plus) {
  require(kTwo <= p_minus, "2 <= p-");
  require(p_minus <= p_plus, "p- <= p+");
  DecayProfile d(ProfileKind::varphi);
  d.a_ = p_minus;
  d.b_ = p_plus;
  return d;
}

DecayProfile DecayProfile::omega_general(Exponent in_minus, Exponent in_plus, Exponent out_minus,
                                         Exponent out_plus, double nu) {
  require(in_minus <= in_plus && out_minus <= out_plus, "minus <= plus for both exponents");
  require(nu >= 1.0, "1 <= nu");
  require(Exponent::finite(nu) <= out_minus, "nu <= target exponent minimum");
  DecayProfile d(ProfileKind::omega_general);
  d.a_ = in_minus;
  d.b_ = in_plus;
  d.c_ = out_minus;
  d.d_ = out_plus;
  d.nu_ = nu;
  return d;
}

DecayProfile DecayProfile::zeta(Exponent in_minus, Exponent in_plus) {
  require(in_minus <= in_plus, "minus <= plus");
  DecayProfile d(ProfileKind::zeta);
  d.a_ = in_minus;
  d.b_ = in_plus;
  return d;
}

DecayProfile DecayProfile::sigma(Exponent r_minus, Exponent r_plus, Exponent p_plus, Exponent p_inf) {
  require(r_minus <= r_plus, "r- <= r+");
  require(p_plus.is_infinite() || (p_plus == p_inf && r_plus <= p_plus),
          "r+ <= p+ = p_inf < inf, or p+ = inf");
  DecayProfile d(ProfileKind::sigma);
  d.a_ = r_minus;
  d.b_ = r_plus;
  d.c_ = p_plus;
  d.d_ = p_inf;
  return d;
}

DecayProfile DecayProfile::psi(Exponent r_minus, Exponent r_plus, Exponent p_minus, Exponent p_plus) {
  require(r_minus <= r_plus && p_minus <= p_plus, "minus <= plus for both exponents");
  require(r_minus <= p_minus, "r- <= p-");
  DecayProfile d(ProfileKind::psi);
  d.a_ = r_minus;
  d.b_ = r_plus;
  d.c_ = p_minus;
  d.d_ = p_plus;
  return d;
}

DecayProfile DecayProfile::varsigma(Exponent p_minus, Exponent p_plus) {
  require(kTwo <= p_minus, "2 <= p-");
  require(p_minus <= p_plus, "p- <= p+");
  DecayProfile d(ProfileKind::varsigma);
  d.a_ = p_minus;
  d.b_ = p_plus;
  return d;
}

DecayProfile DecayProfile::k_profile(Exponent p_plus) {
  require(kTwo <= p_plus, "2 = p- <= p+");
  DecayProfile d(ProfileKind::k_profile);
  d.a_ = kTwo;
  d.b_ = p_plus;
  return d;
}

ProfileValue two_case_exponent(Exponent out_minus, Exponent out_plus, Exponent in_minus,
                               Exponent in_plus, double t) {
  const double z = t <= 1.0 ? in_minus.reciprocal() : in_plus.reciprocal();
  if (out_minus.is_infinite()) return {z, "A"};
  const double gm = out_minus.reciprocal(), gp = out_plus.reciprocal();
  const double one_minus = 1.0 - gm;
  const bool case_a = t <= 1.0 ? one_minus <= z : one_minus > z;
  if (!case_a) return {one_minus, "B"};
  // out-/out+ = g+/g-
  const double ratio = gp / gm;
  return {ratio * one_minus + z * (1.0 - ratio), "A"};
}

ProfileValue DecayProfile::evaluate(double t) const {
  if (!(t > 0.0)) throw InvalidArgument("decay profiles are defined for t > 0");
  const bool small = t <= 1.0;
  switch (kind_) {
    case ProfileKind::vartheta: {
      const double pm = a_.value(), pi = b_.value();
      const double s = pi * (1.0 - 2.0 / pm);
      if (small) return {(2.0 / pm - 1.0 / pi) * ((2.0 + s) / (1.0 + s) - 1.0 / (pi - 1.0)), {}};
      return {(1.0 / pi) * (s / (1.0 + s) + 1.0 / (pi - 1.0)), {}};
    }
    case ProfileKind::vartheta_infty:
      return {small ? 2.0 * a_.reciprocal() : 0.0, {}};
    case ProfileKind::varphi:
      return {small ? 2.0 * a_.reciprocal() - b_.reciprocal() : b_.reciprocal(), {}};
    case ProfileKind::omega_general:
      if (small) return {a_.reciprocal() * (1.0 - nu_ * d_.reciprocal()), {}};
      return {b_.reciprocal() * (1.0 - nu_ * c_.reciprocal()), {}};
    case ProfileKind::zeta:
      return {small ? a_.reciprocal() : b_.reciprocal(), {}};
    case ProfileKind::sigma: {
      const double gi = d_.reciprocal(), gm = a_.reciprocal(), gp = b_.reciprocal();
      const double dd = (gm - gp) / ((1.0 + gi - gm) * (1.0 + gi - gp));
      if (small) return {(gm - gi) * (1.0 + gi * dd), {}};
      return {(gp - gi) * (1.0 - gi * dd), {}};
    }
    case ProfileKind::psi: {
      const double rm = a_.value();
      if (small) return {a_.reciprocal() * (1.0 - rm * d_.reciprocal()), {}};
      return {b_.reciprocal() * (1.0 - rm * c_.reciprocal()), {}};
    }
    case ProfileKind::varsigma:
    case ProfileKind::k_profile: {
      // Output L^p, input L^{p/2}: z(t) = 2/p- or 2/p+.
      const Exponent in_m = Exponent::from_reciprocal(2.0 * a_.reciprocal());
      const Exponent in_p = Exponent::from_reciprocal(2.0 * b_.reciprocal());
      return two_case_exponent(a_, b_, in_m, in_p, t);
    }
  }
  throw InvalidArgument("unknown profile");
}

double decay_eval(const DecayProfile& profile, double t) { return profile.evaluate(t).value; }

std::string DecayProfile::describe() const {
  std::ostringstream os;
  os << profile_name(kind_) << "(" << to_string(a_);
  switch (kind_) {
    case ProfileKind::vartheta_infty: break;
    case ProfileKind::omega_general:
      os << ", " << to_string(b_) << ", " << to_string(c_) << ", " << to_string(d_) << ", nu=" << nu_;
      break;
    case ProfileKind::sigma:
    case ProfileKind::psi:
      os << ", " << to_string(b_) << ", " << to_string(c_) << ", " << to_string(d_);
      break;
    default:
      os << ", " << to_string(b_);
  }
  os << ")";
  return os.str();
}

}  // namespace varexp
