#include <gtest/gtest.h>

#include "varexp/decay.hpp"
#include "varexp/errors.hpp"

using namespace varexp;

namespace {

Exponent E(double v) { return Exponent::finite(v); }
constexpr double kTol = 1e-12;

}  // namespace

// Hand-substituted values on both sides of t = 1.
TEST(Profiles, HandValues) {
  struct Row {
    DecayProfile profile;
    double small, large;
  };
  const Row rows[] = {
      {DecayProfile::vartheta(E(4), E(6)), 7.0 / 20, 19.0 / 120},
      {DecayProfile::vartheta_infty(E(4)), 1.0 / 2, 0.0},
      {DecayProfile::varphi(E(4), E(8)), 3.0 / 8, 1.0 / 8},
      {DecayProfile::omega_general(E(2), E(4), E(4), E(8), 2.0), 3.0 / 8, 1.0 / 8},
      {DecayProfile::zeta(E(2), E(4)), 1.0 / 2, 1.0 / 4},
      {DecayProfile::sigma(E(2), E(3), E(6), E(6)), 7.0 / 20, 19.0 / 120},
      {DecayProfile::psi(E(2), E(3), E(4), E(6)), 1.0 / 3, 1.0 / 6},
      {DecayProfile::varsigma(E(4), E(8)), 3.0 / 4, 1.0 / 2},
      {DecayProfile::k_profile(E(4)), 3.0 / 4, 1.0 / 2},
  };
  for (const auto& r : rows) {
    EXPECT_NEAR(r.profile(0.5), r.small, kTol) << r.profile.describe();
    EXPECT_NEAR(r.profile(1.0), r.small, kTol) << r.profile.describe();
    EXPECT_NEAR(r.profile(2.0), r.large, kTol) << r.profile.describe();
  }
}

TEST(Profiles, TwoCaseBranches) {
  // out = (4, 8), in = (2, 4): 1 - 1/4 > 1/2 at t <= 1 gives the second case.
  EXPECT_EQ(two_case_exponent(E(4), E(8), E(2), E(4), 0.5).branch, "B");
  EXPECT_EQ(two_case_exponent(E(4), E(8), E(2), E(4), 2.0).branch, "A");
  // out- = inf collapses to z(t).
  const auto v = two_case_exponent(Exponent::infinity(), Exponent::infinity(), E(2), E(4), 2.0);
  EXPECT_DOUBLE_EQ(v.value, 0.25);
}

// Decay beyond t = 1 never exceeds the short-time exponent.
TEST(Profiles, BranchInequalitiesSweep) {
  for (double pm = 2.0; pm <= 12.0; pm += 0.5)
    for (double extra = 0.0; extra <= 10.0; extra += 0.75) {
      const double pi = pm + extra;
      const auto th = DecayProfile::vartheta(E(pm), E(pi));
      EXPECT_LE(th(2.0), th(0.5) + kTol) << pm << " " << pi;
      const auto k = DecayProfile::k_profile(E(pi));
      EXPECT_LE(k(2.0), k(0.5) + kTol) << pi;
      const auto vs = DecayProfile::varsigma(E(pm), E(pi));
      EXPECT_LE(vs(2.0), vs(0.5) + kTol) << pm << " " << pi;
    }
}

TEST(Profiles, ConstantExponentsAreTimeIndependent) {
  for (double p : {2.0, 2.5, 3.0, 4.0, 9.0}) {
    const Exponent e = E(p);
    const DecayProfile profiles[] = {
        DecayProfile::vartheta(e, e), DecayProfile::varphi(e, e), DecayProfile::zeta(e, e),
        DecayProfile::omega_general(e, e, e, e, 1.0), DecayProfile::psi(e, e, e, e),
        DecayProfile::sigma(e, e, e, e), DecayProfile::varsigma(e, e)};
    for (const auto& d : profiles) EXPECT_NEAR(d(0.25), d(4.0), kTol) << d.describe();
    EXPECT_NEAR(DecayProfile::vartheta(e, e)(0.5), 1.0 / p, kTol);
  }
}

TEST(Profiles, HypothesesEnforced) {
  EXPECT_THROW(DecayProfile::vartheta(E(1.5), E(4)), HypothesisViolation);
  EXPECT_THROW(DecayProfile::vartheta(E(4), Exponent::infinity()), HypothesisViolation);
  EXPECT_THROW(DecayProfile::omega_general(E(2), E(4), E(3), E(5), 4.0), HypothesisViolation);
  EXPECT_THROW(DecayProfile::psi(E(3), E(4), E(2), E(5)), HypothesisViolation);
  EXPECT_THROW(DecayProfile::sigma(E(2), E(5), E(4), E(4)), HypothesisViolation);
  EXPECT_THROW(DecayProfile::k_profile(E(1.5)), HypothesisViolation);
  EXPECT_THROW(DecayProfile::zeta(E(2), E(3))(0.0), InvalidArgument);
}

TEST(Profiles, SigmaWithInfiniteTarget) {
  // 1/p_inf = 0 reduces both branches to 1/r- and 1/r+.
  const auto s = DecayProfile::sigma(E(2), E(4), Exponent::infinity(), Exponent::infinity());
  EXPECT_NEAR(s(0.5), 0.5, kTol);
  EXPECT_NEAR(s(2.0), 0.25, kTol);
}
