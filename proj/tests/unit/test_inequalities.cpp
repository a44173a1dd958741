#include <gtest/gtest.h>

#include <cmath>

#include "varexp/errors.hpp"
#include "varexp/inequalities.hpp"

using namespace varexp;

namespace {

Exponent E(double v) { return Exponent::finite(v); }

VerificationSetup setup_1d(std::size_t nodes = 256, double L = 12.0, std::size_t count = 12) {
  VerificationSetup s;
  s.grid = Grid::box(1, nodes, L);
  s.corpus.count = count;
  s.corpus.seed = 21;
  s.t_grid = log_spaced(0.05, 20.0, 6);
  return s;
}

const ExponentDescriptor kA = SinusoidalExponent{1.0, 1.0, 1.0, 1.0};
const ExponentDescriptor kB = ExponentialApproachExponent{1.0, -1.0, 1.0};

void expect_anchored(const VerificationReport& r) {
  EXPECT_FALSE(r.anchor.empty()) << r.inequality_id;
  const std::string csv = to_csv(r);
  std::size_t rows = 0;
  for (std::size_t pos = csv.find('\n'); pos != std::string::npos && pos + 1 < csv.size(); pos = csv.find('\n', pos + 1)) {
    const std::string line = csv.substr(pos + 1, csv.find('\n', pos + 1) - pos - 1);
    EXPECT_NE(line.find(r.inequality_id), std::string::npos);
    ++rows;
  }
  EXPECT_EQ(rows, r.ratios.size());
}

}  // namespace

TEST(IntersectionYoung, ConstantOneOnCorpus) {
  const auto r = verify_intersection_young(setup_1d(), {E(3), E(3), E(3), kA, kB});
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_LE(r.max_ratio, 1.0 + 1e-6);
  EXPECT_EQ(r.ratios.size(), 12u);
  expect_anchored(r);
}

// Extreme pairs: a narrow spike against a wide plateau in both orders.
TEST(IntersectionYoung, AdversarialPairs) {
  const VerificationSetup s = setup_1d();
  const Grid& g = s.grid;
  auto spike = GridFunction::sample(g, [](const Point& x) { return std::exp(-50.0 * x[0] * x[0]); });
  auto wide = GridFunction::sample(g, [](const Point& x) { return std::exp(-0.05 * x[0] * x[0]); });
  auto signed_f = GridFunction::sample(g, [](const Point& x) { return std::sin(2 * x[0]) * std::exp(-0.2 * x[0] * x[0]); });
  const std::vector<std::pair<GridFunction, GridFunction>> extra{{spike, wide}, {wide, spike}, {signed_f, signed_f}};
  const auto r = verify_intersection_young(s, {E(3), E(3), E(3), kA, kB}, extra);
  EXPECT_EQ(r.ratios.size(), 12u + extra.size());
  EXPECT_LE(r.max_ratio, 1.0 + 1e-6);
}

TEST(IntersectionYoung, RejectsExponentsOffTheRelation) {
  EXPECT_ANY_THROW(verify_intersection_young(setup_1d(), {E(2), E(3), E(3), kA, kB}));
}

TEST(IntersectionYoung, VariableR) {
  VariableRExponents e{E(2), E(2), ExponentialApproachExponent{3.0, 1.0, 1.0},
                       SinusoidalExponent{1.0, 0.5, 1.0, 1.0}, ExponentialApproachExponent{1.0, -0.5, 1.0}};
  const auto r = verify_intersection_young_variable_r(setup_1d(), e);
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_LE(r.max_ratio, 1.0 + 1e-6);
}

TEST(YoungConstantR, ConstantWithinTwoAEta) {
  const auto s = setup_1d();
  const auto r = verify_young_constant_r(s, ExponentialApproachExponent{6.0, 2.0, 1.0}, E(8));
  EXPECT_NE(r.verdict, Verdict::fail);
  EXPECT_GT(r.max_ratio, 0.0);
  EXPECT_TRUE(std::isfinite(r.max_ratio));
}

TEST(EtaLemma, ProfileSelection) {
  const Grid g = Grid::box(1, 64, 8.0);
  EXPECT_EQ(eta_lemma_profile(build_exponent(ExponentialApproachExponent{6.0, 2.0, 1.0}, g)).kind(),
            ProfileKind::vartheta);
  EXPECT_EQ(eta_lemma_profile(build_exponent(PiecewiseInfinityExponent{4.0, 1.0, Exponent::infinity()}, g)).kind(),
            ProfileKind::vartheta_infty);
  EXPECT_EQ(eta_lemma_profile(build_exponent(ExponentialApproachExponent{4.0, -2.0, 1.0}, g)).kind(),
            ProfileKind::varphi);
}

TEST(EtaLemma, RatiosFiniteOverT) {
  const auto r = eta_halfexp_check(setup_1d(), ExponentialApproachExponent{6.0, 2.0, 1.0}, 4.0);
  EXPECT_EQ(r.verdict, Verdict::measured);
  EXPECT_EQ(r.ratios.size(), 12u * 6u);
  for (const auto& s : r.ratios) EXPECT_TRUE(std::isfinite(s.ratio) && s.ratio > 0.0);
  expect_anchored(r);
}

// Kernels narrower than the spacing keep their mass under cell averaging.
TEST(EtaLemma, StableUnderRefinement) {
  auto s = setup_1d(256, 16.0, 24);
  s.resolution_study = true;
  const auto r = eta_halfexp_check(s, ExponentialApproachExponent{6.0, 2.0, 1.0}, 4.0);
  ASSERT_TRUE(r.resolution_stability);
  EXPECT_NEAR(*r.resolution_stability, 1.0, 0.01);
}

TEST(FourAssertion, FourReportsWithBranches) {
  const auto reps = four_assertion_check(setup_1d(512, 16.0), {ExponentialApproachExponent{4.0, -2.0, 1.0},
                                                              ExponentialApproachExponent{3.0, 1.0, 1.0}, 1.5, 4.0});
  ASSERT_EQ(reps.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(reps[static_cast<std::size_t>(i)].inequality_id, "four_assertion_" + std::to_string(i + 1));
  for (const auto& s : reps[1].ratios) EXPECT_TRUE(s.branch == "A" || s.branch == "B");
  for (const auto& r : reps) EXPECT_NE(r.verdict, Verdict::refused) << r.inequality_id;
}

TEST(FourAssertion, RefusesWhenOneNotInLs) {
  // p -> 6 at infinity while p- = 4: 1/s -> 1/12 and ||1||_s grows with the box.
  const auto reps = four_assertion_check(setup_1d(), {ExponentialApproachExponent{6.0, 2.0, 1.0},
                                                     ExponentialApproachExponent{3.0, 1.0, 1.0}, 1.5, 4.0});
  EXPECT_EQ(reps[3].verdict, Verdict::refused);
}

TEST(Product, EffectiveExponentSixSevenths) {
  EXPECT_NEAR(product_effective_exponent(E(2), E(49.0 / 20), 3.5, 3, 0.5), 6.0 / 7.0, 1e-12);
  EXPECT_NEAR(product_effective_exponent(E(2), E(2.3), 3.5, 3, 0.5), 6.0 / 7.0, 1e-12);
  EXPECT_GT(product_effective_exponent(E(2), E(3.0), 3.5, 3, 0.5), 6.0 / 7.0);
}

TEST(Product, VariantsRunOrRefuse) {
  const auto s = setup_1d();
  const ExponentDescriptor q = ExponentialApproachExponent{6.0, 2.0, 0.5};
  EXPECT_EQ(product_lemma_check(s, q, ProductVariant::l_two, 2.0, 4.0).verdict, Verdict::measured);
  EXPECT_EQ(product_lemma_check(s, q, ProductVariant::l_nu, 6.0, 4.0).verdict, Verdict::measured);
  // plain needs q- = q_inf
  EXPECT_THROW(product_lemma_check(s, q, ProductVariant::plain, 2.0, 4.0), HypothesisViolation);
  const ExponentDescriptor q2 = ExponentialApproachExponent{2.0, -1.0, 1.0};
  EXPECT_EQ(product_lemma_check(s, q2, ProductVariant::plain_two, 2.0, 4.0).verdict, Verdict::measured);
}

TEST(Holder, PassesOnCorpus) {
  auto s = setup_1d();
  s.resolution_study = true;
  const auto r = verify_holder(s, ExponentialApproachExponent{6.0, 2.0, 1.0}, SinusoidalExponent{2.0, 1.0, 1.0, 1.0});
  EXPECT_EQ(r.verdict, Verdict::pass);
  ASSERT_TRUE(r.resolution_stability);
  EXPECT_NEAR(*r.resolution_stability, 1.0, 0.1);
}

TEST(Minkowski, PassesOnCorpus) {
  EXPECT_EQ(verify_minkowski(setup_1d(), AffineRadialExponent{2.0, 0.05}).verdict, Verdict::pass);
}

TEST(Embedding, RequiresPointwiseOrder) {
  const auto s = setup_1d();
  const ExponentDescriptor lo = ExponentialApproachExponent{3.0, 1.0, 1.0};
  const ExponentDescriptor hi = ExponentialApproachExponent{6.0, 2.0, 1.0};
  EXPECT_EQ(verify_embedding(s, lo, hi).verdict, Verdict::pass);
  EXPECT_ANY_THROW(verify_embedding(s, hi, lo));
}

TEST(Report, JsonIsDeterministicAndVersioned) {
  const auto a = verify_holder(setup_1d(), ExponentialApproachExponent{6.0, 2.0, 1.0}, ConstantExponent{E(2)});
  const auto b = verify_holder(setup_1d(), ExponentialApproachExponent{6.0, 2.0, 1.0}, ConstantExponent{E(2)});
  EXPECT_EQ(dump_json(to_json(a)), dump_json(to_json(b)));
  EXPECT_EQ(json_number(std::numeric_limits<double>::infinity()), "inf");
}
