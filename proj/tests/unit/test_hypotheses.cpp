#include <gtest/gtest.h>

#include <algorithm>

#include "hypothesis_table.hpp"
#include "varexp/nse.hpp"

using namespace varexp;

TEST(Hypotheses, HandBuiltTable) {
  const auto cases = table::hypothesis_cases();
  EXPECT_EQ(cases.size(), 18u);
  for (const auto& c : cases) {
    const auto d = existence_hypotheses(c.theorem, c.inputs);
    std::string failed;
    for (const auto& h : d.checks)
      if (!h.pass) failed += h.condition + "; ";
    EXPECT_EQ(d.hypotheses_hold, c.expected) << c.name << " failed: " << failed;
  }
}

TEST(Hypotheses, EveryTheoremCovered) {
  const auto cases = table::hypothesis_cases();
  for (TheoremId id : all_theorems()) {
    const auto n_pass = std::ranges::count_if(cases, [&](const auto& c) { return c.theorem == id && c.expected; });
    const auto n_fail = std::ranges::count_if(cases, [&](const auto& c) { return c.theorem == id && !c.expected; });
    EXPECT_GE(n_pass, 1) << to_string(id);
    EXPECT_GE(n_fail, 1) << to_string(id);
    EXPECT_EQ(theorem_from_string(to_string(id)), id);
  }
}

TEST(Hypotheses, DeltaForConstantExponents) {
  const auto d = existence_hypotheses(TheoremId::local_lq,
                                      table::inputs(1.0, 3, table::constant_bounds(6), table::constant_bounds(12)));
  ASSERT_TRUE(d.delta);
  EXPECT_NEAR(*d.delta, 1.0 / 24.0, 1e-12);
  ASSERT_TRUE(d.time_profile);
  EXPECT_NEAR(*d.time_profile, 1.0 / 12.0, 1e-12);
}

TEST(Hypotheses, ExclusionBoundariesAcrossAlpha) {
  // q- <= 3/(2 alpha - 1) always fails the local L^q gate, whatever p-.
  for (double alpha : {0.6, 0.75, 0.9, 1.0}) {
    const double q = 3.0 / (2 * alpha - 1);
    const auto d = existence_hypotheses(
        TheoremId::local_lq, table::inputs(alpha, 3, table::constant_bounds(1e6), table::constant_bounds(q)));
    EXPECT_FALSE(d.hypotheses_hold) << alpha;
    const double p = 4 * alpha / (2 * alpha - 1);
    const auto e = existence_hypotheses(
        TheoremId::local_lq_cap_linf, table::inputs(alpha, 3, table::constant_bounds(p), table::constant_bounds(4)));
    EXPECT_FALSE(e.hypotheses_hold) << alpha;
  }
}

TEST(Hypotheses, UnevaluatedLogHolderFails) {
  auto in = table::inputs(1.0, 3, table::constant_bounds(100), table::bounds(10, 12, 12));
  in.q_log_holder.reset();
  const auto d = existence_hypotheses(TheoremId::local_lq, in);
  EXPECT_FALSE(d.hypotheses_hold);
  in.q_log_holder = true;
  EXPECT_TRUE(existence_hypotheses(TheoremId::local_lq, in).hypotheses_hold);
}

TEST(Hypotheses, InputsFromProblem) {
  ProblemSpec spec;
  spec.space = Grid::box(2, 32, 3.0, BoundaryMode::periodic);
  spec.p_time = ConstantExponent{Exponent::finite(6.0)};
  spec.q_space = ExponentialApproachExponent{12.0, 2.0, 1.0};
  const auto in = hypothesis_inputs(spec, 3);
  EXPECT_EQ(in.dim, 3);
  EXPECT_DOUBLE_EQ(in.q.minus.value(), 10.0);
  ASSERT_TRUE(in.q_log_holder);
  EXPECT_TRUE(*in.q_log_holder);
  const auto j = to_json(existence_hypotheses(TheoremId::local_lq, in));
  EXPECT_TRUE(j.contains("checks"));
  EXPECT_EQ(j["theorem"], "local_lq");
}
