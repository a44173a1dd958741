#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fields.hpp"
#include "oracles.hpp"
#include "varexp/errors.hpp"
#include "varexp/nse.hpp"

using namespace varexp;

namespace {

double field_max_diff(const VelocityField& a, const VelocityField& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.field.time_count(); ++k)
    for (int c = 0; c < a.field.components(); ++c) {
      const auto x = a.field.values(k, c), y = b.field.values(k, c);
      for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    }
  return m;
}

ProblemSpec small_problem(double amplitude) {
  ProblemSpec spec;
  spec.space = fields::periodic_square();
  spec.alpha = 1.0;
  spec.horizon = 0.5;
  spec.time_steps = 32;
  spec.u0 = vortex_field(spec.space, seeded_vortices(spec.space, 11, 2, 0.5));
  for (auto& c : spec.u0) c = c.scaled(amplitude);
  return spec;
}

}  // namespace

TEST(Leray, IdempotentAndDivergenceFree) {
  const Grid g = fields::periodic_square(32);
  VectorField u{GridFunction::sample(g, [](const Point& x) { return std::cos(x[0]) + std::sin(x[1]); }),
                GridFunction::sample(g, [](const Point& x) { return std::sin(2 * x[0]) * std::cos(x[1]); })};
  EXPECT_GT(max_divergence(u), 0.1);
  const VectorField p = leray_project(u);
  EXPECT_LT(max_divergence(p), 1e-12);
  const VectorField pp = leray_project(p);
  for (int c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(pp[static_cast<std::size_t>(c)][i], p[static_cast<std::size_t>(c)][i], 1e-13);
}

TEST(Leray, GradientsAreRemoved) {
  const Grid g = fields::periodic_square(32);
  // grad(sin x cos y)
  VectorField u{GridFunction::sample(g, [](const Point& x) { return std::cos(x[0]) * std::cos(x[1]); }),
                GridFunction::sample(g, [](const Point& x) { return -std::sin(x[0]) * std::sin(x[1]); })};
  for (const auto& c : leray_project(u)) EXPECT_LT(c.sup_abs(), 1e-13);
}

TEST(Vortex, DivergenceFreeIn2DAnd3D) {
  const Grid g2 = fields::periodic_square(48);
  EXPECT_LT(max_divergence(vortex_field(g2, seeded_vortices(g2, 3, 3, 0.6))), 1e-10);
  const Grid g3 = Grid::box(3, 16, std::numbers::pi, BoundaryMode::periodic);
  EXPECT_LT(max_divergence(vortex_field(g3, seeded_vortices(g3, 3, 2, 0.8))), 1e-10);
}

TEST(Bilinear, MatchesDirectQuadratureOracle) {
  const Grid g = fields::periodic_square(32);
  const Grid time = Grid::time_axis(0.5, 16);
  const auto u = fields::sample(g, time, fields::shear_x);
  const auto v = fields::sample(g, time, fields::shear_y);
  const VelocityField b = bilinear_B(u, v, 1.0);
  const std::size_t k = 9;
  const Point xi{1.0, 1.0, 0.0};
  const auto want = oracle::bilinear_mode(g, fields::shear_x, fields::shear_y, 1.0, time.coordinate(k), xi);
  double num = 0.0, den = 0.0;
  for (int c = 0; c < 2; ++c) {
    const auto got = oracle::coefficient(b.field.slice(k, c), xi);
    num += std::norm(got - want[static_cast<std::size_t>(c)]);
    den += std::norm(want[static_cast<std::size_t>(c)]);
  }
  ASSERT_GT(den, 1e-6);
  EXPECT_LT(std::sqrt(num / den), 1e-6);
}

TEST(Bilinear, IsBilinearAndDivergenceFree) {
  const Grid g = fields::periodic_square(32);
  const Grid time = Grid::time_axis(0.5, 16);
  const auto u = fields::sample(g, time, fields::shear_x);
  const auto v = fields::sample(g, time, fields::shear_y);
  const auto u3 = fields::sample(g, time, [](double s, const Point& x, int c) { return 3.0 * fields::shear_x(s, x, c); });
  const VelocityField b = bilinear_B(u, v, 0.8);
  const VelocityField b3 = bilinear_B(u3, v, 0.8);
  for (std::size_t k = 0; k < time.size(); ++k)
    for (int c = 0; c < 2; ++c) {
      const auto x = b.field.values(k, c), y = b3.field.values(k, c);
      for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(y[i], 3.0 * x[i], 1e-12);
    }
  EXPECT_LT(max_divergence(b), 1e-12);
}

// A shear flow is a steady Euler solution: (u.grad)u = 0 and B(u, u) = 0.
TEST(Bilinear, ShearFlowHasNoSelfInteraction) {
  const Grid g = fields::periodic_square(32);
  const auto u = fields::sample(g, Grid::time_axis(0.5, 8), fields::shear_x);
  for (int c = 0; c < 2; ++c) EXPECT_LT(bilinear_B(u, u, 1.0).field.slice(5, c).sup_abs(), 1e-13);
}

TEST(E0, LinearEvolutionMatchesClosedForm) {
  ProblemSpec spec;
  spec.space = fields::periodic_square();
  spec.u0 = {GridFunction::sample(spec.space, [](const Point& x) { return std::sin(x[1]) + std::cos(3 * x[1]); }),
             GridFunction::sample(spec.space, [](const Point& x) { return std::sin(2 * x[0]); })};
  const VelocityField e0 = e0_term(spec);
  const Grid time = spec.time();
  auto exact = fields::sample(spec.space, time, [](double t, const Point& x, int c) {
    return c == 0 ? std::exp(-t) * std::sin(x[1]) + std::exp(-9 * t) * std::cos(3 * x[1])
                  : std::exp(-4 * t) * std::sin(2 * x[0]);
  });
  EXPECT_LT(field_max_diff(e0, exact), 1e-12);
}

TEST(E0, SteadyForcingReachesItsEquilibrium) {
  // u_t = Delta u + f with f = sin(y) e_x and u0 = 0: u = (1 - e^{-t}) sin(y) e_x.
  ProblemSpec spec;
  spec.space = fields::periodic_square(32);
  spec.u0 = {GridFunction(spec.space), GridFunction(spec.space)};
  spec.forcing = steady_velocity({GridFunction::sample(spec.space, [](const Point& x) { return std::sin(x[1]); }),
                                  GridFunction(spec.space)},
                                 spec.time());
  const auto exact = fields::sample(spec.space, spec.time(), [](double t, const Point& x, int c) {
    return c == 0 ? (1.0 - std::exp(-t)) * std::sin(x[1]) : 0.0;
  });
  EXPECT_LT(field_max_diff(e0_term(spec), exact), 1e-12);
}

TEST(Picard, SmallDataConverges) {
  const ProblemSpec spec = small_problem(0.05);
  PicardOptions opt;
  opt.max_iters = 12;
  const PicardResult r = picard_solve(spec, opt);
  ASSERT_TRUE(r.converged);
  for (double c : r.contraction_ratios) EXPECT_LT(c, 1.0);
  EXPECT_LE(r.u_norm, 2.0 * r.e0_norm + 1e-6);
  EXPECT_LT(r.mild_residual, 1e-6);
  EXPECT_LE(mild_residual(r.u, spec), opt.residual_tol * 2.0);
}

TEST(Picard, ResidualGrowsWithPerturbation) {
  const ProblemSpec spec = small_problem(0.05);
  const PicardResult r = picard_solve(spec);
  double previous = mild_residual(r.u, spec);
  // eps t sin(2y) e_x: smooth in time and zero at t = 0
  const auto bump = fields::sample(spec.space, spec.time(), [](double t, const Point& x, int c) {
    return c == 0 ? t * std::sin(2 * x[1]) : 0.0;
  });
  for (double eps : {1e-4, 1e-3, 1e-2}) {
    VelocityField p = r.u;
    for (std::size_t k = 0; k < p.field.time_count(); ++k) {
      auto vals = p.field.values(k, 0);
      const auto add = bump.field.values(k, 0);
      for (std::size_t i = 0; i < vals.size(); ++i) vals[i] += eps * add[i];
    }
    const double res = mild_residual(p, spec);
    EXPECT_GT(res, previous);
    previous = res;
  }
}

TEST(Picard, LargeDataAborts) {
  ProblemSpec spec = small_problem(60.0);
  EXPECT_THROW(picard_solve(spec), NumericalAbort);
}

TEST(Picard, DampingStillConverges) {
  PicardOptions opt;
  opt.damping = 0.7;
  opt.max_iters = 80;
  EXPECT_TRUE(picard_solve(small_problem(0.05), opt).converged);
  opt.damping = 0.0;
  EXPECT_THROW(picard_solve(small_problem(0.05), opt), InvalidArgument);
}

TEST(Validate, RejectsBadProblems) {
  ProblemSpec spec = small_problem(0.05);
  spec.alpha = 0.5;
  EXPECT_THROW(validate(spec), InvalidArgument);
  spec = small_problem(0.05);
  spec.u0[0] = GridFunction::sample(spec.space, [](const Point& x) { return std::sin(x[0]); });
  EXPECT_THROW(validate(spec), InvalidArgument);
  spec = small_problem(0.05);
  spec.space = Grid::box(2, 64, std::numbers::pi);  // truncated
  EXPECT_THROW(validate(spec), InvalidArgument);
}

TEST(ContractionConstant, MeasuredOnCorpus) {
  const ProblemSpec spec = small_problem(0.05);
  const auto corpus = divergence_free_corpus(spec.space, spec.time(), 5, 3);
  ASSERT_EQ(corpus.size(), 3u);
  for (const auto& f : corpus) EXPECT_LT(max_divergence(f), 1e-10);
  const double cb = measure_CB(spec, corpus);
  EXPECT_GT(cb, 0.0);
  EXPECT_TRUE(std::isfinite(cb));
  EXPECT_EQ(cb, measure_CB(spec, corpus));
}
