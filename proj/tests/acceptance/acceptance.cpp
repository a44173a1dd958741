// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "app/runner.hpp"
#include "fields.hpp"
#include "hypothesis_table.hpp"
#include "oracles.hpp"
#include "varexp/decay.hpp"
#include "varexp/inequalities.hpp"
#include "varexp/norms.hpp"
#include "varexp/nse.hpp"
#include "varexp/semigroup.hpp"

using namespace varexp;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Exponent E(double v) { return Exponent::finite(v); }

// 1. Luxemburg norm against closed-form discrete L^p norms.
Outcome luxemburg_oracle() {
  const Grid g = Grid::box(1, 400, 5.0);
  Rng rng(20240601);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const GridFunction f = oracle::random_function(g, rng);
    for (double p : {1.0, 1.5, 2.0, 3.0, std::numeric_limits<double>::infinity()}) {
      const Exponent e = std::isinf(p) ? Exponent::infinity() : E(p);
      const double got = luxemburg_norm(f, constant_exponent(e, g), 1e-13);
      const double want = oracle::discrete_lp(f, p);
      worst = std::max(worst, std::abs(got - want) / want);
    }
  }
  return {worst < 1e-8, fmt("max relative error %.2e over 100 cases", worst)};
}

// 2. ||1|| for s(x) = 1 + |x| on the line.
Outcome one_in_ls_example() {
  const Grid g = Grid::box(1, 1600, 40.0);
  const auto r = one_in_Ls(build_exponent(AffineRadialExponent{1.0, 1.0}, g));
  const double root = oracle::lambda_log_root(2.0);
  const bool ok = r.stabilized && std::abs(r.value - root) < 1e-3 && r.value <= std::exp(2.0);
  return {ok, fmt("||1|| = %.6f, root of lambda ln lambda = 2 is %.6f, e^2 = %.3f", r.value, root, std::exp(2.0))};
}

// 3. Intersection Young with constant 1.
Outcome intersection_young_constant_one() {
  VerificationSetup s;
  s.grid = Grid::box(1, 512, 16.0);
  s.corpus.count = 24;
  s.corpus.seed = 3;
  const auto r = verify_intersection_young(
      s, {E(3), E(3), E(3), SinusoidalExponent{1.0, 1.0, 1.0, 1.0}, ExponentialApproachExponent{1.0, -1.0, 1.0}});
  const bool ok = r.ratios.size() == 24 && r.max_ratio <= 1.0 + 1e-6;
  return {ok, fmt("%g pairs, max ratio %.6f", static_cast<double>(r.ratios.size()), r.max_ratio)};
}

// 4. Classical smoothing rate recovered by the log-log fit.
Outcome smoothing_slope_fit() {
  const Grid g = Grid::box(1, 65536, 512.0);
  const auto t = log_spaced(4.0, 400.0, 13);
  double worst = 0.0;
  std::string detail;
  for (double alpha : {0.75, 1.0}) {
    const SlopeFit fit = smoothing_slope(g, alpha, 2.0, 4.0, t, 0.6);
    worst = std::max(worst, std::abs(fit.slope - fit.expected));
    detail += fmt("alpha=%.2f slope %.5f vs %.5f; ", alpha, fit.slope, fit.expected);
  }
  return {worst <= 0.02, detail + fmt("max error %.4f", worst)};
}

// 5. Decay profiles, the product effective exponent and delta.
Outcome decay_profiles() {
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
  double err = 0.0;
  for (const auto& r : rows) err = std::max({err, std::abs(r.profile(0.5) - r.small), std::abs(r.profile(2.0) - r.large)});
  err = std::max(err, std::abs(product_effective_exponent(E(2), E(49.0 / 20), 3.5, 3, 0.5) - 6.0 / 7.0));
  const auto d = existence_hypotheses(TheoremId::local_lq,
                                      table::inputs(1.0, 3, table::constant_bounds(6), table::constant_bounds(12)));
  err = std::max(err, d.delta ? std::abs(*d.delta - 1.0 / 24.0) : 1.0);

  bool branches = true;
  for (double pm = 2.0; pm <= 12.0; pm += 0.5)
    for (double extra = 0.0; extra <= 10.0; extra += 0.75) {
      const auto th = DecayProfile::vartheta(E(pm), E(pm + extra));
      const auto k = DecayProfile::k_profile(E(pm + extra));
      branches = branches && th(2.0) <= th(0.5) + 1e-12 && k(2.0) <= k(0.5) + 1e-12;
    }
  bool constant = true;
  for (double p : {2.0, 3.0, 4.0, 9.0}) {
    const Exponent e = E(p);
    for (const auto& pr : {DecayProfile::vartheta(e, e), DecayProfile::varphi(e, e), DecayProfile::zeta(e, e),
                           DecayProfile::omega_general(e, e, e, e, 1.0), DecayProfile::psi(e, e, e, e),
                           DecayProfile::sigma(e, e, e, e), DecayProfile::varsigma(e, e)})
      constant = constant && std::abs(pr(0.25) - pr(4.0)) < 1e-12;
  }
  return {err < 1e-12 && branches && constant,
          fmt("max formula error %.1e", err) + (branches ? ", branch inequalities hold" : ", branch inequality violated") +
              (constant ? ", constant exponents t-independent" : ", constant exponents drift in t")};
}

// 6. eta-lemma ratios are resolution stable.
Outcome eta_stability() {
  auto at = [](std::size_t nodes) {
    VerificationSetup s;
    s.grid = Grid::box(1, nodes, 16.0);
    s.corpus.count = 24;
    s.corpus.seed = 7;
    return eta_halfexp_check(s, ExponentialApproachExponent{6.0, 2.0, 1.0}, 4.0).max_ratio;
  };
  const double a = at(256), b = at(512);
  const double drift = std::abs(b / a - 1.0);
  return {std::isfinite(a) && std::isfinite(b) && drift < 0.15,
          fmt("max ratio %.6f (N=256) vs %.6f (N=512), drift %.2e", a, b, drift)};
}

// 7. Bilinear operator against direct quadrature.
Outcome bilinear_oracle() {
  const Grid g = fields::periodic_square(64);
  const Grid time = Grid::time_axis(0.5, 16);
  const auto u = fields::sample(g, time, fields::shear_x);
  const auto v = fields::sample(g, time, fields::shear_y);
  const VelocityField b = bilinear_B(u, v, 1.0);
  struct Probe {
    std::size_t k;
    Point xi;
  };
  const Probe probes[] = {{3, {1.0, 1.0, 0.0}}, {9, {1.0, -1.0, 0.0}}, {15, {-1.0, 1.0, 0.0}}};
  double worst = 0.0;
  for (const auto& p : probes) {
    const auto want = oracle::bilinear_mode(g, fields::shear_x, fields::shear_y, 1.0, time.coordinate(p.k), p.xi);
    double num = 0.0, den = 0.0;
    for (int c = 0; c < 2; ++c) {
      num += std::norm(oracle::coefficient(b.field.slice(p.k, c), p.xi) - want[static_cast<std::size_t>(c)]);
      den += std::norm(want[static_cast<std::size_t>(c)]);
    }
    worst = std::max(worst, den > 0.0 ? std::sqrt(num / den) : 1.0);
  }
  return {worst < 1e-6, fmt("max relative error %.2e over 3 probes", worst)};
}

// 8. Picard iteration for seeded small data, plus the linear closed form.
Outcome picard_fixed_point() {
  ProblemSpec spec;
  spec.space = fields::periodic_square(64);
  spec.alpha = 1.0;
  spec.horizon = 0.5;
  spec.time_steps = 32;
  spec.u0 = vortex_field(spec.space, seeded_vortices(spec.space, 2024, 3, 0.5));
  for (auto& c : spec.u0) c = c.scaled(0.05);
  PicardOptions opt;
  opt.max_iters = 12;
  const PicardResult r = picard_solve(spec, opt);
  const auto corpus = divergence_free_corpus(spec.space, spec.time(), 5, 4);
  const double margin = 4.0 * measure_CB(spec, corpus) * r.e0_norm;
  bool ratios = true;
  for (double c : r.contraction_ratios) ratios = ratios && c < 1.0;
  const bool nonlinear_ok = margin < 1.0 && r.converged && r.iterations <= 12 && r.mild_residual < 1e-6 && ratios &&
                            r.u_norm <= 2.0 * r.e0_norm + 1e-6;

  ProblemSpec lin = spec;
  lin.u0 = {GridFunction::sample(lin.space, [](const Point& x) { return std::sin(x[1]) + 0.5 * std::cos(2 * x[1]); }),
            GridFunction::sample(lin.space, [](const Point& x) { return std::sin(3 * x[0]); })};
  PicardOptions lopt;
  lopt.nonlinear = false;
  const PicardResult l = picard_solve(lin, lopt);
  const auto exact = fields::sample(lin.space, lin.time(), [](double t, const Point& x, int c) {
    return c == 0 ? std::exp(-t) * std::sin(x[1]) + 0.5 * std::exp(-4 * t) * std::cos(2 * x[1])
                  : std::exp(-9 * t) * std::sin(3 * x[0]);
  });
  double lin_err = 0.0;
  for (std::size_t k = 0; k < exact.field.time_count(); ++k)
    for (int c = 0; c < 2; ++c) {
      const auto a = l.u.field.values(k, c), b = exact.field.values(k, c);
      for (std::size_t i = 0; i < a.size(); ++i) lin_err = std::max(lin_err, std::abs(a[i] - b[i]));
    }
  std::ostringstream d;
  d << "margin " << margin << ", iterations " << r.iterations << ", mild residual " << r.mild_residual
    << ", ||u|| " << r.u_norm << " vs 2||e0|| " << 2.0 * r.e0_norm << ", linear error " << lin_err;
  return {nonlinear_ok && lin_err < 1e-8, d.str()};
}

// 9. Theorem gates on the hand-built table.
Outcome hypothesis_table() {
  const auto cases = table::hypothesis_cases();
  std::string bad;
  for (const auto& c : cases)
    if (existence_hypotheses(c.theorem, c.inputs).hypotheses_hold != c.expected) bad += " " + c.name;
  return {bad.empty() && cases.size() == 18,
          std::to_string(cases.size()) + " cases" + (bad.empty() ? ", no mismatches" : ", mismatches:" + bad)};
}

// 10. Repeated runs produce byte-identical outputs.
Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "varexp_acceptance_determinism";
  fs::remove_all(root);
  std::string detail;
  bool ok = true;
  for (const auto& [cmd, cfg] : {std::pair{app::Command::verify, "verify_young.json"},
                                 std::pair{app::Command::solve, "solve.json"}}) {
    std::vector<fs::path> dirs;
    for (int rep = 0; rep < 2; ++rep) {
      app::CliOptions o;
      o.command = cmd;
      o.config_path = std::string(VAREXP_CONFIG_DIR) + "/" + cfg;
      o.out_dir = (root / (std::string(cfg) + std::to_string(rep))).string();
      std::ostringstream log;
      if (app::run(o, log) != app::kExitOk) ok = false;
      dirs.emplace_back(*o.out_dir);
    }
    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      // the manifest records wall-clock times
      if (entry.path().filename() == "manifest.json") continue;
      auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(f), {});
      };
      const fs::path other = dirs[1] / entry.path().filename();
      ok = ok && fs::exists(other) && slurp(entry.path()) == slurp(other);
      ++compared;
    }
    ok = ok && compared > 0;
    detail += std::string(cfg) + ": " + std::to_string(compared) + " files; ";
  }
  fs::remove_all(root);
  return {ok, detail + (ok ? "identical" : "differences found")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"luxemburg norm matches discrete L^p", luxemburg_oracle},
      {"||1|| in L^{1+|x|} equals root of lambda ln lambda = 2", one_in_ls_example},
      {"intersection Young with constant 1", intersection_young_constant_one},
      {"classical smoothing slope", smoothing_slope_fit},
      {"decay profile formulas", decay_profiles},
      {"eta-lemma ratio stability", eta_stability},
      {"bilinear operator vs direct quadrature", bilinear_oracle},
      {"Picard fixed point and linear closed form", picard_fixed_point},
      {"existence theorem gates", hypothesis_table},
      {"determinism", determinism},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2d %s (%.1f s): %s\n", o.ok ? "PASS" : "FAIL", index++, name, secs, o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
