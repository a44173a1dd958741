#include "varexp/semigroup.hpp"

#include <algorithm>
#include <cmath>

#include "varexp/errors.hpp"
#include "varexp/kernels.hpp"
#include "varexp/parallel.hpp"
#include "varexp/spectral.hpp"

namespace varexp {

namespace {

void check_aliasing(const GridFunction& in, const GridFunction& out, const SpectralOptions& options) {
  // Only mass pushed outward by the flow counts; periodic data may already
  // live near the edge.
  const double grown = boundary_mass(out) - boundary_mass(in);
  if (grown > options.severe_aliasing)
    throw AliasingError("semigroup output carries " + std::to_string(grown) +
                        " extra boundary mass; enlarge the box");
}

nlohmann::json exponent_summary(const ExponentField& p) {
  nlohmann::json j = {{"label", p.label()}, {"minus", to_json(p.minus())}, {"plus", to_json(p.plus())}};
  j["limit"] = p.limit() ? to_json(*p.limit()) : nlohmann::json(nullptr);
  if (p.descriptor()) j["descriptor"] = to_json(*p.descriptor());
  return j;
}

}  // namespace

GridFunction apply_semigroup(const GridFunction& u0, double alpha, double t,
                             const SpectralOptions& options) {
  if (!(t >= 0.0)) throw InvalidArgument("semigroup time must be >= 0");
  if (t == 0.0) return u0;
  GridFunction out = apply_multiplier(u0, heat_multiplier(alpha, t, u0.grid()));
  check_aliasing(u0, out, options);
  return out;
}

GridFunction apply_derivative_semigroup(const GridFunction& u0, double alpha, double t, double kappa,
                                        const SpectralOptions& options) {
  if (!(kappa >= 0.0)) throw InvalidArgument("kappa must be >= 0");
  if (kappa > 0.0 && !(t > 0.0))
    throw InvalidArgument("derivative semigroup at t = 0 is unbounded; need t > 0");
  if (kappa == 0.0) return apply_semigroup(u0, alpha, t, options);
  GridFunction out = apply_multiplier(u0, heat_derivative_multiplier(alpha, t, kappa, u0.grid()));
  check_aliasing(u0, out, options);
  return out;
}

std::string to_string(SmoothingVariant v) {
  switch (v) {
    case SmoothingVariant::sigma: return "sigma";
    case SmoothingVariant::omega: return "omega";
    case SmoothingVariant::psi: return "psi";
  }
  return "unknown";
}

DecayProfile smoothing_profile(const ExponentField& r, const ExponentField& p, SmoothingVariant variant,
                               double nu) {
  switch (variant) {
    case SmoothingVariant::sigma: {
      if (!p.limit()) throw HypothesisViolation("p has a limit at infinity");
      return DecayProfile::sigma(r.minus(), r.plus(), p.plus(), *p.limit());
    }
    case SmoothingVariant::omega:
      return DecayProfile::omega_general(r.minus(), r.plus(), p.minus(), p.plus(), nu);
    case SmoothingVariant::psi:
      if (!r.limit() || !(*r.limit() == r.minus())) throw HypothesisViolation("r_inf = r-");
      return DecayProfile::psi(r.minus(), r.plus(), p.minus(), p.plus());
  }
  throw InvalidArgument("unknown smoothing variant");
}

VerificationReport smoothing_check(const VerificationSetup& setup, const SmoothingInputs& in) {
  VerificationReport rep;
  rep.inequality_id = "smoothing_" + to_string(in.variant);
  switch (in.variant) {
    case SmoothingVariant::sigma:
      rep.anchor = "||g_{alpha,t} * phi||_{L^p(.)} <= C t^{-n sigma(t)/(2 alpha)} ||phi||_{L^r(.)}, r+ <= p+ = p_inf or p+ = inf";
      break;
    case SmoothingVariant::omega:
      rep.anchor = "||g_{alpha,t} * phi||_{L^p(.)} <= C t^{-n omega(t)/(2 alpha)} ||phi||_{L^r(.) cap L^nu}, 1 <= nu <= p-";
      rep.parameters["nu"] = in.nu;
      break;
    case SmoothingVariant::psi:
      rep.anchor = "||g_{alpha,t} * phi||_{L^p(.)} <= C t^{-n psi(t)/(2 alpha)} ||phi||_{L^r(.)}, r_inf = r- <= p-";
      break;
  }
  rep.corpus = to_json(setup.corpus);
  rep.t_grid = setup.t_grid;
  rep.parameters["alpha"] = in.alpha;
  rep.parameters["dim"] = setup.grid.dim();
  rep.parameters["nodes"] = setup.grid.nodes();
  rep.parameters["half_width"] = setup.grid.half_width();

  auto run = [&](const Grid& g, VerificationReport* out) {
    const ExponentField r = build_exponent(in.r, g), p = build_exponent(in.p, g);
    const DecayProfile d = smoothing_profile(r, p, in.variant, in.nu);
    std::vector<ExponentField> input{r};
    if (in.variant == SmoothingVariant::omega) input.push_back(constant_exponent(Exponent::finite(in.nu), g));
    if (out) {
      out->exponents = {{"r", exponent_summary(r)}, {"p", exponent_summary(p)}};
      out->parameters["profile"] = d.describe();
      if (in.variant == SmoothingVariant::sigma && (r.plus().is_infinite() || p.plus().is_infinite()))
        out->notes.push_back("sigma evaluated with 1/inf = 0 at an infinite endpoint");
    }
    const auto corpus = generate_corpus(setup.corpus, g);
    const int n = g.dim();
    const std::size_t nt = setup.t_grid.size();
    std::vector<RatioSample> samples(corpus.size() * nt);
    parallel_for(corpus.size(), [&](std::size_t i) {
      const GridFunction& phi = corpus[i].f;
      const double denom = intersection_norm(phi, input, setup.tol);
      for (std::size_t k = 0; k < nt; ++k) {
        const double t = setup.t_grid[k];
        const ProfileValue dv = d.evaluate(t);
        double ratio = 0.0;
        if (denom > 0.0) {
          const double lhs = luxemburg_norm(apply_semigroup(phi, in.alpha, t), p, setup.tol);
          ratio = lhs * std::pow(t, n * dv.value / (2.0 * in.alpha)) / denom;
        }
        samples[i * nt + k] = {i, t, ratio, dv.branch};
      }
    });
    double mx = 0.0;
    for (const auto& s : samples) {
      mx = std::max(mx, s.ratio);
      if (out) out->add(s);
    }
    return mx;
  };

  const double base = run(setup.grid, &rep);
  if (setup.resolution_study) {
    const double fine = run(setup.grid.refined(2), nullptr);
    rep.resolution_stability = base > 0.0 ? fine / base : 0.0;
  }

  const ExponentField r = build_exponent(in.r, setup.grid), p = build_exponent(in.p, setup.grid);
  if (in.fit_slope && r.is_constant() && p.is_constant() && !p.plus().is_infinite()) {
    const SlopeFit fit = smoothing_slope(setup.grid, in.alpha, r.minus().value(), p.minus().value(),
                                         setup.t_grid, in.slope_window);
    rep.parameters["fitted_slope"] = fit.slope;
    rep.parameters["expected_slope"] = fit.expected;
    rep.parameters["slope_points"] = fit.points;
  }
  rep.finalize();
  return rep;
}

SlopeFit smoothing_slope(const Grid& grid, double alpha, double r, double p, std::span<const double> t_grid,
                         double window) {
  if (!(r >= 1.0) || !(p >= r)) throw InvalidArgument("slope fit needs 1 <= r <= p < inf");
  if (!(window > 0.0) || window > 1.0) throw InvalidArgument("slope window must lie in (0, 1]");
  const std::size_t m = t_grid.size();
  const auto drop = static_cast<std::size_t>(std::floor(0.5 * (1.0 - window) * static_cast<double>(m)));
  if (m < 2 * drop + 2) throw InvalidArgument("t_grid too short for the slope window");

  const GridFunction phi = homogeneous_probe(grid, r, 2.0 * grid.spacing(), 0.5 * grid.half_width());
  const ExponentField pf = constant_exponent(Exponent::finite(p), grid);
  const std::size_t count = m - 2 * drop;
  std::vector<double> xs(count), ys(count);
  parallel_for(count, [&](std::size_t k) {
    const double t = t_grid[drop + k];
    xs[k] = std::log(t);
    ys[k] = std::log(luxemburg_norm(apply_semigroup(phi, alpha, t), pf));
  });
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= static_cast<double>(count);
  my /= static_cast<double>(count);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.expected = -(grid.dim() / (2.0 * alpha)) * (1.0 / r - 1.0 / p);
  fit.points = count;
  return fit;
}

}  // namespace varexp
