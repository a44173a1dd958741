#include "varexp/nse.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "varexp/decay.hpp"
#include "varexp/errors.hpp"
#include "varexp/parallel.hpp"
#include "varexp/random.hpp"
#include "varexp/report.hpp"
#include "varexp/spectral.hpp"

namespace varexp {

namespace {

using Spectrum = std::vector<Complex>;
// [time node 0..K][component]
using SpectralSeries = std::vector<std::vector<Spectrum>>;

double sq(const Point& xi, int dim) {
  double s = 0.0;
  for (int a = 0; a < dim; ++a) s += xi[static_cast<std::size_t>(a)] * xi[static_cast<std::size_t>(a)];
  return s;
}

void check_vector(const VectorField& u, const char* what) {
  if (u.empty()) throw InvalidArgument(std::string(what) + ": empty vector field");
  const Grid& g = u.front().grid();
  if (static_cast<int>(u.size()) != g.dim())
    throw InvalidArgument(std::string(what) + ": component count must equal the dimension");
  for (const auto& c : u) require_same_grid(g, c.grid(), what);
}

GridFunction slice_at(const VelocityField& u, std::size_t node, int c) {
  return node == 0 ? u.initial[static_cast<std::size_t>(c)] : u.field.slice(node - 1, c);
}

// Cubic Lagrange basis on integer nodes, as monomial coefficients in sigma.
std::array<std::array<double, 4>, 4> lagrange_coefficients(const std::array<int, 4>& nodes) {
  std::array<std::array<double, 4>, 4> c{};
  for (std::size_t m = 0; m < 4; ++m) {
    std::array<double, 4> poly{1.0, 0.0, 0.0, 0.0};
    double denom = 1.0;
    std::size_t degree = 0;
    for (std::size_t l = 0; l < 4; ++l) {
      if (l == m) continue;
      // poly *= (sigma - nodes[l])
      for (std::size_t r = degree + 2; r-- > 0;) {
        const double shifted = r > 0 ? poly[r - 1] : 0.0;
        poly[r] = shifted - nodes[l] * poly[r];
      }
      ++degree;
      denom *= nodes[m] - nodes[l];
    }
    for (std::size_t r = 0; r < 4; ++r) c[m][r] = poly[r] / denom;
  }
  return c;
}

// mu_r(z) = int_0^1 e^{-z(1-s)} s^r ds, r = 0..3
std::array<double, 4> moments(double z) {
  std::array<double, 4> mu{};
  if (z < 1.0) {
    for (std::size_t r = 0; r < 4; ++r) {
      // sum_k (-z)^k r!/(r+k+1)!
      double term = 1.0;
      for (std::size_t i = 1; i <= r + 1; ++i) term /= static_cast<double>(i);
      for (std::size_t i = 1; i <= r; ++i) term *= static_cast<double>(i);
      double sum = term;
      for (std::size_t k = 1; k < 40; ++k) {
        term *= -z / static_cast<double>(r + k + 1);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      }
      mu[r] = sum;
    }
    return mu;
  }
  mu[0] = -std::expm1(-z) / z;
  for (std::size_t r = 1; r < 4; ++r) mu[r] = (1.0 - static_cast<double>(r) * mu[r - 1]) / z;
  return mu;
}

// Per-mode exponential integrator for y' = -lambda y + W(t) on the nodes
// 0, dt, ..., K dt, with W replaced by a cubic interpolant on each step.
class Integrator {
 public:
  Integrator(const Grid& space, double alpha, double dt, std::size_t steps) : dt_(dt), steps_(steps) {
    if (steps < 3) throw InvalidArgument("time integration needs at least 3 steps");
    const std::array<std::array<int, 4>, 3> stencils{{{0, 1, 2, 3}, {-1, 0, 1, 2}, {-2, -1, 0, 1}}};
    for (std::size_t s = 0; s < 3; ++s) coeff_[s] = lagrange_coefficients(stencils[s]);
    offsets_ = stencils;
    decay_.resize(space.size());
    weights_.resize(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
      const double lambda = std::pow(sq(wavevector(space, i), space.dim()), alpha);
      const double z = lambda * dt;
      decay_[i] = std::exp(-z);
      const auto mu = moments(z);
      for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t m = 0; m < 4; ++m) {
          double w = 0.0;
          for (std::size_t r = 0; r < 4; ++r) w += coeff_[s][m][r] * mu[r];
          weights_[i][s][m] = dt * w;
        }
    }
  }

  // y(0) = y0 (may be empty for zero); returns y at nodes 1..K.
  std::vector<Spectrum> run(const Spectrum* y0, const std::vector<const Spectrum*>& w) const {
    const std::size_t modes = decay_.size();
    std::vector<Spectrum> out(steps_, Spectrum(modes));
    Spectrum y = y0 ? *y0 : Spectrum(modes);
    for (std::size_t j = 0; j < steps_; ++j) {
      const std::size_t s = j == 0 ? 0 : (j + 1 == steps_ ? 2 : 1);
      for (std::size_t i = 0; i < modes; ++i) {
        Complex acc = decay_[i] * y[i];
        for (std::size_t m = 0; m < 4; ++m) {
          const auto node = static_cast<std::size_t>(static_cast<long>(j) + offsets_[s][m]);
          acc += weights_[i][s][m] * (*w[node])[i];
        }
        y[i] = acc;
      }
      out[j] = y;
    }
    return out;
  }

 private:
  double dt_;
  std::size_t steps_;
  std::array<std::array<std::array<double, 4>, 4>, 3> coeff_{};
  std::array<std::array<int, 4>, 3> offsets_{};
  std::vector<double> decay_;
  std::vector<std::array<std::array<double, 4>, 3>> weights_;
};

void self_check(const SpectralSeries& w, const DuhamelOptions& options) {
  if (!options.self_check || w.size() < 5) return;
  auto l2 = [](const std::vector<Spectrum>& comps) {
    double s = 0.0;
    for (const auto& c : comps)
      for (const auto& v : c) s += std::norm(v);
    return std::sqrt(s);
  };
  double scale = 0.0;
  for (const auto& node : w) scale = std::max(scale, l2(node));
  if (scale == 0.0) return;
  double worst = 0.0;
  const std::array<double, 5> c{1.0, -4.0, 6.0, -4.0, 1.0};
  for (std::size_t j = 0; j + 4 < w.size(); ++j) {
    double s = 0.0;
    for (std::size_t comp = 0; comp < w[j].size(); ++comp)
      for (std::size_t i = 0; i < w[j][comp].size(); ++i) {
        Complex d = 0.0;
        for (std::size_t k = 0; k < 5; ++k) d += c[k] * w[j + k][comp][i];
        s += std::norm(d);
      }
    worst = std::max(worst, std::sqrt(s) / scale);
  }
  if (worst > options.coarse_threshold)
    throw NumericalAbort("time grid too coarse for the Duhamel quadrature (relative fourth difference " +
                         std::to_string(worst) + ")");
}

VelocityField from_series(const Grid& space, const Grid& time, const VectorField& initial,
                          const std::vector<std::vector<Spectrum>>& nodes, const FourierTransform& ft) {
  const int n = space.dim();
  VelocityField out{initial, SpaceTimeField(space, time, n)};
  parallel_for(nodes.size(), [&](std::size_t j) {
    for (int c = 0; c < n; ++c) {
      const auto vals = ft.inverse_real(nodes[j][static_cast<std::size_t>(c)]);
      std::ranges::copy(vals, out.field.values(j, c).begin());
    }
  });
  return out;
}

void check_velocity(const VelocityField& u, const char* what) {
  check_vector(u.initial, what);
  require_same_grid(u.initial.front().grid(), u.field.space(), what);
  if (u.field.components() != u.field.space().dim())
    throw InvalidArgument(std::string(what) + ": component count must equal the dimension");
}

VelocityField combine(const VelocityField& a, double ca, const VelocityField& b, double cb) {
  VelocityField out = a;
  for (std::size_t c = 0; c < out.initial.size(); ++c)
    for (std::size_t i = 0; i < out.initial[c].size(); ++i)
      out.initial[c][i] = ca * a.initial[c][i] + cb * b.initial[c][i];
  for (std::size_t t = 0; t < out.field.time_count(); ++t)
    for (int c = 0; c < out.field.components(); ++c) {
      auto o = out.field.values(t, c);
      auto x = a.field.values(t, c);
      auto y = b.field.values(t, c);
      for (std::size_t i = 0; i < o.size(); ++i) o[i] = ca * x[i] + cb * y[i];
    }
  return out;
}

std::vector<ExponentField> spatial_spaces(const ProblemSpec& spec) {
  std::vector<ExponentField> s{build_exponent(spec.q_space, spec.space)};
  for (Exponent e : spec.spatial_extra) s.push_back(constant_exponent(e, spec.space));
  return s;
}

}  // namespace

VelocityField zero_velocity(const Grid& space, const Grid& time) {
  VectorField init(static_cast<std::size_t>(space.dim()), GridFunction(space));
  return {std::move(init), SpaceTimeField(space, time, space.dim())};
}

VelocityField steady_velocity(const VectorField& u, const Grid& time) {
  check_vector(u, "steady_velocity");
  const Grid& g = u.front().grid();
  VelocityField out{u, SpaceTimeField(g, time, g.dim())};
  for (std::size_t t = 0; t < time.size(); ++t)
    for (int c = 0; c < g.dim(); ++c) out.field.set_slice(t, c, u[static_cast<std::size_t>(c)]);
  return out;
}

VectorField leray_project(const VectorField& u) {
  check_vector(u, "leray_project");
  const Grid& g = u.front().grid();
  const int n = g.dim();
  if (n < 2) throw InvalidArgument("the Leray projector needs n >= 2");
  const FourierTransform ft(g);
  std::vector<Spectrum> hat;
  for (const auto& c : u) hat.push_back(ft.forward(c.values()));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point xi = wavevector_odd(g, i);
    const double r2 = sq(xi, n);
    if (r2 == 0.0) continue;
    Complex dot = 0.0;
    for (int a = 0; a < n; ++a) dot += xi[static_cast<std::size_t>(a)] * hat[static_cast<std::size_t>(a)][i];
    for (int a = 0; a < n; ++a) hat[static_cast<std::size_t>(a)][i] -= xi[static_cast<std::size_t>(a)] * dot / r2;
  }
  VectorField out;
  for (const auto& h : hat) out.emplace_back(g, ft.inverse_real(h));
  return out;
}

double max_divergence(const VectorField& u) {
  check_vector(u, "max_divergence");
  const Grid& g = u.front().grid();
  const FourierTransform ft(g);
  Spectrum div(g.size());
  for (int a = 0; a < g.dim(); ++a) {
    const Spectrum h = ft.forward(u[static_cast<std::size_t>(a)].values());
    for (std::size_t i = 0; i < g.size(); ++i)
      div[i] += Complex(0.0, wavevector_odd(g, i)[static_cast<std::size_t>(a)]) * h[i];
  }
  double mx = 0.0;
  for (double v : ft.inverse_real(div)) mx = std::max(mx, std::abs(v));
  return mx;
}

double max_divergence(const VelocityField& u) {
  double mx = max_divergence(u.initial);
  for (std::size_t t = 0; t < u.field.time_count(); ++t) {
    VectorField s;
    for (int c = 0; c < u.field.components(); ++c) s.push_back(u.field.slice(t, c));
    mx = std::max(mx, max_divergence(s));
  }
  return mx;
}

VectorField vortex_field(const Grid& space, std::span<const Vortex> vortices) {
  const int n = space.dim();
  if (n != 2 && n != 3) throw InvalidArgument("vortex fields need n = 2 or 3");
  VectorField u(static_cast<std::size_t>(n), GridFunction(space));
  for (std::size_t i = 0; i < space.size(); ++i) {
    const Point x = space.point(i);
    std::array<double, 3> grad{0.0, 0.0, 0.0};
    for (const auto& v : vortices) {
      double r2 = 0.0;
      for (int a = 0; a < n; ++a) {
        const double d = x[static_cast<std::size_t>(a)] - v.center[static_cast<std::size_t>(a)];
        r2 += d * d;
      }
      const double w2 = v.width * v.width;
      const double psi = v.strength * std::exp(-0.5 * r2 / w2);
      for (int a = 0; a < n; ++a)
        grad[static_cast<std::size_t>(a)] -= (x[static_cast<std::size_t>(a)] - v.center[static_cast<std::size_t>(a)]) / w2 * psi;
    }
    if (n == 2) {
      u[0][i] = grad[1];
      u[1][i] = -grad[0];
    } else {
      // curl(psi (1,1,1)) = grad psi x (1,1,1)
      u[0][i] = grad[1] - grad[2];
      u[1][i] = grad[2] - grad[0];
      u[2][i] = grad[0] - grad[1];
    }
  }
  // Sampling leaves spectrally small divergence; project it away.
  return leray_project(u);
}

std::vector<Vortex> seeded_vortices(const Grid& space, std::uint64_t seed, std::size_t count, double width) {
  Rng rng(seed);
  const double reach = 0.25 * space.half_width();
  std::vector<Vortex> out(count);
  for (auto& v : out) {
    for (int a = 0; a < space.dim(); ++a) v.center[static_cast<std::size_t>(a)] = rng.uniform(-reach, reach);
    v.strength = rng.uniform(-1.0, 1.0);
    v.width = width;
  }
  return out;
}

void validate(const ProblemSpec& spec) {
  const int n = spec.space.dim();
  if (n != 2 && n != 3) throw InvalidArgument("the solver runs in n = 2 or 3");
  if (spec.space.boundary() != BoundaryMode::periodic) throw InvalidArgument("the solver needs a periodic box");
  if (!(spec.alpha > 0.5) || spec.alpha > 1.0) throw InvalidArgument("alpha must lie in (1/2, 1]");
  if (!(spec.horizon > 0.0) || !std::isfinite(spec.horizon)) throw InvalidArgument("horizon must be positive");
  if (spec.time_steps < 3) throw InvalidArgument("at least 3 time steps are needed");
  if (static_cast<int>(spec.u0.size()) != n) throw InvalidArgument("u0 needs one component per dimension");
  for (const auto& c : spec.u0) require_same_grid(spec.space, c.grid(), "u0");
  const double div = max_divergence(spec.u0);
  if (div > spec.divergence_tol) throw InvalidArgument("u0 is not divergence-free (max |div| = " + std::to_string(div) + ")");
  if (spec.forcing) {
    check_velocity(*spec.forcing, "forcing");
    require_same_grid(spec.space, spec.forcing->field.space(), "forcing");
    if (!(spec.forcing->field.time() == spec.time())) throw GridMismatch("forcing time grid differs from the problem's");
    if (max_divergence(*spec.forcing) > spec.divergence_tol) throw InvalidArgument("forcing is not divergence-free");
  }
}

VelocityField e0_term(const ProblemSpec& spec, const DuhamelOptions& options) {
  validate(spec);
  const Grid time = spec.time();
  const Grid& g = spec.space;
  const int n = g.dim();
  const FourierTransform ft(g);
  const Integrator integ(g, spec.alpha, time.spacing(), time.size());
  SpectralSeries forcing;
  if (spec.forcing) {
    forcing.resize(time.size() + 1);
    parallel_for(time.size() + 1, [&](std::size_t j) {
      for (int c = 0; c < n; ++c) forcing[j].push_back(ft.forward(slice_at(*spec.forcing, j, c).values()));
    });
    self_check(forcing, options);
  }
  std::vector<std::vector<Spectrum>> nodes(time.size(), std::vector<Spectrum>(static_cast<std::size_t>(n)));
  Spectrum zero(g.size());
  for (int c = 0; c < n; ++c) {
    const Spectrum y0 = ft.forward(spec.u0[static_cast<std::size_t>(c)].values());
    std::vector<const Spectrum*> w(time.size() + 1, &zero);
    if (spec.forcing)
      for (std::size_t j = 0; j <= time.size(); ++j) w[j] = &forcing[j][static_cast<std::size_t>(c)];
    auto ys = integ.run(&y0, w);
    for (std::size_t j = 0; j < time.size(); ++j) nodes[j][static_cast<std::size_t>(c)] = std::move(ys[j]);
  }
  return from_series(g, time, spec.u0, nodes, ft);
}

VelocityField bilinear_B(const VelocityField& u, const VelocityField& v, double alpha,
                         const DuhamelOptions& options) {
  check_velocity(u, "bilinear_B");
  check_velocity(v, "bilinear_B");
  require_same_grid(u.field.space(), v.field.space(), "bilinear_B");
  if (!(u.field.time() == v.field.time())) throw GridMismatch("bilinear_B: time grids differ");
  const Grid& g = u.field.space();
  const Grid& time = u.field.time();
  const int n = g.dim();
  const auto un = static_cast<std::size_t>(n);
  const FourierTransform ft(g);

  // W_j = sum_h P_jh sum_k i xi_k (u_h v_k)^
  SpectralSeries w(time.size() + 1);
  parallel_for(time.size() + 1, [&](std::size_t j) {
    std::vector<GridFunction> us, vs;
    for (int c = 0; c < n; ++c) {
      us.push_back(slice_at(u, j, c));
      vs.push_back(slice_at(v, j, c));
    }
    std::vector<Spectrum> div(un, Spectrum(g.size()));
    std::vector<double> prod(g.size());
    for (std::size_t h = 0; h < un; ++h)
      for (std::size_t k = 0; k < un; ++k) {
        for (std::size_t i = 0; i < g.size(); ++i) prod[i] = us[h][i] * vs[k][i];
        const Spectrum ph = ft.forward(prod);
        for (std::size_t i = 0; i < g.size(); ++i)
          div[h][i] += Complex(0.0, wavevector_odd(g, i)[k]) * ph[i];
      }
    std::vector<Spectrum> out(un, Spectrum(g.size()));
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Point xi = wavevector_odd(g, i);
      const double r2 = sq(xi, n);
      if (r2 == 0.0) continue;
      Complex dot = 0.0;
      for (std::size_t a = 0; a < un; ++a) dot += xi[a] * div[a][i];
      for (std::size_t a = 0; a < un; ++a) out[a][i] = div[a][i] - xi[a] * dot / r2;
    }
    w[j] = std::move(out);
  });
  self_check(w, options);

  const Integrator integ(g, alpha, time.spacing(), time.size());
  std::vector<std::vector<Spectrum>> nodes(time.size(), std::vector<Spectrum>(un));
  parallel_for(un, [&](std::size_t c) {
    std::vector<const Spectrum*> ptr(time.size() + 1);
    for (std::size_t j = 0; j <= time.size(); ++j) ptr[j] = &w[j][c];
    auto ys = integ.run(nullptr, ptr);
    for (std::size_t j = 0; j < time.size(); ++j) {
      for (auto& z : ys[j]) z = -z;
      nodes[j][c] = std::move(ys[j]);
    }
  });
  VectorField zero(un, GridFunction(g));
  return from_series(g, time, zero, nodes, ft);
}

double solution_norm(const VelocityField& u, const ProblemSpec& spec) {
  const ExponentField p = build_exponent(spec.p_time, u.field.time());
  return mixed_norm(u.field, p, spatial_spaces(spec));
}

double mild_residual(const VelocityField& u, const ProblemSpec& spec) {
  const VelocityField e0 = e0_term(spec);
  const VelocityField b = bilinear_B(u, u, spec.alpha);
  VelocityField r = combine(u, 1.0, e0, -1.0);
  r = combine(r, 1.0, b, -1.0);
  return solution_norm(r, spec);
}

PicardResult picard_solve(const ProblemSpec& spec, const PicardOptions& options) {
  if (!(options.damping > 0.0) || options.damping > 1.0) throw InvalidArgument("damping must lie in (0, 1]");
  if (options.max_iters == 0) throw InvalidArgument("max_iters must be positive");
  VelocityField e0 = e0_term(spec);
  PicardResult res{e0, e0, 0, false, {}, {}, {}, 0.0, 0.0, 0.0};
  res.e0_norm = solution_norm(res.e0, spec);
  res.iterate_norms.push_back(res.e0_norm);
  const double theta = options.damping;
  for (std::size_t k = 0; k < options.max_iters; ++k) {
    VelocityField target = res.e0;
    if (options.nonlinear) target = combine(target, 1.0, bilinear_B(res.u, res.u, spec.alpha), 1.0);
    VelocityField next = theta == 1.0 ? std::move(target) : combine(res.u, 1.0 - theta, target, theta);
    const double step = solution_norm(combine(next, 1.0, res.u, -1.0), spec);
    res.u = std::move(next);
    res.iterations = k + 1;
    if (!res.residuals.empty() && res.residuals.back() > 0.0)
      res.contraction_ratios.push_back(step / res.residuals.back());
    res.residuals.push_back(step);
    res.iterate_norms.push_back(solution_norm(res.u, spec));
    if (step < options.residual_tol) {
      res.converged = true;
      break;
    }
    const std::size_t win = options.divergence_window;
    const auto& norms = res.iterate_norms;
    if (win > 0 && norms.size() > win) {
      const std::size_t last = norms.size() - 1;
      bool growing = true;
      for (std::size_t i = last - win; i < last; ++i) growing = growing && norms[i + 1] > norms[i];
      if (growing && norms[last] >= 2.0 * norms[last - win] && norms[last - win] > 0.0)
        throw NumericalAbort("Picard iteration diverges: iterate norm " + std::to_string(norms[last]) +
                             " after " + std::to_string(res.iterations) + " iterations (was " +
                             std::to_string(norms[last - win]) + ")");
    }
  }
  res.u_norm = res.iterate_norms.back();
  res.mild_residual = options.nonlinear ? mild_residual(res.u, spec)
                                        : solution_norm(combine(res.u, 1.0, res.e0, -1.0), spec);
  return res;
}

double measure_CB(const ProblemSpec& spec, std::span<const VelocityField> corpus) {
  if (corpus.empty()) throw InvalidArgument("measure_CB: empty corpus");
  double best = 0.0;
  std::size_t used = 0;
  for (const auto& u : corpus) {
    const double nu = solution_norm(u, spec);
    if (nu == 0.0) continue;
    ++used;
    best = std::max(best, solution_norm(bilinear_B(u, u, spec.alpha), spec) / (nu * nu));
  }
  if (used == 0) throw InvalidArgument("measure_CB: every corpus field vanishes");
  return best;
}

std::vector<VelocityField> divergence_free_corpus(const Grid& space, const Grid& time, std::uint64_t seed,
                                                  std::size_t count) {
  std::vector<VelocityField> out;
  Rng rng(seed);
  const int n = space.dim();
  for (std::size_t e = 0; e < count; ++e) {
    const double width = space.half_width() * rng.uniform(0.06, 0.15);
    const auto vort = seeded_vortices(space, rng.next(), 1 + rng.below(3), width);
    const VectorField base = vortex_field(space, vort);
    const double rate = rng.uniform(0.0, 2.0);
    VelocityField u = steady_velocity(base, time);
    for (std::size_t t = 0; t < time.size(); ++t) {
      const double a = std::exp(-rate * time.coordinate(t));
      for (int c = 0; c < n; ++c) u.field.set_slice(t, c, base[static_cast<std::size_t>(c)].scaled(a));
    }
    out.push_back(std::move(u));
  }
  return out;
}

// ---- existence theorems ----------------------------------------------------

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::local_lq: return "local_lq";
    case TheoremId::local_lq_infinite_limit: return "local_lq_infinite_limit";
    case TheoremId::local_lq_cap_linf: return "local_lq_cap_linf";
    case TheoremId::local_lq_cap_lnu: return "local_lq_cap_lnu";
    case TheoremId::local_lq_minus_limit: return "local_lq_minus_limit";
    case TheoremId::local_1d_lq_cap_l2: return "local_1d_lq_cap_l2";
    case TheoremId::global_lq_cap_linf: return "global_lq_cap_linf";
    case TheoremId::global_constant_q: return "global_constant_q";
    case TheoremId::global_finite_horizon: return "global_finite_horizon";
  }
  return "unknown";
}

std::vector<TheoremId> all_theorems() {
  return {TheoremId::local_lq,           TheoremId::local_lq_infinite_limit, TheoremId::local_lq_cap_linf,
          TheoremId::local_lq_cap_lnu,   TheoremId::local_lq_minus_limit,    TheoremId::local_1d_lq_cap_l2,
          TheoremId::global_lq_cap_linf, TheoremId::global_constant_q,       TheoremId::global_finite_horizon};
}

std::optional<TheoremId> theorem_from_string(const std::string& s) {
  for (TheoremId id : all_theorems())
    if (to_string(id) == s) return id;
  return std::nullopt;
}

namespace {

constexpr double kEq = 1e-12;

class Checks {
 public:
  explicit Checks(std::vector<HypothesisCheck>& out) : out_(out) {}
  void less(const std::string& cond, double lhs, double rhs, bool implied = false) {
    out_.push_back({cond, lhs, rhs, lhs < rhs, implied});
  }
  void less_eq(const std::string& cond, double lhs, double rhs, bool implied = false) {
    out_.push_back({cond, lhs, rhs, lhs <= rhs + kEq, implied});
  }
  void equal(const std::string& cond, double lhs, double rhs) {
    const bool same = lhs == rhs || std::abs(lhs - rhs) <= kEq * std::max(1.0, std::abs(rhs));
    out_.push_back({cond, lhs, rhs, same, false});
  }
  void flag(const std::string& cond, bool ok) { out_.push_back({cond, ok ? 1.0 : 0.0, 1.0, ok, false}); }

 private:
  std::vector<HypothesisCheck>& out_;
};

double val(Exponent e) { return e.value(); }

double limit_value(const ExponentBounds& b) {
  return b.limit ? b.limit->value() : std::numeric_limits<double>::quiet_NaN();
}

void log_holder(Checks& c, const std::string& name, const ExponentBounds& b, std::optional<bool> known) {
  if (known) {
    c.flag(name + " log-Hoelder", *known);
  } else if (b.minus == b.plus) {
    c.flag(name + " log-Hoelder (constant)", true);
  } else {
    c.flag(name + " log-Hoelder (not evaluated)", false);
  }
}

}  // namespace

ExistenceDiagnostics existence_hypotheses(TheoremId theorem, const HypothesisInputs& in) {
  ExistenceDiagnostics d;
  d.theorem = theorem;
  Checks c(d.checks);
  const double a = in.alpha;
  const double n = in.dim;
  const double pm = val(in.p.minus), pp = val(in.p.plus);
  const double qm = val(in.q.minus), qp = val(in.q.plus);
  const double gpm = in.p.minus.reciprocal();
  const double inf = std::numeric_limits<double>::infinity();

  if (theorem == TheoremId::local_1d_lq_cap_l2) {
    c.less("3/4 < alpha", 0.75, a);
  } else {
    c.less("1/2 < alpha", 0.5, a);
  }
  c.less_eq("alpha <= 1", a, 1.0);

  // Local theorems: 2a/p- + M/2 < a - 1/2, delta = 1/p~+ - (1 + M)/(2a).
  auto local_main = [&](double m) {
    c.less("2 alpha/p- + M/2 < alpha - 1/2", 2.0 * a * gpm + 0.5 * m, a - 0.5);
    if (pm > 2.0) {
      d.p_tilde_plus = in.p.minus.is_infinite() ? 1.0 : pm / (pm - 2.0);
      d.delta = 1.0 / *d.p_tilde_plus - (1.0 + m) / (2.0 * a);
    }
  };
  auto implied_bounds = [&] {
    c.less("4 alpha/(2 alpha - 1) < p-", 4.0 * a / (2.0 * a - 1.0), pm, true);
    c.less("n/(2 alpha - 1) < q-", n / (2.0 * a - 1.0), qm, true);
  };

  switch (theorem) {
    case TheoremId::local_lq: {
      c.less("2 < q-", 2.0, qm);
      c.less("q+ < inf", qp, inf);
      c.equal("q+ = q_inf", qp, limit_value(in.q));
      log_holder(c, "q", in.q, in.q_log_holder);
      c.less("2 < p-", 2.0, pm);
      if (qm >= 2.0 && in.q.limit && in.q.minus <= *in.q.limit && !in.q.limit->is_infinite()) {
        const double th = DecayProfile::vartheta(in.q.minus, *in.q.limit)(0.5);
        d.time_profile = th;
        local_main(n * th);
      }
      implied_bounds();
      break;
    }
    case TheoremId::local_lq_infinite_limit: {
      c.less("2 < q-", 2.0, qm);
      c.flag("q_inf = inf", in.q.limit && in.q.limit->is_infinite());
      log_holder(c, "q", in.q, in.q_log_holder);
      c.less("2 < p-", 2.0, pm);
      d.time_profile = 2.0 * in.q.minus.reciprocal();
      local_main(n * *d.time_profile);
      implied_bounds();
      break;
    }
    case TheoremId::local_lq_cap_linf: {
      log_holder(c, "q", in.q, in.q_log_holder);
      c.less("4 alpha/(2 alpha - 1) < p-", 4.0 * a / (2.0 * a - 1.0), pm);
      d.time_profile = 0.0;
      if (pm > 2.0) {
        d.p_tilde_plus = in.p.minus.is_infinite() ? 1.0 : pm / (pm - 2.0);
        d.delta = 1.0 / *d.p_tilde_plus - 1.0 / (2.0 * a);
      }
      break;
    }
    case TheoremId::local_lq_cap_lnu: {
      log_holder(c, "q", in.q, in.q_log_holder);
      c.less_eq("2 <= q-", 2.0, qm);
      if (!in.nu) {
        c.flag("nu given", false);
        break;
      }
      const double nu = *in.nu;
      c.less("n < nu", n, nu);
      c.less_eq("nu <= 2 q-", nu, 2.0 * qm);
      c.less("2 < p-", 2.0, pm);
      const double w = 2.0 * in.q.minus.reciprocal() * (1.0 - 0.5 * nu * in.q.plus.reciprocal());
      d.time_profile = w;
      local_main(std::max(n * w, n / nu));
      c.less("n/(2 alpha - 1) < nu", n / (2.0 * a - 1.0), nu, true);
      break;
    }
    case TheoremId::local_lq_minus_limit: {
      log_holder(c, "q", in.q, in.q_log_holder);
      c.equal("q- = q_inf", qm, limit_value(in.q));
      c.less("n < q-", n, qm);
      c.less("4 < p-", 4.0, pm);
      const double phi = 2.0 * in.q.minus.reciprocal() - in.q.plus.reciprocal();
      d.time_profile = phi;
      local_main(n * phi);
      implied_bounds();
      break;
    }
    case TheoremId::local_1d_lq_cap_l2: {
      c.equal("n = 1", n, 1.0);
      log_holder(c, "q", in.q, in.q_log_holder);
      c.less_eq("2 <= q-", 2.0, qm);
      c.equal("q- = q_inf", qm, limit_value(in.q));
      if (qm >= 2.0) {
        const Exponent half_m = Exponent::from_reciprocal(2.0 * in.q.minus.reciprocal());
        const Exponent half_p = Exponent::from_reciprocal(2.0 * in.q.plus.reciprocal());
        const double th = two_case_exponent(in.q.minus, in.q.plus, half_m, half_p, 0.5).value;
        d.time_profile = th;
        local_main(std::max(0.5 * n, (1.0 + n * th) / (2.0 * a)));
      }
      break;
    }
    case TheoremId::global_lq_cap_linf: {
      log_holder(c, "q", in.q, in.q_log_holder);
      log_holder(c, "p", in.p, in.p_log_holder);
      const double crit = 2.0 * a / (2.0 * a - 1.0);
      c.equal("p- = 2 alpha/(2 alpha - 1)", pm, crit);
      c.equal("p- = p_inf", pm, limit_value(in.p));
      c.less("p+ < inf", pp, inf);
      d.riesz_gamma = 1.0 - 1.0 / (2.0 * a);
      break;
    }
    case TheoremId::global_constant_q: {
      c.flag("q constant", in.q.minus == in.q.plus);
      c.less("n/(2 alpha - 1) < q", n / (2.0 * a - 1.0), qm);
      log_holder(c, "p", in.p, in.p_log_holder);
      const double gq = in.q.minus.reciprocal();
      const double gap = 2.0 * a - 1.0 - n * gq;
      const double crit = gap > 0.0 ? 2.0 * a / gap : inf;
      c.equal("p- = 2 alpha/(2 alpha - 1 - n/q)", pm, crit);
      c.equal("p- = p_inf", pm, limit_value(in.p));
      c.less("p+ < inf", pp, inf);
      d.riesz_gamma = 1.0 - (1.0 + n * gq) / (2.0 * a);
      break;
    }
    case TheoremId::global_finite_horizon: {
      log_holder(c, "q", in.q, in.q_log_holder);
      log_holder(c, "p", in.p, in.p_log_holder);
      c.less("n/(2 alpha - 1) < q-", n / (2.0 * a - 1.0), qm);
      c.less("q+ < inf", qp, inf);
      c.equal("q+ = q_inf", qp, limit_value(in.q));
      c.less("2 alpha/(2 alpha - 1) < p-", 2.0 * a / (2.0 * a - 1.0), pm);
      c.less("p+ < inf", pp, inf);
      if (qm >= 2.0 && in.q.limit && in.q.minus <= *in.q.limit && !in.q.limit->is_infinite()) {
        const double th = DecayProfile::vartheta(in.q.minus, *in.q.limit)(0.5);
        d.time_profile = th;
        c.less_eq("alpha/p- + n theta_1/2 <= alpha - 1/2", a * gpm + 0.5 * n * th, a - 0.5);
        d.riesz_gamma = 1.0 - (1.0 + n * th) / (2.0 * a);
      } else {
        c.flag("theta_1 defined (2 <= q- <= q_inf < inf)", false);
      }
      break;
    }
  }
  d.hypotheses_hold = std::ranges::all_of(d.checks, [](const HypothesisCheck& h) { return h.pass; });
  return d;
}

HypothesisInputs hypothesis_inputs(const ProblemSpec& spec, int dim) {
  HypothesisInputs in;
  in.alpha = spec.alpha;
  in.dim = dim;
  in.p = analytic_bounds(spec.p_time);
  in.q = analytic_bounds(spec.q_space);
  for (Exponent e : spec.spatial_extra)
    if (!e.is_infinite()) in.nu = e.value();
  const ExponentField q = build_exponent(spec.q_space, spec.space);
  const LogHolderEstimate lq = log_holder_check(q);
  in.q_log_holder = lq.pass_local && lq.pass_decay;
  const ExponentField p = build_exponent(spec.p_time, spec.time());
  const LogHolderEstimate lp = log_holder_check(p);
  in.p_log_holder = lp.pass_local && lp.pass_decay;
  return in;
}

nlohmann::json to_json(const ExistenceDiagnostics& d) {
  auto opt = [](const std::optional<double>& v) { return v ? json_number(*v) : nlohmann::json(nullptr); };
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& h : d.checks)
    checks.push_back({{"condition", h.condition},
                      {"lhs", json_number(h.lhs)},
                      {"rhs", json_number(h.rhs)},
                      {"pass", h.pass},
                      {"implied", h.implied}});
  return {{"theorem", to_string(d.theorem)},
          {"checks", checks},
          {"hypotheses_hold", d.hypotheses_hold},
          {"time_profile", opt(d.time_profile)},
          {"p_tilde_plus", opt(d.p_tilde_plus)},
          {"delta", opt(d.delta)},
          {"riesz_gamma", opt(d.riesz_gamma)},
          {"c_b", opt(d.c_b)},
          {"e0_norm", opt(d.e0_norm)},
          {"contraction_margin", opt(d.contraction_margin)}};
}

nlohmann::json to_json(const PicardResult& r) {
  auto arr = [](const std::vector<double>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (double x : v) a.push_back(json_number(x));
    return a;
  };
  return {{"iterations", r.iterations},
          {"converged", r.converged},
          {"residuals", arr(r.residuals)},
          {"contraction_ratios", arr(r.contraction_ratios)},
          {"iterate_norms", arr(r.iterate_norms)},
          {"e0_norm", json_number(r.e0_norm)},
          {"u_norm", json_number(r.u_norm)},
          {"mild_residual", json_number(r.mild_residual)}};
}

}  // namespace varexp
