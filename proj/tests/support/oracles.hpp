#pragma once

// Independent reference computations used by the unit and acceptance tests.
// None of these touch the FFT or the exponential integrator in the library.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "varexp/grid.hpp"
#include "varexp/random.hpp"

namespace varexp::oracle {

// (sum |f|^p h^n)^{1/p}, or max |f| for p = inf.
inline double discrete_lp(const GridFunction& f, double p) {
  if (std::isinf(p)) return f.sup_abs();
  long double s = 0.0L;
  for (double v : f.values()) s += std::pow(static_cast<long double>(std::abs(v)), p);
  return static_cast<double>(std::pow(s * f.grid().cell_volume(), 1.0L / p));
}

// Root of lambda ln lambda = c (c > 0) by Newton from lambda = e.
inline double lambda_log_root(double c) {
  double x = std::exp(1.0);
  for (int i = 0; i < 100; ++i) {
    const double step = (x * std::log(x) - c) / (std::log(x) + 1.0);
    x -= step;
    if (std::abs(step) < 1e-15 * x) break;
  }
  return x;
}

inline GridFunction random_function(const Grid& g, Rng& rng) {
  const double scale = std::exp(rng.uniform(-3.0, 3.0));
  return GridFunction::sample(g, [&](const Point&) { return scale * rng.uniform(-1.0, 1.0); });
}

using Complex = std::complex<double>;

// Fourier coefficient (1/N^n) sum_x f(x) e^{-i xi.x} by direct summation.
inline Complex coefficient(const GridFunction& f, const Point& xi) {
  const Grid& g = f.grid();
  Complex s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point x = g.point(i);
    double phase = 0.0;
    for (int a = 0; a < g.dim(); ++a) phase += xi[static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(a)];
    s += f[i] * std::exp(Complex(0.0, -phase));
  }
  return s / static_cast<double>(g.size());
}

// Analytic velocity u(s, x), component c.
using Velocity = std::function<double(double s, const Point& x, int c)>;

// Mode xi of B(u, v)_j(t) = - int_0^t e^{-|xi|^{2a}(t-s)} P_jh(xi) i xi_k (u_h v_k)^(xi, s) ds,
// with the product coefficient by direct summation and the time integral by
// composite Simpson on `panels` panels.
inline std::vector<Complex> bilinear_mode(const Grid& g, const Velocity& u, const Velocity& v, double alpha,
                                          double t, const Point& xi, int panels = 200) {
  const int n = g.dim();
  double k2 = 0.0;
  for (int a = 0; a < n; ++a) k2 += xi[static_cast<std::size_t>(a)] * xi[static_cast<std::size_t>(a)];
  const double lambda = std::pow(k2, alpha);

  auto integrand = [&](double s) {
    std::vector<Complex> w(static_cast<std::size_t>(n), 0.0);
    // div(u (x) v)_h = sum_k i xi_k (u_h v_k)^
    std::vector<Complex> d(static_cast<std::size_t>(n), 0.0);
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k) {
        const GridFunction prod = GridFunction::sample(g, [&](const Point& x) { return u(s, x, h) * v(s, x, k); });
        d[static_cast<std::size_t>(h)] += Complex(0.0, xi[static_cast<std::size_t>(k)]) * coefficient(prod, xi);
      }
    for (int j = 0; j < n; ++j)
      for (int h = 0; h < n; ++h) {
        const double pj = (j == h ? 1.0 : 0.0) -
                          (k2 > 0.0 ? xi[static_cast<std::size_t>(j)] * xi[static_cast<std::size_t>(h)] / k2 : 0.0);
        w[static_cast<std::size_t>(j)] += pj * d[static_cast<std::size_t>(h)];
      }
    for (auto& c : w) c *= -std::exp(-lambda * (t - s));
    return w;
  };

  const int m = 2 * panels;
  const double dt = t / m;
  std::vector<Complex> acc(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i <= m; ++i) {
    const double wgt = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const auto val = integrand(i * dt);
    for (int j = 0; j < n; ++j) acc[static_cast<std::size_t>(j)] += wgt * val[static_cast<std::size_t>(j)];
  }
  for (auto& c : acc) c *= dt / 3.0;
  return acc;
}

}  // namespace varexp::oracle
