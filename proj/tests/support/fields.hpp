#pragma once

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "varexp/nse.hpp"

namespace varexp::fields {

// Samples an analytic velocity on (0, T] plus its trace at t = 0.
inline VelocityField sample(const Grid& space, const Grid& time, const oracle::Velocity& u) {
  const int n = space.dim();
  VelocityField out{VectorField{}, SpaceTimeField(space, time, n)};
  for (int c = 0; c < n; ++c) {
    out.initial.push_back(GridFunction::sample(space, [&](const Point& x) { return u(0.0, x, c); }));
    for (std::size_t k = 0; k < time.size(); ++k) {
      const double t = time.coordinate(k);
      out.field.set_slice(k, c, GridFunction::sample(space, [&](const Point& x) { return u(t, x, c); }));
    }
  }
  return out;
}

// Single-mode shear flows on the 2pi-periodic square; amplitudes are
// polynomials in s of degree <= 1 so products stay within cubic interpolation.
inline double shear_x(double s, const Point& x, int c) { return c == 0 ? (1.0 + s) * std::sin(x[1]) : 0.0; }
inline double shear_y(double s, const Point& x, int c) { return c == 1 ? (1.0 - 0.5 * s) * std::sin(x[0]) : 0.0; }

inline Grid periodic_square(std::size_t nodes = 64) {
  return Grid::box(2, nodes, std::numbers::pi, BoundaryMode::periodic);
}

}  // namespace varexp::fields
