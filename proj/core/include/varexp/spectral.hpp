#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "varexp/grid.hpp"

namespace varexp {

using Complex = std::complex<double>;

// n-dimensional complex DFT on the N^n layout of a Grid, backed by FFTW with
// estimate-mode plans so results do not depend on planner timing.
class FourierTransform {
 public:
  explicit FourierTransform(const Grid& grid);
  ~FourierTransform();
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;
  FourierTransform(FourierTransform&&) noexcept;
  FourierTransform& operator=(FourierTransform&&) noexcept;

  const Grid& grid() const noexcept { return grid_; }
  std::vector<Complex> forward(std::span<const double> values) const;
  void forward(std::span<const Complex> in, std::span<Complex> out) const;
  // Unnormalised inverse followed by division by N^n; returns the real part.
  std::vector<double> inverse_real(std::span<const Complex> spectrum) const;
  void inverse(std::span<const Complex> in, std::span<Complex> out) const;

 private:
  struct Plans;
  Grid grid_;
  std::unique_ptr<Plans> plans_;
};

// Angular wavenumber of DFT index m on an axis of the grid. The odd variant
// zeroes the Nyquist index so odd symbols keep real data real.
double wavenumber(const Grid& grid, std::size_t m) noexcept;
double wavenumber_odd(const Grid& grid, std::size_t m) noexcept;
Point wavevector(const Grid& grid, std::size_t flat) noexcept;
Point wavevector_odd(const Grid& grid, std::size_t flat) noexcept;

// Values of a Fourier multiplier on the grid's DFT lattice.
struct Multiplier {
  Grid grid;
  std::vector<Complex> values;
};

GridFunction apply_multiplier(const GridFunction& f, const Multiplier& m);

// Samples the periodic kernel of a multiplier at the grid nodes, with the
// origin mapped to the node x = 0.
GridFunction kernel_from_multiplier(const Multiplier& m);

// Discrete whole-space convolution sum_y k(x-y) f(y) h^n of two box
// functions (zero outside the box), via zero padding to 2N per axis.
GridFunction linear_convolution(const GridFunction& k, const GridFunction& f);

// Same, with an analytic kernel evaluated at every lattice offset x - y.
GridFunction convolve_with_kernel(const GridFunction& f,
                                  const std::function<double(const Point&)>& kernel);

// Fraction of the L^1 mass of f in the shell max_i |x_i| > inner_fraction * L.
double boundary_mass(const GridFunction& f, double inner_fraction = 0.75);

}  // namespace varexp
