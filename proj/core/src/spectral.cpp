#include "varexp/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "varexp/errors.hpp"

namespace varexp {

namespace {

// FFTW's planner is not thread-safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }
fftw_complex* as_fftw(const Complex* p) {
  return reinterpret_cast<fftw_complex*>(const_cast<Complex*>(p));
}

}  // namespace

struct FourierTransform::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

FourierTransform::FourierTransform(const Grid& grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
  int dims[3];
  for (int a = 0; a < grid.dim(); ++a) dims[a] = static_cast<int>(grid.nodes());
  std::vector<Complex> in(grid.size()), out(grid.size());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(planner_mutex());
  plans_->forward = fftw_plan_dft(grid.dim(), dims, as_fftw(in.data()), as_fftw(out.data()),
                                  FFTW_FORWARD, flags);
  plans_->backward = fftw_plan_dft(grid.dim(), dims, as_fftw(in.data()), as_fftw(out.data()),
                                   FFTW_BACKWARD, flags);
  if (!plans_->forward || !plans_->backward) throw NumericalAbort("FFTW planning failed");
}

FourierTransform::~FourierTransform() = default;
FourierTransform::FourierTransform(FourierTransform&&) noexcept = default;
FourierTransform& FourierTransform::operator=(FourierTransform&&) noexcept = default;

void FourierTransform::forward(std::span<const Complex> in, std::span<Complex> out) const {
  if (in.size() != grid_.size() || out.size() != grid_.size() || in.data() == out.data())
    throw InvalidArgument("FourierTransform::forward: buffers must be distinct and grid-sized");
  fftw_execute_dft(plans_->forward, as_fftw(in.data()), as_fftw(out.data()));
}

void FourierTransform::inverse(std::span<const Complex> in, std::span<Complex> out) const {
  if (in.size() != grid_.size() || out.size() != grid_.size() || in.data() == out.data())
    throw InvalidArgument("FourierTransform::inverse: buffers must be distinct and grid-sized");
  fftw_execute_dft(plans_->backward, as_fftw(in.data()), as_fftw(out.data()));
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (Complex& c : out) c *= scale;
}

std::vector<Complex> FourierTransform::forward(std::span<const double> values) const {
  std::vector<Complex> in(values.begin(), values.end()), out(values.size());
  forward(in, out);
  return out;
}

std::vector<double> FourierTransform::inverse_real(std::span<const Complex> spectrum) const {
  std::vector<Complex> out(spectrum.size());
  inverse(spectrum, out);
  std::vector<double> r(out.size());
  std::ranges::transform(out, r.begin(), [](const Complex& c) { return c.real(); });
  return r;
}

double wavenumber(const Grid& grid, std::size_t m) noexcept {
  const auto n = static_cast<long>(grid.nodes());
  const long k = static_cast<long>(m) < (n + 1) / 2 ? static_cast<long>(m) : static_cast<long>(m) - n;
  return 2.0 * std::numbers::pi * static_cast<double>(k) / (grid.spacing() * static_cast<double>(n));
}

double wavenumber_odd(const Grid& grid, std::size_t m) noexcept {
  if (grid.nodes() % 2 == 0 && m == grid.nodes() / 2) return 0.0;
  return wavenumber(grid, m);
}

Point wavevector(const Grid& grid, std::size_t flat) noexcept {
  const auto idx = grid.unflatten(flat);
  Point xi{0.0, 0.0, 0.0};
  for (int a = 0; a < grid.dim(); ++a)
    xi[static_cast<std::size_t>(a)] = wavenumber(grid, idx[static_cast<std::size_t>(a)]);
  return xi;
}

Point wavevector_odd(const Grid& grid, std::size_t flat) noexcept {
  const auto idx = grid.unflatten(flat);
  Point xi{0.0, 0.0, 0.0};
  for (int a = 0; a < grid.dim(); ++a)
    xi[static_cast<std::size_t>(a)] = wavenumber_odd(grid, idx[static_cast<std::size_t>(a)]);
  return xi;
}

GridFunction apply_multiplier(const GridFunction& f, const Multiplier& m) {
  require_same_grid(f.grid(), m.grid, "apply_multiplier");
  const FourierTransform ft(f.grid());
  std::vector<Complex> spec = ft.forward(f.values());
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= m.values[i];
  return GridFunction(f.grid(), ft.inverse_real(spec));
}

GridFunction kernel_from_multiplier(const Multiplier& m) {
  const Grid& g = m.grid;
  if (g.nodes() % 2 != 0) throw InvalidArgument("kernel sampling needs an even node count");
  const FourierTransform ft(g);
  std::vector<Complex> periodic(g.size());
  ft.inverse(m.values, periodic);
  // Inverse DFT gives the kernel at offsets j*h from the origin; node i of the
  // box sits at offset (i - N/2) h.
  const double scale = 1.0 / g.cell_volume();
  const std::size_t half = g.nodes() / 2;
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto idx = g.unflatten(i);
    std::size_t src = 0;
    for (int a = 0; a < g.dim(); ++a)
      src = src * g.nodes() + (idx[static_cast<std::size_t>(a)] + half) % g.nodes();
    out[i] = periodic[src].real() * scale;
  }
  return GridFunction(g, std::move(out));
}

namespace {

Grid padded_grid(const Grid& g) {
  return Grid::box(g.dim(), 2 * g.nodes(), 2.0 * g.half_width(), BoundaryMode::periodic);
}

// Index in the padded array of node idx (per axis) of the original grid.
std::size_t padded_index(const Grid& g, const std::array<std::size_t, 3>& idx) {
  std::size_t p = 0;
  for (int a = 0; a < g.dim(); ++a) p = p * (2 * g.nodes()) + idx[static_cast<std::size_t>(a)];
  return p;
}

GridFunction extract_window(const Grid& g, const std::vector<Complex>& full, std::size_t shift) {
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto idx = g.unflatten(i);
    for (int a = 0; a < g.dim(); ++a) idx[static_cast<std::size_t>(a)] += shift;
    out[i] = full[padded_index(g, idx)].real();
  }
  return GridFunction(g, std::move(out));
}

}  // namespace

GridFunction linear_convolution(const GridFunction& k, const GridFunction& f) {
  require_same_grid(k.grid(), f.grid(), "linear_convolution");
  const Grid& g = f.grid();
  if (g.nodes() % 2 != 0) throw InvalidArgument("linear_convolution needs an even node count");
  const Grid pg = padded_grid(g);
  std::vector<Complex> kp(pg.size()), fp(pg.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::size_t p = padded_index(g, g.unflatten(i));
    kp[p] = k[i];
    fp[p] = f[i];
  }
  const FourierTransform ft(pg);
  std::vector<Complex> kh(pg.size()), fh(pg.size());
  ft.forward(kp, kh);
  ft.forward(fp, fh);
  for (std::size_t i = 0; i < kh.size(); ++i) kh[i] *= fh[i] * g.cell_volume();
  ft.inverse(kh, kp);
  // Full convolution index m corresponds to position -2L + m h; node i sits at m = i + N/2.
  return extract_window(g, kp, g.nodes() / 2);
}

GridFunction convolve_with_kernel(const GridFunction& f,
                                  const std::function<double(const Point&)>& kernel) {
  const Grid& g = f.grid();
  const Grid pg = padded_grid(g);
  const std::size_t n2 = 2 * g.nodes();
  std::vector<Complex> kp(pg.size()), fp(pg.size());
  for (std::size_t i = 0; i < pg.size(); ++i) {
    const auto idx = pg.unflatten(i);
    Point off{0.0, 0.0, 0.0};
    for (int a = 0; a < g.dim(); ++a) {
      const auto j = static_cast<long>(idx[static_cast<std::size_t>(a)]);
      const long s = j < static_cast<long>(g.nodes()) ? j : j - static_cast<long>(n2);
      off[static_cast<std::size_t>(a)] = static_cast<double>(s) * g.spacing();
    }
    kp[i] = kernel(off);
  }
  for (std::size_t i = 0; i < g.size(); ++i) fp[padded_index(g, g.unflatten(i))] = f[i];
  const FourierTransform ft(pg);
  std::vector<Complex> kh(pg.size()), fh(pg.size());
  ft.forward(kp, kh);
  ft.forward(fp, fh);
  for (std::size_t i = 0; i < kh.size(); ++i) kh[i] *= fh[i] * g.cell_volume();
  ft.inverse(kh, kp);
  return extract_window(g, kp, 0);
}

double boundary_mass(const GridFunction& f, double inner_fraction) {
  const Grid& g = f.grid();
  const double cut = inner_fraction * g.half_width();
  double total = 0.0, outer = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point x = g.point(i);
    double m = 0.0;
    for (int a = 0; a < g.dim(); ++a) m = std::max(m, std::abs(x[static_cast<std::size_t>(a)]));
    const double v = std::abs(f[i]);
    total += v;
    if (m > cut) outer += v;
  }
  return total == 0.0 ? 0.0 : outer / total;
}

}  // namespace varexp
