#include "varexp/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "varexp/errors.hpp"

namespace varexp {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

double radius(const Point& x, const Point& c, int dim) {
  Point d{x[0] - c[0], x[1] - c[1], x[2] - c[2]};
  return euclidean_norm(d, dim);
}

CorpusEntry gaussian(const Grid& g, double width, const Point& c, const std::string& tag) {
  return {"gaussian(w=" + std::to_string(width) + tag + ")",
          GridFunction::sample(g, [&](const Point& x) {
            const double r = radius(x, c, g.dim());
            return std::exp(-0.5 * r * r / (width * width));
          })};
}

CorpusEntry bump(const Grid& g, double rad, const Point& c, const std::string& tag) {
  return {"bump(R=" + std::to_string(rad) + tag + ")", GridFunction::sample(g, [&](const Point& x) {
            const double s = radius(x, c, g.dim()) / rad;
            return s < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
          })};
}

CorpusEntry band_limited(const Grid& g, Rng& rng, std::size_t index) {
  const double env = g.half_width() / 8.0;
  const double kmax = 3.0 / env;
  struct Mode {
    Point k;
    double phase, amp;
  };
  std::vector<Mode> modes(4);
  for (auto& m : modes) {
    for (int a = 0; a < 3; ++a) m.k[static_cast<std::size_t>(a)] = a < g.dim() ? rng.uniform(-kmax, kmax) : 0.0;
    m.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    m.amp = rng.uniform(-1.0, 1.0);
  }
  return {"band_limited(#" + std::to_string(index) + ")", GridFunction::sample(g, [&](const Point& x) {
            double s = 0.0;
            for (const auto& m : modes) {
              double arg = m.phase;
              for (int a = 0; a < g.dim(); ++a)
                arg += m.k[static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(a)];
              s += m.amp * std::cos(arg);
            }
            const double r = euclidean_norm(x, g.dim());
            return s * std::exp(-0.5 * r * r / (env * env));
          })};
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& s : s_) s = splitmix64(x);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::vector<CorpusEntry> generate_corpus(const CorpusSpec& spec, const Grid& grid) {
  if (spec.count == 0) throw InvalidArgument("corpus count must be positive");
  const double L = grid.half_width();
  const Point origin{0.0, 0.0, 0.0};
  const double widths[3] = {L / 32.0, L / 16.0, L / 8.0};
  const double radii[3] = {L / 16.0, L / 8.0, L / 4.0};

  for (const auto& f : spec.families)
    if (f != "gaussian" && f != "bump" && f != "band_limited")
      throw InvalidArgument("unknown corpus family '" + f + "'");
  auto want = [&](const char* family) { return std::ranges::find(spec.families, family) != spec.families.end(); };

  std::vector<CorpusEntry> out;
  auto add_base = [&](std::size_t i, const Point& c, const std::string& tag) {
    if (out.size() >= spec.count) return;
    if (i < 3 && want("gaussian")) out.push_back(gaussian(grid, widths[i], c, tag));
    if (i >= 3 && want("bump")) out.push_back(bump(grid, radii[i - 3], c, tag));
  };
  for (std::size_t i = 0; i < 6; ++i) add_base(i, origin, "");
  for (double sign : {1.0, -1.0}) {
    Point c{0.0, 0.0, 0.0};
    for (int a = 0; a < grid.dim(); ++a) c[static_cast<std::size_t>(a)] = sign * L / 16.0;
    const std::string tag = sign > 0 ? ", shift=+L/16" : ", shift=-L/16";
    for (std::size_t i = 0; i < 6; ++i) add_base(i, c, tag);
  }
  if (out.size() < spec.count && !want("band_limited"))
    throw InvalidArgument("corpus families provide only " + std::to_string(out.size()) + " functions");
  Rng rng(spec.seed);
  for (std::size_t i = 0; out.size() < spec.count; ++i) out.push_back(band_limited(grid, rng, i));
  return out;
}

nlohmann::json to_json(const CorpusSpec& spec) {
  return {{"count", spec.count}, {"seed", spec.seed}, {"families", spec.families}};
}

GridFunction homogeneous_probe(const Grid& grid, double r, double eps, double cutoff) {
  if (!(r >= 1.0) || !(eps > 0.0) || !(cutoff > eps))
    throw InvalidArgument("homogeneous_probe: need r >= 1 and 0 < eps < cutoff");
  const double power = -static_cast<double>(grid.dim()) / (2.0 * r);
  return GridFunction::sample(grid, [&](const Point& x) {
    const double rho = euclidean_norm(x, grid.dim());
    return std::pow(eps * eps + rho * rho, power) * std::exp(-std::pow(rho / cutoff, 8));
  });
}

}  // namespace varexp
