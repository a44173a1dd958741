#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "varexp/grid.hpp"
#include "varexp/random.hpp"

namespace varexp {

struct CorpusSpec {
  std::size_t count = 24;
  std::uint64_t seed = 7;
  // Any of "gaussian", "bump" (each centred and shifted), "band_limited".
  std::vector<std::string> families{"gaussian", "bump", "band_limited"};
};

struct CorpusEntry {
  std::string label;
  GridFunction f;
};

// Gaussians at three widths, smooth bumps at three radii, both shifted by
// +-L/16 along every axis, and seeded band-limited fields under a Gaussian
// envelope. Everything decays below 1e-12 at the box boundary. The first
// `count` entries of that sequence are returned (extra entries are further
// seeded fields).
std::vector<CorpusEntry> generate_corpus(const CorpusSpec& spec, const Grid& grid);
nlohmann::json to_json(const CorpusSpec& spec);

// Regularised homogeneous profile (eps^2 + |x|^2)^{-n/(2r)} times a smooth
// cutoff at `cutoff`; scale-free between eps and cutoff.
GridFunction homogeneous_probe(const Grid& grid, double r, double eps, double cutoff);

}  // namespace varexp
