#pragma once

#include <cstdint>

namespace varexp {

// Seeded xoshiro256** stream (state filled by splitmix64) with a
// hand-rolled uniform map, so sequences match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

 private:
  std::uint64_t s_[4];
};

}  // namespace varexp
