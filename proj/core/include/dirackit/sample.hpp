#pragma once

#include <cstdint>
#include <vector>

#include "dirackit/poly.hpp"

namespace dirackit {

// Deterministic splitmix64 stream of small rationals for pointwise checks.
// The same seed yields the same points on every platform.
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  // Numerator in [-limit, limit], denominator in {1, 2, 3}.
  Rational small_rational(int limit = 5);

  // Chart point with every poly in `avoid` nonvanishing; redraws on a hit.
  std::vector<Rational> point(const Chart& c, const std::vector<Poly>& avoid,
                              int limit = 5);

 private:
  std::uint64_t state_;
};

}  // namespace dirackit
