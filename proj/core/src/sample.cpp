#include "dirackit/sample.hpp"

#include "dirackit/error.hpp"

namespace dirackit {

std::uint64_t SampleStream::next() {
  state_ += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Rational SampleStream::small_rational(int limit) {
  int span = 2 * limit + 1;
  int num = static_cast<int>(next() % static_cast<std::uint64_t>(span)) - limit;
  int den = static_cast<int>(next() % 3) + 1;
  return Rational(num, den);
}

std::vector<Rational> SampleStream::point(const Chart& c,
                                          const std::vector<Poly>& avoid,
                                          int limit) {
  for (int attempt = 0; attempt < 4000; ++attempt) {
    std::vector<Rational> p;
    p.reserve(c.dim());
    for (std::size_t i = 0; i < c.dim(); ++i)
      p.push_back(small_rational(limit));
    bool clean = true;
    for (const Poly& q : avoid)
      if (q.eval(p).is_zero()) {
        clean = false;
        break;
      }
    if (clean) return p;
  }
  throw Error("sample: could not find a point clear of the excluded locus");
}

}  // namespace dirackit
