#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace flockhd {

// Seeded RNG with hand-rolled uniform draws. std::uniform_real_distribution
// is implementation-defined, which would break byte-identical reruns of the
// randomized suites across toolchains; building doubles from raw 64-bit
// output keeps every draw reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform in [0, 1)
  double uniform01() { return std::ldexp(static_cast<double>(gen_() >> 11), -53); }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }

  bool coin() { return (gen_() & 1u) != 0; }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace flockhd
