#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace fairrobust {

// splitmix64 step; used to derive independent stream seeds from (seed, tag...)
// so that e.g. the noise draws for train/val/test are unrelated streams.
uint64_t mix_seed(uint64_t base, std::initializer_list<uint64_t> parts);

// Deterministic RNG wrapper. All sampling helpers are implemented by hand on
// top of mt19937_64 output so results do not depend on the stdlib's
// distribution implementations (those are unspecified and differ across
// standard libraries, which would break byte-identical reports).
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }

  // Uniform integer in [0, n) by rejection sampling (unbiased).
  uint64_t next_below(uint64_t n);

  // Uniform double in [0, 1) with 53 bits of precision.
  double uniform();

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Fisher–Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct indices drawn uniformly from [0, n), in draw order.
  std::vector<size_t> sample_without_replacement(size_t n, size_t k);

 private:
  std::mt19937_64 eng_;
};

}  // namespace fairrobust
