#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace satrank {

// Deterministic RNG. mt19937_64 output is pinned by the standard, and we
// derive doubles from raw bits ourselves, so streams are bit-identical
// across platforms for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  // Uniform index in [0, n). Rejection sampling, no modulo bias.
  std::size_t index(std::size_t n);

  // Deterministic Fisher-Yates shuffle (std::shuffle is unspecified).
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct indices from [0, n), in draw order.
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 gen_;
};

std::uint64_t fnv1a64(const void* bytes, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ull);
std::uint64_t fnv1a64(std::string_view s);

// One global seed is threaded through the repo; per-operation streams are
// derived as seed ^ hash(op name, call index).
std::uint64_t split_seed(std::uint64_t seed, std::string_view op_name, std::uint64_t call_index);

}  // namespace satrank
