#include "satrank/rng.hpp"

#include <stdexcept>

namespace satrank {

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw std::out_of_range("Rng::index(0)");
  std::uint64_t range = n;
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % range);
}

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n, std::size_t k) {
  if (k > n) throw std::out_of_range("sample_without_replacement: k > n");
  // Partial Fisher-Yates over an index array.
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + index(n - i);
    std::swap(idx[i], idx[j]);
    out.push_back(idx[i]);
  }
  return out;
}

std::uint64_t fnv1a64(const void* bytes, std::size_t len, std::uint64_t h) {
  const unsigned char* p = static_cast<const unsigned char*>(bytes);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t fnv1a64(std::string_view s) { return fnv1a64(s.data(), s.size()); }

std::uint64_t split_seed(std::uint64_t seed, std::string_view op_name, std::uint64_t call_index) {
  std::uint64_t h = fnv1a64(op_name);
  unsigned char idx[8];
  for (int i = 0; i < 8; ++i) idx[i] = static_cast<unsigned char>(call_index >> (8 * i));
  h = fnv1a64(idx, 8, h);
  return seed ^ h;
}

}  // namespace satrank
