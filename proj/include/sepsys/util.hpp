#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "rational.hpp"

namespace sepsys {

/// Visits all k-element subsets of {0..n-1} in lexicographic order.
/// The visitor may return false to stop early; returns false if stopped.
inline bool for_each_combination(std::size_t n, std::size_t k,
                                 const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  if (k > n) return true;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  while (true) {
    if (!visit(c)) return false;
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

inline BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  BigInt result = 1;
  for (std::size_t i = 0; i < k; ++i) {
    result *= BigInt(n - i);
    result /= BigInt(i + 1);
  }
  return result;
}

/// FNV-1a over a byte string; used for stable document digests.
inline std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace sepsys
