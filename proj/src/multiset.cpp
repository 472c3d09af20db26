#include "hyperhom/multiset.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace hyperhom {

namespace {

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    if (r > std::numeric_limits<std::uint64_t>::max() / num) {
      throw std::overflow_error("multiset table too large");
    }
    r = r * num / i;
  }
  return r;
}

}  // namespace

std::uint64_t multiset_count(int q, int r) {
  if (q < 0 || r < 0) throw std::invalid_argument("negative multiset dimensions");
  if (r == 0) return 1;
  if (q == 0) return 0;
  return binom(static_cast<std::uint64_t>(q + r - 1), static_cast<std::uint64_t>(r));
}

std::uint64_t multiset_rank(std::span<const int> sorted) {
  std::uint64_t rank = 0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    rank += binom(static_cast<std::uint64_t>(sorted[j]) + j, j + 1);
  }
  return rank;
}

std::vector<int> sorted_with(std::span<const int> tuple, int extra) {
  std::vector<int> out;
  out.reserve(tuple.size() + 1);
  auto it = std::upper_bound(tuple.begin(), tuple.end(), extra);
  out.insert(out.end(), tuple.begin(), it);
  out.push_back(extra);
  out.insert(out.end(), it, tuple.end());
  return out;
}

}  // namespace hyperhom
