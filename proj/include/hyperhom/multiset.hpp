#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hyperhom {

/// Number of non-decreasing length-r tuples over {0..q-1}, i.e. C(q+r-1, r).
std::uint64_t multiset_count(int q, int r);

/// Colex rank of a non-decreasing tuple over {0..q-1}; dense in [0, multiset_count).
std::uint64_t multiset_rank(std::span<const int> sorted);

/// Visits every non-decreasing length-r tuple over {0..q-1} in lexicographic order.
template <typename F>
void for_each_multiset(int q, int r, F&& visit) {
  if (r == 0) {
    std::vector<int> empty;
    visit(std::span<const int>(empty));
    return;
  }
  if (q <= 0) return;
  std::vector<int> t(static_cast<std::size_t>(r), 0);
  for (;;) {
    visit(std::span<const int>(t));
    int pos = r - 1;
    while (pos >= 0 && t[static_cast<std::size_t>(pos)] == q - 1) --pos;
    if (pos < 0) return;
    const int next = t[static_cast<std::size_t>(pos)] + 1;
    for (int j = pos; j < r; ++j) t[static_cast<std::size_t>(j)] = next;
  }
}

/// Visits every length-r tuple over {0..q-1} in lexicographic order.
template <typename F>
void for_each_tuple(int q, int r, F&& visit) {
  if (r == 0) {
    std::vector<int> empty;
    visit(std::span<const int>(empty));
    return;
  }
  if (q <= 0) return;
  std::vector<int> t(static_cast<std::size_t>(r), 0);
  for (;;) {
    visit(std::span<const int>(t));
    int pos = r - 1;
    while (pos >= 0 && t[static_cast<std::size_t>(pos)] == q - 1) {
      t[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return;
    ++t[static_cast<std::size_t>(pos)];
  }
}

/// Returns a sorted copy of `tuple` with `extra` inserted.
std::vector<int> sorted_with(std::span<const int> tuple, int extra);

}  // namespace hyperhom
