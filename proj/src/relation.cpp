#include "hyperhom/relation.hpp"

#include <algorithm>
#include <stdexcept>

#include "hyperhom/multiset.hpp"

namespace hyperhom {

SymRelation::SymRelation(int size, int arity,
                         const std::function<bool(std::span<const int>)>& member)
    : size_(size), arity_(arity), bits_(multiset_count(size, arity), false) {
  for_each_multiset(size, arity, [&](std::span<const int> key) {
    bits_[multiset_rank(key)] = member(key);
  });
}

bool SymRelation::contains(std::span<const int> tuple) const {
  if (static_cast<int>(tuple.size()) != arity_) throw std::invalid_argument("relation arity mismatch");
  std::vector<int> sorted(tuple.begin(), tuple.end());
  std::sort(sorted.begin(), sorted.end());
  if (!sorted.empty() && (sorted.front() < 0 || sorted.back() >= size_)) {
    throw std::out_of_range("relation element out of range");
  }
  return bits_[multiset_rank(sorted)];
}

std::vector<std::vector<int>> SymRelation::members() const {
  std::vector<std::vector<int>> out;
  for_each_multiset(size_, arity_, [&](std::span<const int> key) {
    if (bits_[multiset_rank(key)]) out.emplace_back(key.begin(), key.end());
  });
  return out;
}

bool SymRelation::empty() const { return std::none_of(bits_.begin(), bits_.end(), [](bool b) { return b; }); }

}  // namespace hyperhom
