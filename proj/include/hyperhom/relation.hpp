#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace hyperhom {

/// Symmetric relation of fixed arity on {0..size-1}, stored on sorted multisets.
class SymRelation {
public:
  SymRelation() = default;
  SymRelation(int size, int arity, const std::function<bool(std::span<const int>)>& member);

  [[nodiscard]] int size() const { return size_; }
  [[nodiscard]] int arity() const { return arity_; }
  [[nodiscard]] bool contains(std::span<const int> tuple) const;
  [[nodiscard]] bool contains(std::initializer_list<int> tuple) const {
    return contains(std::span<const int>(tuple.begin(), tuple.size()));
  }
  /// Members as sorted tuples, lexicographic.
  [[nodiscard]] std::vector<std::vector<int>> members() const;
  [[nodiscard]] bool empty() const;

  friend bool operator==(const SymRelation&, const SymRelation&) = default;

private:
  int size_ = 0;
  int arity_ = 0;
  std::vector<bool> bits_;  // by colex multiset rank
};

}  // namespace hyperhom
