#include "hyperhom/symfunc.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hyperhom/multiset.hpp"

namespace hyperhom {

namespace {

constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 22;

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (b != 0 && r > kDenseLimit * 4 / b) return kDenseLimit * 4;
    r *= b;
  }
  return r;
}

}  // namespace

SymFunc::SymFunc(int q, int arity) : q_(q), arity_(arity) {
  if (q < 0) throw std::invalid_argument("negative domain size");
  if (arity < 1) throw std::invalid_argument("arity must be >= 1");
  const std::uint64_t count = multiset_count(q, arity);
  if (count > (std::uint64_t{1} << 27)) throw std::length_error("weight table too large");
  weights_.assign(count, Rational(0));
  build_index();
}

void SymFunc::build_index() {
  dense_.clear();
  const std::uint64_t total = ipow(static_cast<std::uint64_t>(q_), arity_);
  if (q_ == 0 || total > kDenseLimit) return;
  dense_.resize(total);
  std::vector<int> sorted;
  for_each_tuple(q_, arity_, [&](std::span<const int> t) {
    std::uint64_t code = 0;
    for (int z : t) code = code * static_cast<std::uint64_t>(q_) + static_cast<std::uint64_t>(z);
    sorted.assign(t.begin(), t.end());
    std::sort(sorted.begin(), sorted.end());
    dense_[code] = static_cast<std::uint32_t>(multiset_rank(sorted));
  });
}

SymFunc SymFunc::tabulate(int q, int arity,
                          const std::function<Rational(std::span<const int>)>& weight) {
  SymFunc f(q, arity);
  for_each_multiset(q, arity, [&](std::span<const int> key) {
    Rational w = weight(key);
    if (w.sign() < 0) throw std::invalid_argument("negative weight");
    f.weights_[multiset_rank(key)] = std::move(w);
  });
  return f;
}

std::size_t SymFunc::slot(std::span<const int> tuple) const {
  if (static_cast<int>(tuple.size()) != arity_) {
    throw std::invalid_argument("tuple length " + std::to_string(tuple.size()) +
                                " does not match arity " + std::to_string(arity_));
  }
  if (!dense_.empty()) {
    std::uint64_t code = 0;
    for (int z : tuple) {
      if (z < 0 || z >= q_) throw std::out_of_range("domain element out of range");
      code = code * static_cast<std::uint64_t>(q_) + static_cast<std::uint64_t>(z);
    }
    return dense_[code];
  }
  std::vector<int> sorted(tuple.begin(), tuple.end());
  std::sort(sorted.begin(), sorted.end());
  if (!sorted.empty() && (sorted.front() < 0 || sorted.back() >= q_)) {
    throw std::out_of_range("domain element out of range");
  }
  return multiset_rank(sorted);
}

const Rational& SymFunc::at(std::span<const int> tuple) const { return weights_[slot(tuple)]; }

SymFunc SymFunc::with_weight(std::span<const int> tuple, const Rational& value) const {
  if (value.sign() < 0) throw std::invalid_argument("negative weight");
  SymFunc copy = *this;
  copy.weights_[slot(tuple)] = value;
  return copy;
}

void SymFunc::for_each(
    const std::function<void(std::span<const int>, const Rational&)>& visit) const {
  for_each_multiset(q_, arity_, [&](std::span<const int> key) {
    visit(key, weights_[multiset_rank(key)]);
  });
}

bool SymFunc::is_zero() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [](const Rational& w) { return w.is_zero(); });
}

MarginalTable marginalize(const SymFunc& g, int k) {
  if (k < 1 || k > g.arity()) {
    throw std::invalid_argument("marginal arity " + std::to_string(k) + " outside [1, " +
                                std::to_string(g.arity()) + "]");
  }
  SymFunc current = g;
  const int q = g.domain_size();
  for (int a = g.arity() - 1; a >= k; --a) {
    const SymFunc& upper = current;
    SymFunc next = SymFunc::tabulate(q, a, [&](std::span<const int> key) {
      Rational sum;
      std::vector<int> full(key.begin(), key.end());
      full.push_back(0);
      for (int z = 0; z < q; ++z) {
        full.back() = z;
        sum += upper.at(full);
      }
      return sum;
    });
    current = std::move(next);
  }
  return current;
}

std::vector<int> participating_elements(const SymFunc& g) {
  const MarginalTable f1 = marginalize(g, 1);
  std::vector<int> kept;
  for (int z = 0; z < g.domain_size(); ++z) {
    if (f1.at({z}).sign() > 0) kept.push_back(z);
  }
  return kept;
}

SymFunc restrict_domain(const SymFunc& g, std::span<const int> keep) {
  for (int z : keep) {
    if (z < 0 || z >= g.domain_size()) throw std::out_of_range("restriction element out of range");
  }
  std::vector<int> original;
  return SymFunc::tabulate(static_cast<int>(keep.size()), g.arity(),
                           [&](std::span<const int> key) {
                             original.clear();
                             for (int z : key) original.push_back(keep[static_cast<std::size_t>(z)]);
                             return g.at(original);
                           });
}

PrunedDomain prune_domain(const SymFunc& g) {
  PrunedDomain out;
  out.kept = participating_elements(g);
  for (int z = 0, j = 0; z < g.domain_size(); ++z) {
    if (j < static_cast<int>(out.kept.size()) && out.kept[static_cast<std::size_t>(j)] == z) {
      ++j;
    } else {
      out.removed.push_back(z);
    }
  }
  out.function = restrict_domain(g, out.kept);
  // Removed elements only ever sit in zero-weight tuples, so survivors keep f^(1) > 0.
  if (participating_elements(out.function).size() != out.kept.size()) {
    throw std::logic_error("pruning did not reach a fixpoint");
  }
  return out;
}

std::vector<std::vector<int>> domain_components(const SymFunc& g,
                                                std::span<const int> elements) {
  const MarginalTable f2 = marginalize(g, 2);
  const MarginalTable f1 = marginalize(g, 1);
  const std::size_t n = elements.size();
  for (int z : elements) {
    if (f1.at({z}).sign() <= 0) {
      throw std::invalid_argument("domain_components requires a pruned domain; element " +
                                  std::to_string(z) + " does not participate");
    }
  }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (f2.at({elements[a], elements[b]}).sign() > 0) {
        const std::size_t ra = find(a);
        const std::size_t rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
  }
  std::vector<std::vector<int>> groups;
  std::vector<int> group_of(n, -1);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return elements[x] < elements[y]; });
  for (std::size_t idx : order) {
    const std::size_t root = find(idx);
    if (group_of[root] < 0) {
      group_of[root] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(group_of[root])].push_back(elements[idx]);
  }
  return groups;
}

std::vector<std::vector<int>> domain_components(const SymFunc& g) {
  std::vector<int> all(static_cast<std::size_t>(g.domain_size()));
  std::iota(all.begin(), all.end(), 0);
  return domain_components(g, all);
}

}  // namespace hyperhom
