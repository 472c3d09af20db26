#include "hyperhom/abelian.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hyperhom {

AbelianGroup::AbelianGroup(int order, std::vector<int> table, int zero)
    : order_(order), zero_(zero), table_(std::move(table)) {
  const auto n = static_cast<std::size_t>(order);
  if (order < 1) throw std::invalid_argument("group order must be positive");
  if (table_.size() != n * n) throw std::invalid_argument("Cayley table has wrong size");
  if (zero < 0 || zero >= order) throw std::invalid_argument("identity out of range");
  for (int v : table_) {
    if (v < 0 || v >= order) throw std::invalid_argument("Cayley table entry out of range");
  }
  for (int a = 0; a < order; ++a) {
    if (add(zero, a) != a) throw std::invalid_argument("identity fails at " + std::to_string(a));
    for (int b = 0; b < order; ++b) {
      if (add(a, b) != add(b, a)) throw std::invalid_argument("table is not commutative");
      for (int c = 0; c < order; ++c) {
        if (add(add(a, b), c) != add(a, add(b, c))) {
          throw std::invalid_argument("table is not associative");
        }
      }
    }
  }
  neg_.assign(n, -1);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      if (add(a, b) == zero) neg_[static_cast<std::size_t>(a)] = b;
    }
    if (neg_[static_cast<std::size_t>(a)] < 0) {
      throw std::invalid_argument("no inverse for " + std::to_string(a));
    }
  }
}

AbelianGroup AbelianGroup::cyclic(int d) {
  const int moduli[] = {d};
  return product(moduli);
}

AbelianGroup AbelianGroup::product(std::span<const int> moduli) {
  int order = 1;
  for (int m : moduli) {
    if (m < 1) throw std::invalid_argument("cyclic modulus must be positive");
    order *= m;
  }
  auto digits = [&](int x) {
    std::vector<int> d(moduli.size());
    for (std::size_t i = moduli.size(); i-- > 0;) {
      d[i] = x % moduli[i];
      x /= moduli[i];
    }
    return d;
  };
  std::vector<int> table(static_cast<std::size_t>(order) * static_cast<std::size_t>(order));
  for (int a = 0; a < order; ++a) {
    const auto da = digits(a);
    for (int b = 0; b < order; ++b) {
      const auto db = digits(b);
      int code = 0;
      for (std::size_t i = 0; i < moduli.size(); ++i) {
        code = code * moduli[i] + (da[i] + db[i]) % moduli[i];
      }
      table[static_cast<std::size_t>(a * order + b)] = code;
    }
  }
  return AbelianGroup(order, std::move(table), 0);
}

int AbelianGroup::times(long n, int a) const {
  if (n < 0) return neg(times(-n, a));
  int acc = zero_;
  for (long i = 0; i < n; ++i) acc = add(acc, a);
  return acc;
}

int CyclicDecomposition::element_of(std::span<const long> residues) const {
  for (std::size_t e = 0; e < iso.size(); ++e) {
    if (std::equal(iso[e].begin(), iso[e].end(), residues.begin(), residues.end())) {
      return static_cast<int>(e);
    }
  }
  throw std::out_of_range("residue tuple has no preimage");
}

std::vector<long> CyclicDecomposition::prime_power_factors() const {
  std::vector<long> out;
  for (long d : factors) {
    for (long p = 2; p * p <= d; ++p) {
      long pe = 1;
      while (d % p == 0) {
        d /= p;
        pe *= p;
      }
      if (pe > 1) out.push_back(pe);
    }
    if (d > 1) out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CyclicDecomposition decompose(const AbelianGroup& A) {
  const int n = A.order();
  // Presentation: generator per element, relation e_a + e_b - e_{a+b} per unordered pair.
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) pairs.emplace_back(a, b);
  }
  IntMatrix rel(pairs.size(), static_cast<std::size_t>(n));
  for (std::size_t row = 0; row < pairs.size(); ++row) {
    const auto [a, b] = pairs[row];
    rel(row, static_cast<std::size_t>(a)) += 1;
    rel(row, static_cast<std::size_t>(b)) += 1;
    rel(row, static_cast<std::size_t>(A.add(a, b))) -= 1;
  }
  const SnfResult s = snf(rel);
  if (s.rank != static_cast<std::size_t>(n)) {
    throw std::logic_error("Cayley-table presentation does not define a finite group");
  }
  CyclicDecomposition dec;
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (s.diagonal(i) > 1) {
      slots.push_back(i);
      dec.factors.push_back(s.diagonal(i).get_si());
    }
  }
  dec.iso.resize(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    for (std::size_t f = 0; f < slots.size(); ++f) {
      BigInt r;
      mpz_fdiv_r_ui(r.get_mpz_t(), s.V(static_cast<std::size_t>(x), slots[f]).get_mpz_t(),
                    static_cast<unsigned long>(dec.factors[f]));
      dec.iso[static_cast<std::size_t>(x)].push_back(r.get_si());
    }
  }

  long product = 1;
  for (long d : dec.factors) product *= d;
  if (product != n) throw std::logic_error("invariant factors do not multiply to the order");
  for (std::size_t i = 1; i < dec.factors.size(); ++i) {
    if (dec.factors[i] % dec.factors[i - 1] != 0) throw std::logic_error("broken divisibility chain");
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const auto& ia = dec.iso[static_cast<std::size_t>(a)];
      const auto& ib = dec.iso[static_cast<std::size_t>(b)];
      const auto& isum = dec.iso[static_cast<std::size_t>(A.add(a, b))];
      for (std::size_t f = 0; f < dec.factors.size(); ++f) {
        if ((ia[f] + ib[f]) % dec.factors[f] != isum[f]) {
          throw std::logic_error("decomposition map is not additive");
        }
      }
      if (a != b && ia == ib) throw std::logic_error("decomposition map is not injective");
    }
  }
  return dec;
}

BigInt count_solutions_mod(const IntMatrix& M, std::span<const BigInt> c, long d) {
  if (d < 1) throw std::invalid_argument("modulus must be >= 1");
  if (c.size() != M.rows()) throw std::invalid_argument("target length != row count");
  const std::size_t m = M.rows();
  const std::size_t n = M.cols();
  const SnfResult s = snf(M);
  const BigInt D = d;
  BigInt count = 1;
  for (std::size_t i = 0; i < m; ++i) {
    BigInt ci = 0;
    for (std::size_t k = 0; k < m; ++k) ci += s.U(i, k) * c[k];
    if (i < n) {
      BigInt g;
      mpz_gcd(g.get_mpz_t(), s.diagonal(i).get_mpz_t(), D.get_mpz_t());
      if (!mpz_divisible_p(ci.get_mpz_t(), g.get_mpz_t())) return 0;
      count *= g;
    } else if (!mpz_divisible_p(ci.get_mpz_t(), D.get_mpz_t())) {
      return 0;
    }
  }
  if (n > m) count *= pow(D, n - m);
  return count;
}

namespace {

using i128 = __int128;

std::vector<std::pair<long, int>> factorize(long d) {
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= d; ++p) {
    int e = 0;
    while (d % p == 0) {
      d /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (d > 1) out.emplace_back(d, 1);
  return out;
}

long mod(long x, long m) {
  x %= m;
  return x < 0 ? x + m : x;
}

/// Solutions of the system over GF(2): incremental echelon basis on bitsets.
BigInt count_gf2(int n, std::span<const SparseRow> rows, std::span<const long> c) {
  const std::size_t words = (static_cast<std::size_t>(n) + 1 + 63) / 64;
  const auto rhs_bit = static_cast<std::size_t>(n);
  std::vector<std::vector<std::uint64_t>> basis(static_cast<std::size_t>(n));
  std::vector<std::uint64_t> row(words);
  int rank = 0;
  auto lowest_coeff = [&](const std::vector<std::uint64_t>& r) -> long {
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bits = r[w];
      if (w == rhs_bit / 64) bits &= ~(std::uint64_t{1} << (rhs_bit % 64));
      if (bits) {
        const auto col = static_cast<long>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)));
        return col < n ? col : -1;
      }
    }
    return -1;
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::fill(row.begin(), row.end(), 0);
    for (const auto& [col, coeff] : rows[i]) {
      if (mod(coeff, 2)) row[static_cast<std::size_t>(col) / 64] ^= std::uint64_t{1} << (col % 64);
    }
    if (mod(c[i], 2)) row[rhs_bit / 64] ^= std::uint64_t{1} << (rhs_bit % 64);
    for (;;) {
      const long col = lowest_coeff(row);
      if (col < 0) {
        if ((row[rhs_bit / 64] >> (rhs_bit % 64)) & 1U) return 0;
        break;
      }
      auto& pivot = basis[static_cast<std::size_t>(col)];
      if (pivot.empty()) {
        pivot = row;
        ++rank;
        break;
      }
      for (std::size_t w = 0; w < words; ++w) row[w] ^= pivot[w];
    }
  }
  return pow(BigInt(2), static_cast<unsigned long>(n - rank));
}

/// Solutions over Z/p^e: Gaussian elimination pivoting on least p-valuation.
BigInt count_prime_power(int n, std::span<const SparseRow> rows, std::span<const long> c, long p,
                         int e) {
  if (p == 2 && e == 1) return count_gf2(n, rows, c);
  long P = 1;
  for (int i = 0; i < e; ++i) P *= p;
  const std::size_t m = rows.size();
  const auto cols = static_cast<std::size_t>(n);
  std::vector<long> A(m * cols, 0);
  std::vector<long> b(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& [col, coeff] : rows[i]) {
      long& cell = A[i * cols + static_cast<std::size_t>(col)];
      cell = mod(cell + coeff, P);
    }
    b[i] = mod(c[i], P);
  }
  auto valuation = [&](long x) {
    if (x == 0) return e;
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  };
  auto inverse = [&](long u) {
    // extended Euclid; u is a unit mod P
    long t = 0, new_t = 1, r = P, new_r = mod(u, P);
    while (new_r != 0) {
      const long q = r / new_r;
      t = std::exchange(new_t, t - q * new_t);
      r = std::exchange(new_r, r - q * new_r);
    }
    return mod(t, P);
  };

  std::vector<bool> row_done(m, false);
  std::vector<bool> col_done(cols, false);
  BigInt count = 1;
  std::size_t rank = 0;
  for (;;) {
    int best_v = e;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < m && best_v > 0; ++i) {
      if (row_done[i]) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (col_done[j]) continue;
        const int v = valuation(A[i * cols + j]);
        if (v < best_v) {
          best_v = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    }
    if (best_v >= e) break;
    long pv = 1;
    for (int i = 0; i < best_v; ++i) pv *= p;
    const long unit_inv = inverse(A[bi * cols + bj] / pv);
    for (std::size_t j = 0; j < cols; ++j) {
      A[bi * cols + j] = static_cast<long>(static_cast<i128>(A[bi * cols + j]) * unit_inv % P);
    }
    b[bi] = static_cast<long>(static_cast<i128>(b[bi]) * unit_inv % P);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == bi || row_done[i] || A[i * cols + bj] == 0) continue;
      const long f = A[i * cols + bj] / pv;
      for (std::size_t j = 0; j < cols; ++j) {
        if (A[bi * cols + j] == 0) continue;
        A[i * cols + j] = mod(static_cast<long>((static_cast<i128>(A[i * cols + j]) -
                                                 static_cast<i128>(f) * A[bi * cols + j]) % P),
                              P);
      }
      b[i] = mod(static_cast<long>((static_cast<i128>(b[i]) - static_cast<i128>(f) * b[bi]) % P), P);
    }
    if (b[bi] % pv != 0) return 0;
    count *= pv;
    row_done[bi] = true;
    col_done[bj] = true;
    ++rank;
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!row_done[i] && b[i] != 0) return 0;
  }
  count *= pow(BigInt(P), static_cast<unsigned long>(cols - rank));
  return count;
}

}  // namespace

BigInt count_solutions_mod_local(int n, std::span<const SparseRow> rows,
                                 std::span<const long> c, long d) {
  if (d < 1) throw std::invalid_argument("modulus must be >= 1");
  if (c.size() != rows.size()) throw std::invalid_argument("target length != row count");
  for (const auto& row : rows) {
    for (const auto& entry : row) {
      if (entry.first < 0 || entry.first >= n) throw std::out_of_range("column out of range");
    }
  }
  BigInt count = 1;
  for (const auto& [p, e] : factorize(d)) count *= count_prime_power(n, rows, c, p, e);
  return count;
}

IntMatrix occurrence_matrix(const CspInstance& I) {
  I.validate();
  IntMatrix M(I.scopes.size(), static_cast<std::size_t>(I.n));
  for (std::size_t j = 0; j < I.scopes.size(); ++j) {
    for (int v : I.scopes[j]) M(j, static_cast<std::size_t>(v)) += 1;
  }
  return M;
}

BigInt count_homs(const CyclicDecomposition& dec, int a, const CspInstance& I) {
  I.validate();
  if (a < 0 || static_cast<std::size_t>(a) >= dec.iso.size()) {
    throw std::out_of_range("target element out of range");
  }
  std::vector<SparseRow> rows;
  for (const auto& s : I.scopes) {
    SparseRow row;
    for (int v : s) {
      auto it = std::find_if(row.begin(), row.end(), [&](const auto& e) { return e.first == v; });
      if (it == row.end()) {
        row.emplace_back(v, 1);
      } else {
        ++it->second;
      }
    }
    rows.push_back(std::move(row));
  }
  const std::size_t scope_rows = rows.size();
  for (const auto& [u, w] : I.equalities) {
    if (u != w) rows.push_back({{u, 1}, {w, -1}});
  }
  BigInt count = 1;
  std::vector<long> target(rows.size(), 0);
  for (std::size_t f = 0; f < dec.factors.size(); ++f) {
    std::fill(target.begin(), target.end(), 0);
    std::fill(target.begin(), target.begin() + static_cast<long>(scope_rows),
              dec.iso[static_cast<std::size_t>(a)][f]);
    count *= count_solutions_mod_local(I.n, rows, target, dec.factors[f]);
    if (count == 0) break;
  }
  return count;
}

BigInt count_homs(const CyclicDecomposition& dec, int a, const Hypergraph& G) {
  return count_homs(dec, a, as_csp(G));
}

}  // namespace hyperhom
