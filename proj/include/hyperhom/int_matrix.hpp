#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hyperhom/rational.hpp"

namespace hyperhom {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const BigInt& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const BigInt& factor);
  void negate_row(std::size_t i);

  /// Exact determinant (fraction-free Bareiss); requires a square matrix.
  [[nodiscard]] BigInt determinant() const;

  [[nodiscard]] bool is_diagonal() const;
  [[nodiscard]] std::string to_string() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Smith normal form U * M * V = S with U, V unimodular.
struct SnfResult {
  IntMatrix U;
  IntMatrix V;
  IntMatrix S;
  std::size_t rank = 0;

  /// Diagonal entry i of S (0 past the rank).
  [[nodiscard]] const BigInt& diagonal(std::size_t i) const { return S(i, i); }
};

/// Pivots on the smallest nonzero |entry| of the remaining block, ties broken by
/// lowest (row, col), so the output is a deterministic function of M.
SnfResult snf(const IntMatrix& M);

}  // namespace hyperhom
