#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace hbtop {

using Integer = mpz_class;

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& other) const;
  bool operator==(const IntMatrix& other) const = default;
  bool is_diagonal() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Column-sparse matrix with machine-word entries; the format boundary
/// matrices are produced in.
struct SparseIntMatrix {
  using Entry = std::pair<std::uint32_t, std::int64_t>;

  std::size_t rows = 0;
  std::size_t cols = 0;
  /// Per column, entries sorted by row with nonzero values.
  std::vector<std::vector<Entry>> columns;

  IntMatrix to_dense() const;
  std::size_t nonzeros() const;
};

/// Result of a Smith normal form computation: `U * M * V == D` with U, V
/// unimodular and D diagonal with nonnegative entries d1 | d2 | ... .
struct SmithForm {
  std::vector<Integer> factors;  ///< nonzero diagonal entries, in order
  IntMatrix U;
  IntMatrix V;
  IntMatrix D;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Nonzero invariant factors of a dense matrix, without certificates.
std::vector<Integer> invariant_factors(const IntMatrix& m);

/// Nonzero invariant factors of a sparse matrix. Unit pivots are eliminated
/// sparsely in 64-bit arithmetic; whatever is left goes through the dense
/// arbitrary-precision routine. An overflow in the sparse phase restarts
/// the whole computation densely.
std::vector<Integer> invariant_factors(const SparseIntMatrix& m);

/// Determinant by fraction-free elimination. Requires a square matrix.
Integer determinant(const IntMatrix& m);

}  // namespace hbtop
