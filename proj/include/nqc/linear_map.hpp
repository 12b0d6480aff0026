#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "nqc/scalar.hpp"

namespace nqc {

/// Sparse rows x cols matrix over the Gaussian rationals. Stored entries are
/// nonzero and in bounds. Also used as the matrix of a local map C^cols -> C^rows.
class LinearMap {
 public:
  using Position = std::pair<std::size_t, std::size_t>;
  using EntryMap = std::map<Position, Scalar>;

  LinearMap() = default;
  LinearMap(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  static LinearMap identity(std::size_t n);
  /// Permutation matrix sending basis vector j to basis vector perm[j].
  static LinearMap permutation(const std::vector<std::size_t>& perm);
  static LinearMap from_dense(const std::vector<std::vector<Scalar>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const EntryMap& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }

  Scalar at(std::size_t row, std::size_t col) const;
  /// Accumulates value into (row, col); a resulting zero is erased.
  void add(std::size_t row, std::size_t col, const Scalar& value);
  void set(std::size_t row, std::size_t col, const Scalar& value);

  /// For every column, the list of (row, value) pairs with nonzero value.
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> columns() const;
  std::vector<std::vector<Scalar>> to_dense() const;
  LinearMap transpose() const;

  friend bool operator==(const LinearMap& a, const LinearMap& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  void check_bounds(std::size_t row, std::size_t col) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  EntryMap entries_;
};

/// Matrix product outer * inner (apply inner first). Throws ShapeError.
LinearMap compose(const LinearMap& outer, const LinearMap& inner);

/// Exact rank over Q(i) by fraction-free (Bareiss) elimination with
/// first-nonzero pivoting. Rows are scaled to Gaussian integers first.
std::size_t matrix_rank_exact(const LinearMap& m);

}  // namespace nqc
