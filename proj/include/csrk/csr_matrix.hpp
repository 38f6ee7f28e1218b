#pragma once

#include <span>
#include <vector>

#include "csrk/permutation.hpp"
#include "csrk/types.hpp"

namespace csrk {

struct Triplet {
  index_t row;
  index_t col;
  value_t value;
};

/// Canonical compressed sparse row storage.
///
/// Invariants, checked on construction: row_ptr starts at 0, is
/// non-decreasing and ends at nnz; column indices are in range and strictly
/// increasing within each row. Immutable once built.
class CsrMatrix {
public:
  CsrMatrix() : row_ptr_(1, 0) {}

  /// Takes ownership of already-canonical arrays. Throws `Error` naming the
  /// first violated invariant.
  CsrMatrix(index_t n_rows, index_t n_cols, std::vector<index_t> row_ptr,
            std::vector<index_t> col_idx, std::vector<value_t> vals);

  index_t n_rows() const { return n_rows_; }
  index_t n_cols() const { return n_cols_; }
  std::size_t nnz() const { return col_idx_.size(); }
  bool is_square() const { return n_rows_ == n_cols_; }

  const std::vector<index_t> &row_ptr() const { return row_ptr_; }
  const std::vector<index_t> &col_idx() const { return col_idx_; }
  const std::vector<value_t> &vals() const { return vals_; }

  index_t row_nnz(index_t row) const { return row_ptr_[row + 1] - row_ptr_[row]; }
  std::span<const index_t> row_cols(index_t row) const {
    return {col_idx_.data() + row_ptr_[row], row_nnz(row)};
  }
  std::span<const value_t> row_vals(index_t row) const {
    return {vals_.data() + row_ptr_[row], row_nnz(row)};
  }

  /// Structural lookup; returns nullptr when (row, col) is not stored.
  const value_t *find(index_t row, index_t col) const;

  friend bool operator==(const CsrMatrix &, const CsrMatrix &) = default;

private:
  index_t n_rows_ = 0;
  index_t n_cols_ = 0;
  std::vector<index_t> row_ptr_;
  std::vector<index_t> col_idx_;
  std::vector<value_t> vals_;
};

/// Compresses coordinate triplets. Duplicates are summed, explicit zeros kept.
CsrMatrix build_csr(index_t n_rows, index_t n_cols, std::span<const Triplet> triplets);

/// P·A·Pᵀ: entry (i, j) moves to (p.new_index(i), p.new_index(j)).
CsrMatrix symmetric_permute(const CsrMatrix &a, const Permutation &p);

CsrMatrix transpose(const CsrMatrix &a);

/// max |i - j| over structural nonzeros; 0 for an empty or diagonal matrix.
index_t bandwidth(const CsrMatrix &a);

} // namespace csrk
