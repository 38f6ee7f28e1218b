#pragma once

#include <span>
#include <vector>

#include "csrk/csr_matrix.hpp"
#include "csrk/permutation.hpp"

namespace csrk {

/// CSR-k: a reordered CSR matrix plus k-1 levels of row-grouping pointers.
///
/// Level 1 (`sr_ptr`) holds cumulative rows per super-row; level 2
/// (`ssr_ptr`, only for k = 3) holds cumulative super-rows per
/// super-super-row. `base()` is a plain CSR matrix and can be handed to any
/// CSR consumer unchanged.
class CsrKMatrix {
public:
  CsrKMatrix(CsrMatrix base, std::vector<std::vector<index_t>> group_ptrs, Permutation perm);

  int k() const { return static_cast<int>(group_ptrs_.size()) + 1; }
  const CsrMatrix &base() const { return base_; }
  const Permutation &perm() const { return perm_; }
  const std::vector<std::vector<index_t>> &group_ptrs() const { return group_ptrs_; }

  const std::vector<index_t> &sr_ptr() const { return group_ptrs_.at(0); }
  /// Throws when k != 3.
  const std::vector<index_t> &ssr_ptr() const;

  index_t num_super_rows() const { return static_cast<index_t>(sr_ptr().size() - 1); }
  index_t num_super_super_rows() const { return static_cast<index_t>(ssr_ptr().size() - 1); }

private:
  CsrMatrix base_;
  std::vector<std::vector<index_t>> group_ptrs_;
  Permutation perm_;
};

/// Symmetrically permutes `a` by `perm` and attaches prefix-summed groupings.
/// `groups[0]` are rows per super-row, `groups[1]` (optional) super-rows per
/// super-super-row. Throws `Error` naming the inconsistent level.
CsrKMatrix pack_csrk(const CsrMatrix &a, const Permutation &perm,
                     std::span<const std::vector<index_t>> groups);

/// Checks the prefix-sum invariants of every grouping level; throws on violation.
void validate_group_ptrs(const std::vector<std::vector<index_t>> &group_ptrs, index_t n_rows);

/// Reverses the packing permutation: returns the matrix in original row order.
CsrMatrix unpack_csrk(const CsrKMatrix &m);

} // namespace csrk
