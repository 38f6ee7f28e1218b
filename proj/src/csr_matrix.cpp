#include "csrk/csr_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace csrk {

CsrMatrix::CsrMatrix(index_t n_rows, index_t n_cols, std::vector<index_t> row_ptr,
                     std::vector<index_t> col_idx, std::vector<value_t> vals)
    : n_rows_(n_rows), n_cols_(n_cols), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)),
      vals_(std::move(vals)) {
  if (col_idx_.size() >= kMaxNnz)
    throw Error("csr: nnz exceeds 32-bit index range");
  if (row_ptr_.size() != std::size_t{n_rows_} + 1)
    throw Error("csr: row_ptr has length " + std::to_string(row_ptr_.size()) + ", expected " +
                std::to_string(std::size_t{n_rows_} + 1));
  if (row_ptr_.front() != 0)
    throw Error("csr: row_ptr[0] must be 0");
  if (row_ptr_.back() != col_idx_.size() || vals_.size() != col_idx_.size())
    throw Error("csr: row_ptr[n_rows], col_idx and vals lengths disagree");
  for (index_t r = 0; r < n_rows_; ++r) {
    if (row_ptr_[r + 1] < row_ptr_[r])
      throw Error("csr: row_ptr decreases at row " + std::to_string(r));
    for (index_t j = row_ptr_[r]; j < row_ptr_[r + 1]; ++j) {
      if (col_idx_[j] >= n_cols_)
        throw Error("csr: column " + std::to_string(col_idx_[j]) + " out of range in row " +
                    std::to_string(r));
      if (j > row_ptr_[r] && col_idx_[j] <= col_idx_[j - 1])
        throw Error("csr: columns not strictly increasing in row " + std::to_string(r));
    }
  }
}

const value_t *CsrMatrix::find(index_t row, index_t col) const {
  auto cols = row_cols(row);
  auto it = std::lower_bound(cols.begin(), cols.end(), col);
  if (it == cols.end() || *it != col)
    return nullptr;
  return &vals_[row_ptr_[row] + static_cast<index_t>(it - cols.begin())];
}

CsrMatrix build_csr(index_t n_rows, index_t n_cols, std::span<const Triplet> triplets) {
  if (triplets.size() >= kMaxNnz)
    throw Error("build_csr: too many triplets for 32-bit indices");
  std::vector<index_t> counts(std::size_t{n_rows} + 1, 0);
  for (std::size_t t = 0; t < triplets.size(); ++t) {
    const auto &e = triplets[t];
    if (e.row >= n_rows || e.col >= n_cols)
      throw Error("build_csr: triplet " + std::to_string(t) + " (" + std::to_string(e.row) + ", " +
                  std::to_string(e.col) + ") out of range for " + std::to_string(n_rows) + "x" +
                  std::to_string(n_cols));
    ++counts[e.row + 1];
  }
  std::partial_sum(counts.begin(), counts.end(), counts.begin());

  // Bucket by row, then sort and merge each row.
  std::vector<std::pair<index_t, value_t>> bucket(triplets.size());
  auto fill = counts;
  for (const auto &e : triplets)
    bucket[fill[e.row]++] = {e.col, e.value};

  std::vector<index_t> row_ptr(std::size_t{n_rows} + 1, 0);
  std::vector<index_t> col_idx;
  std::vector<value_t> vals;
  col_idx.reserve(triplets.size());
  vals.reserve(triplets.size());
  for (index_t r = 0; r < n_rows; ++r) {
    auto first = bucket.begin() + counts[r];
    auto last = bucket.begin() + counts[r + 1];
    // Stable so that duplicates are summed in input order.
    std::stable_sort(first, last, [](const auto &a, const auto &b) { return a.first < b.first; });
    for (auto it = first; it != last; ++it) {
      if (!col_idx.empty() && col_idx.size() > row_ptr[r] && col_idx.back() == it->first)
        vals.back() += it->second;
      else {
        col_idx.push_back(it->first);
        vals.push_back(it->second);
      }
    }
    row_ptr[r + 1] = static_cast<index_t>(col_idx.size());
  }
  return CsrMatrix(n_rows, n_cols, std::move(row_ptr), std::move(col_idx), std::move(vals));
}

CsrMatrix symmetric_permute(const CsrMatrix &a, const Permutation &p) {
  if (!a.is_square())
    throw DimensionError("symmetric_permute: matrix is not square");
  if (p.size() != a.n_rows())
    throw DimensionError("symmetric_permute: permutation size " + std::to_string(p.size()) +
                         " != matrix order " + std::to_string(a.n_rows()));
  const index_t n = a.n_rows();
  std::vector<index_t> row_ptr(std::size_t{n} + 1, 0);
  for (index_t new_r = 0; new_r < n; ++new_r)
    row_ptr[new_r + 1] = row_ptr[new_r] + a.row_nnz(p.old_index(new_r));

  std::vector<index_t> col_idx(a.nnz());
  std::vector<value_t> vals(a.nnz());
  std::vector<std::pair<index_t, value_t>> row;
  for (index_t new_r = 0; new_r < n; ++new_r) {
    const index_t old_r = p.old_index(new_r);
    auto cols = a.row_cols(old_r);
    auto vs = a.row_vals(old_r);
    row.clear();
    for (std::size_t j = 0; j < cols.size(); ++j)
      row.emplace_back(p.new_index(cols[j]), vs[j]);
    std::sort(row.begin(), row.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    for (std::size_t j = 0; j < row.size(); ++j) {
      col_idx[row_ptr[new_r] + j] = row[j].first;
      vals[row_ptr[new_r] + j] = row[j].second;
    }
  }
  return CsrMatrix(n, n, std::move(row_ptr), std::move(col_idx), std::move(vals));
}

CsrMatrix transpose(const CsrMatrix &a) {
  std::vector<index_t> row_ptr(std::size_t{a.n_cols()} + 1, 0);
  for (auto c : a.col_idx())
    ++row_ptr[c + 1];
  std::partial_sum(row_ptr.begin(), row_ptr.end(), row_ptr.begin());
  std::vector<index_t> col_idx(a.nnz());
  std::vector<value_t> vals(a.nnz());
  auto fill = row_ptr;
  // Scanning rows in order keeps the output columns sorted.
  for (index_t r = 0; r < a.n_rows(); ++r)
    for (index_t j = a.row_ptr()[r]; j < a.row_ptr()[r + 1]; ++j) {
      const index_t dst = fill[a.col_idx()[j]]++;
      col_idx[dst] = r;
      vals[dst] = a.vals()[j];
    }
  return CsrMatrix(a.n_cols(), a.n_rows(), std::move(row_ptr), std::move(col_idx), std::move(vals));
}

index_t bandwidth(const CsrMatrix &a) {
  index_t bw = 0;
  for (index_t r = 0; r < a.n_rows(); ++r) {
    auto cols = a.row_cols(r);
    if (cols.empty())
      continue;
    // Sorted columns: the extremes are the first and last entry.
    const index_t lo = cols.front(), hi = cols.back();
    bw = std::max(bw, lo < r ? r - lo : lo - r);
    bw = std::max(bw, hi < r ? r - hi : hi - r);
  }
  return bw;
}

} // namespace csrk
