#include "csrk/csrk_matrix.hpp"

#include <string>

namespace csrk {

namespace {

const char *level_name(std::size_t level) {
  return level == 0 ? "super-row (level 1)" : "super-super-row (level 2)";
}

} // namespace

void validate_group_ptrs(const std::vector<std::vector<index_t>> &group_ptrs, index_t n_rows) {
  if (group_ptrs.empty() || group_ptrs.size() > 2)
    throw Error("csr-k: expected 1 or 2 grouping levels, got " + std::to_string(group_ptrs.size()));
  std::size_t units_below = n_rows;
  for (std::size_t level = 0; level < group_ptrs.size(); ++level) {
    const auto &ptr = group_ptrs[level];
    if (ptr.empty() || ptr.front() != 0)
      throw Error(std::string("csr-k: ") + level_name(level) + " pointer must start at 0");
    for (std::size_t i = 1; i < ptr.size(); ++i)
      if (ptr[i] <= ptr[i - 1])
        throw Error(std::string("csr-k: ") + level_name(level) +
                    " pointer not strictly increasing at " + std::to_string(i));
    if (ptr.back() != units_below)
      throw Error(std::string("csr-k: ") + level_name(level) + " pointer ends at " +
                  std::to_string(ptr.back()) + ", expected " + std::to_string(units_below));
    units_below = ptr.size() - 1;
  }
}

CsrKMatrix::CsrKMatrix(CsrMatrix base, std::vector<std::vector<index_t>> group_ptrs,
                       Permutation perm)
    : base_(std::move(base)), group_ptrs_(std::move(group_ptrs)), perm_(std::move(perm)) {
  if (perm_.size() != base_.n_rows())
    throw DimensionError("csr-k: permutation size does not match the row count");
  validate_group_ptrs(group_ptrs_, base_.n_rows());
}

const std::vector<index_t> &CsrKMatrix::ssr_ptr() const {
  if (group_ptrs_.size() < 2)
    throw Error("csr-k: ssr_ptr requested on a CSR-" + std::to_string(k()) + " matrix");
  return group_ptrs_[1];
}

CsrKMatrix pack_csrk(const CsrMatrix &a, const Permutation &perm,
                     std::span<const std::vector<index_t>> groups) {
  if (groups.empty() || groups.size() > 2)
    throw Error("pack_csrk: k-1 must be 1 or 2, got " + std::to_string(groups.size()));
  std::vector<std::vector<index_t>> ptrs;
  std::size_t units_below = a.n_rows();
  for (std::size_t level = 0; level < groups.size(); ++level) {
    std::vector<index_t> ptr{0};
    std::size_t sum = 0;
    for (auto s : groups[level]) {
      if (s == 0)
        throw Error(std::string("pack_csrk: empty group at ") + level_name(level));
      sum += s;
      ptr.push_back(static_cast<index_t>(sum));
    }
    if (sum != units_below)
      throw Error(std::string("pack_csrk: ") + level_name(level) + " sizes sum to " +
                  std::to_string(sum) + ", expected " + std::to_string(units_below));
    units_below = groups[level].size();
    ptrs.push_back(std::move(ptr));
  }
  return CsrKMatrix(symmetric_permute(a, perm), std::move(ptrs), perm);
}

CsrMatrix unpack_csrk(const CsrKMatrix &m) {
  return symmetric_permute(m.base(), m.perm().inverted());
}

} // namespace csrk
