#pragma once

#include <span>
#include <vector>

#include "csrk/csr_matrix.hpp"
#include "csrk/csrk_matrix.hpp"

namespace csrk {

/// Worker count for the CPU kernels; 0 means the runtime default.
struct Threads {
  int count = 0;
};

/// Number of workers the CPU kernels use for `t`.
int resolve_threads(Threads t);

/// Sequential CSR SpMV with left-to-right row sums. The correctness oracle.
std::vector<value_t> spmv_csr_ref(const CsrMatrix &a, std::span<const value_t> x);
void spmv_csr_ref(const CsrMatrix &a, std::span<const value_t> x, std::span<value_t> y);

/// CSR-2: super-rows statically partitioned over workers. `x` and `y` live in
/// the permuted index space of `m.base()`.
void spmv_csr2(const CsrKMatrix &m, std::span<const value_t> x, std::span<value_t> y,
               Threads threads = {});
std::vector<value_t> spmv_csr2(const CsrKMatrix &m, std::span<const value_t> x,
                               Threads threads = {});

/// CSR-3: super-super-rows statically partitioned over workers; super-rows
/// and rows are walked sequentially inside a worker.
void spmv_csr3(const CsrKMatrix &m, std::span<const value_t> x, std::span<value_t> y,
               Threads threads = {});
std::vector<value_t> spmv_csr3(const CsrKMatrix &m, std::span<const value_t> x,
                               Threads threads = {});

/// Componentwise error of `y` against `reference`, scaled by
/// max(|reference_i|, scale_i). Entries where both scales are zero contribute
/// their absolute difference.
double max_relative_error(std::span<const value_t> y, std::span<const value_t> reference,
                          std::span<const value_t> scale);

/// scale_i = Σ_j |a_ij|·|x_j|, the natural magnitude for summation-order error.
std::vector<value_t> abs_row_scale(const CsrMatrix &a, std::span<const value_t> x);

} // namespace csrk
