#include "csrk/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <omp.h>

namespace csrk {

namespace {

void check_dims(const CsrMatrix &a, std::size_t nx, std::size_t ny, const char *who) {
  if (nx != a.n_cols() || ny != a.n_rows())
    throw DimensionError(std::string(who) + ": matrix is " + std::to_string(a.n_rows()) + "x" +
                         std::to_string(a.n_cols()) + " but x has " + std::to_string(nx) +
                         " and y has " + std::to_string(ny) + " entries");
}

inline value_t row_dot(const index_t *row_ptr, const index_t *col_idx, const value_t *vals,
                       const value_t *x, index_t row) {
  value_t temp = 0.0;
  for (index_t l = row_ptr[row]; l < row_ptr[row + 1]; ++l)
    temp += vals[l] * x[col_idx[l]];
  return temp;
}

} // namespace

int resolve_threads(Threads t) { return t.count > 0 ? t.count : omp_get_max_threads(); }

void spmv_csr_ref(const CsrMatrix &a, std::span<const value_t> x, std::span<value_t> y) {
  check_dims(a, x.size(), y.size(), "spmv_csr_ref");
  const index_t *rp = a.row_ptr().data();
  const index_t *ci = a.col_idx().data();
  const value_t *v = a.vals().data();
  for (index_t r = 0; r < a.n_rows(); ++r)
    y[r] = row_dot(rp, ci, v, x.data(), r);
}

std::vector<value_t> spmv_csr_ref(const CsrMatrix &a, std::span<const value_t> x) {
  std::vector<value_t> y(a.n_rows());
  spmv_csr_ref(a, x, y);
  return y;
}

void spmv_csr2(const CsrKMatrix &m, std::span<const value_t> x, std::span<value_t> y,
               Threads threads) {
  if (m.k() != 2)
    throw Error("spmv_csr2: matrix is CSR-" + std::to_string(m.k()));
  check_dims(m.base(), x.size(), y.size(), "spmv_csr2");
  const index_t *rp = m.base().row_ptr().data();
  const index_t *ci = m.base().col_idx().data();
  const value_t *v = m.base().vals().data();
  const index_t *sr_ptr = m.sr_ptr().data();
  const auto num_sr = static_cast<std::int64_t>(m.num_super_rows());
  const value_t *xp = x.data();
  value_t *yp = y.data();

#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
  for (std::int64_t i = 0; i < num_sr; ++i)
    for (index_t r = sr_ptr[i]; r < sr_ptr[i + 1]; ++r)
      yp[r] = row_dot(rp, ci, v, xp, r);
}

std::vector<value_t> spmv_csr2(const CsrKMatrix &m, std::span<const value_t> x, Threads threads) {
  std::vector<value_t> y(m.base().n_rows());
  spmv_csr2(m, x, y, threads);
  return y;
}

void spmv_csr3(const CsrKMatrix &m, std::span<const value_t> x, std::span<value_t> y,
               Threads threads) {
  if (m.k() != 3)
    throw Error("spmv_csr3: matrix is CSR-" + std::to_string(m.k()));
  check_dims(m.base(), x.size(), y.size(), "spmv_csr3");
  const index_t *rp = m.base().row_ptr().data();
  const index_t *ci = m.base().col_idx().data();
  const value_t *v = m.base().vals().data();
  const index_t *sr_ptr = m.sr_ptr().data();
  const index_t *ssr_ptr = m.ssr_ptr().data();
  const auto num_ssr = static_cast<std::int64_t>(m.num_super_super_rows());
  const value_t *xp = x.data();
  value_t *yp = y.data();

#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
  for (std::int64_t i = 0; i < num_ssr; ++i)
    for (index_t j = ssr_ptr[i]; j < ssr_ptr[i + 1]; ++j)
      for (index_t r = sr_ptr[j]; r < sr_ptr[j + 1]; ++r)
        yp[r] = row_dot(rp, ci, v, xp, r);
}

std::vector<value_t> spmv_csr3(const CsrKMatrix &m, std::span<const value_t> x, Threads threads) {
  std::vector<value_t> y(m.base().n_rows());
  spmv_csr3(m, x, y, threads);
  return y;
}

std::vector<value_t> abs_row_scale(const CsrMatrix &a, std::span<const value_t> x) {
  if (x.size() != a.n_cols())
    throw DimensionError("abs_row_scale: x length does not match the column count");
  std::vector<value_t> s(a.n_rows(), 0.0);
  for (index_t r = 0; r < a.n_rows(); ++r) {
    auto cols = a.row_cols(r);
    auto vals = a.row_vals(r);
    for (std::size_t j = 0; j < cols.size(); ++j)
      s[r] += std::abs(vals[j]) * std::abs(x[cols[j]]);
  }
  return s;
}

double max_relative_error(std::span<const value_t> y, std::span<const value_t> reference,
                          std::span<const value_t> scale) {
  if (y.size() != reference.size() || (!scale.empty() && scale.size() != y.size()))
    throw DimensionError("max_relative_error: length mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double diff = std::abs(y[i] - reference[i]);
    double denom = std::abs(reference[i]);
    if (!scale.empty())
      denom = std::max(denom, std::abs(scale[i]));
    const double err = denom > 0.0 ? diff / denom : diff;
    if (std::isnan(err))
      return err;
    worst = std::max(worst, err);
  }
  return worst;
}

} // namespace csrk
