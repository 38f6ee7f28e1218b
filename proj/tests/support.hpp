#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "csrk/csr_matrix.hpp"
#include "csrk/permutation.hpp"

namespace csrk::testing {

using Dense = std::vector<std::vector<double>>;

inline Dense to_dense(const CsrMatrix &a) {
  Dense d(a.n_rows(), std::vector<double>(a.n_cols(), 0.0));
  for (index_t r = 0; r < a.n_rows(); ++r) {
    auto cols = a.row_cols(r);
    auto vals = a.row_vals(r);
    for (std::size_t j = 0; j < cols.size(); ++j)
      d[r][cols[j]] += vals[j];
  }
  return d;
}

// Dense product in long double, the oracle for every kernel.
inline std::vector<double> dense_matvec(const Dense &d, const std::vector<double> &x) {
  std::vector<double> y(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    long double acc = 0.0L;
    for (std::size_t j = 0; j < x.size(); ++j)
      acc += static_cast<long double>(d[i][j]) * x[j];
    y[i] = static_cast<double>(acc);
  }
  return y;
}

inline std::vector<double> dense_abs_matvec(const Dense &d, const std::vector<double> &x) {
  std::vector<double> y(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    long double acc = 0.0L;
    for (std::size_t j = 0; j < x.size(); ++j)
      acc += std::fabs(static_cast<long double>(d[i][j]) * x[j]);
    y[i] = static_cast<double>(acc);
  }
  return y;
}

// Componentwise error scaled by max(|oracle|, Σ|a||x|), computed independently of the library.
inline double oracle_error(const std::vector<double> &y, const std::vector<double> &oracle,
                           const std::vector<double> &abs_scale) {
  double worst = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double denom = std::max(std::fabs(oracle[i]), abs_scale[i]);
    const double diff = std::fabs(y[i] - oracle[i]);
    worst = std::max(worst, denom > 0.0 ? diff / denom : diff);
  }
  return worst;
}

inline std::vector<double> random_vector(std::size_t n, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> x(n);
  for (auto &v : x)
    v = d(rng);
  return x;
}

enum class Shape { General, Symmetric, Disconnected, EmptyRows, DenseRow };

// Random square matrix of the given shape with density at most `density`.
inline CsrMatrix random_matrix(index_t n, double density, Shape shape, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Triplet> t;
  const index_t half = n / 2;
  for (index_t i = 0; i < n; ++i) {
    if (shape == Shape::EmptyRows && i % 3 == 1)
      continue;
    for (index_t j = 0; j < n; ++j) {
      if (shape == Shape::Disconnected && n > 1 && (i < half) != (j < half))
        continue;
      if (shape == Shape::Symmetric && j < i)
        continue;
      if (coin(rng) >= density)
        continue;
      const double v = val(rng);
      t.push_back({i, j, v});
      if (shape == Shape::Symmetric && j != i)
        t.push_back({j, i, v});
    }
  }
  if (shape == Shape::DenseRow) {
    // One full row on top of a sparse background.
    const index_t r = static_cast<index_t>(rng() % n);
    for (index_t j = 0; j < n; ++j)
      t.push_back({r, j, val(rng)});
  }
  return build_csr(n, n, t);
}

inline CsrMatrix grid_laplacian(index_t m) {
  const index_t n = m * m;
  std::vector<Triplet> t;
  for (index_t i = 0; i < m; ++i)
    for (index_t j = 0; j < m; ++j) {
      const index_t r = i * m + j;
      t.push_back({r, r, 4.0});
      if (i > 0)
        t.push_back({r, r - m, -1.0});
      if (i + 1 < m)
        t.push_back({r, r + m, -1.0});
      if (j > 0)
        t.push_back({r, r - 1, -1.0});
      if (j + 1 < m)
        t.push_back({r, r + 1, -1.0});
    }
  return build_csr(n, n, t);
}

inline CsrMatrix tridiagonal(index_t n) {
  std::vector<Triplet> t;
  for (index_t i = 0; i < n; ++i) {
    t.push_back({i, i, 2.0});
    if (i > 0)
      t.push_back({i, i - 1, -1.0});
    if (i + 1 < n)
      t.push_back({i, i + 1, -1.0});
  }
  return build_csr(n, n, t);
}

inline CsrMatrix identity_matrix(index_t n) {
  std::vector<Triplet> t;
  for (index_t i = 0; i < n; ++i)
    t.push_back({i, i, 1.0});
  return build_csr(n, n, t);
}

inline Permutation random_permutation(index_t n, std::mt19937_64 &rng) {
  std::vector<index_t> p(n);
  for (index_t i = 0; i < n; ++i)
    p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return Permutation::from_forward(std::move(p));
}

// Bandwidth computed directly from the triplets, independent of the CSR layout.
inline index_t bandwidth_of(const CsrMatrix &a) {
  index_t bw = 0;
  for (index_t r = 0; r < a.n_rows(); ++r)
    for (auto c : a.row_cols(r))
      bw = std::max(bw, r > c ? r - c : c - r);
  return bw;
}

} // namespace csrk::testing
