#pragma once

#include <string_view>

#include "csrk/csr_matrix.hpp"

namespace csrk {

struct MatrixStats {
  index_t n = 0;
  std::size_t nnz = 0;
  double rdensity = 0.0;          // nnz / n
  double variance = 0.0;          // population variance of nonzeros per row
  index_t max_row_nnz = 0;
  double pattern_symmetry = 1.0;  // SY in [0, 1]
};

/// Throws on a matrix with no rows.
MatrixStats compute_stats(const CsrMatrix &a);

/// Fraction of off-diagonal structural nonzeros (i, j) for which (j, i) is also
/// stored. A matrix without off-diagonal entries counts as fully symmetric.
double pattern_symmetry(const CsrMatrix &a);

enum class MatrixClass { Regular, Irregular };

inline constexpr double kRegularVarianceThreshold = 10.0;

/// Regular iff the per-row nonzero variance is at most 10.
MatrixClass classify(double variance);
inline MatrixClass classify(const MatrixStats &s) { return classify(s.variance); }

std::string_view to_string(MatrixClass c);

} // namespace csrk
