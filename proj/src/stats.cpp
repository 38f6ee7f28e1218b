#include "csrk/stats.hpp"

#include <algorithm>

namespace csrk {

double pattern_symmetry(const CsrMatrix &a) {
  std::size_t off_diagonal = 0, mirrored = 0;
  for (index_t i = 0; i < a.n_rows(); ++i)
    for (auto j : a.row_cols(i)) {
      if (i == j)
        continue;
      ++off_diagonal;
      if (j < a.n_rows() && i < a.n_cols() && a.find(j, i) != nullptr)
        ++mirrored;
    }
  return off_diagonal == 0 ? 1.0 : static_cast<double>(mirrored) / static_cast<double>(off_diagonal);
}

MatrixStats compute_stats(const CsrMatrix &a) {
  if (a.n_rows() == 0)
    throw Error("compute_stats: matrix has no rows");
  MatrixStats s;
  s.n = a.n_rows();
  s.nnz = a.nnz();
  s.rdensity = static_cast<double>(s.nnz) / s.n;
  double sq = 0.0;
  for (index_t r = 0; r < s.n; ++r) {
    const index_t c = a.row_nnz(r);
    s.max_row_nnz = std::max(s.max_row_nnz, c);
    const double d = c - s.rdensity;
    sq += d * d;
  }
  s.variance = sq / s.n;
  s.pattern_symmetry = pattern_symmetry(a);
  return s;
}

MatrixClass classify(double variance) {
  return variance <= kRegularVarianceThreshold ? MatrixClass::Regular : MatrixClass::Irregular;
}

std::string_view to_string(MatrixClass c) {
  return c == MatrixClass::Regular ? "regular" : "irregular";
}

} // namespace csrk
