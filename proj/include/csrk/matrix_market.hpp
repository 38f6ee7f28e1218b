#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "csrk/csr_matrix.hpp"

namespace csrk {

enum class MmField { Real, Integer, Pattern };
enum class MmSymmetry { General, Symmetric, SkewSymmetric };

/// `%%MatrixMarket matrix coordinate <field> <symmetry>`; complex and
/// hermitian files and the dense array format are rejected.
struct MatrixMarketHeader {
  MmField field = MmField::Real;
  MmSymmetry symmetry = MmSymmetry::General;
};

/// Error raised while parsing, tagged with the 1-based line number.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string &detail, const std::string &source = {});
  std::size_t line() const { return line_; }
  const std::string &detail() const { return detail_; }

private:
  std::size_t line_;
  std::string detail_;
};

MatrixMarketHeader parse_matrix_market_banner(const std::string &line, std::size_t line_no = 1);

/// Reads a coordinate Matrix Market stream. Symmetric storage is mirrored
/// (skew-symmetric mirrors negated), pattern entries become 1.0 and duplicate
/// entries are summed.
CsrMatrix read_matrix_market(std::istream &is);
CsrMatrix read_matrix_market(const std::filesystem::path &path);

/// Writes `coordinate real general`, 1-based, row-major, shortest round-trip decimals.
void write_matrix_market(std::ostream &os, const CsrMatrix &a);
void write_matrix_market(const std::filesystem::path &path, const CsrMatrix &a);

} // namespace csrk
