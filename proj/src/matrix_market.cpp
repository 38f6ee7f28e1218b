#include "csrk/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace csrk {

ParseError::ParseError(std::size_t line, const std::string &detail, const std::string &source)
    : Error((source.empty() ? "" : source + ": ") + "line " + std::to_string(line) + ": " + detail),
      line_(line), detail_(detail) {}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool blank(const std::string &line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

} // namespace

MatrixMarketHeader parse_matrix_market_banner(const std::string &line, std::size_t line_no) {
  std::istringstream ss(line);
  std::string banner, object, format, field, symmetry;
  ss >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket")
    throw ParseError(line_no, "missing %%MatrixMarket banner");
  if (lower(object) != "matrix")
    throw ParseError(line_no, "unsupported object '" + object + "'");
  if (lower(format) != "coordinate")
    throw ParseError(line_no, "unsupported format '" + format + "' (only coordinate)");

  MatrixMarketHeader h;
  field = lower(field);
  if (field == "real")
    h.field = MmField::Real;
  else if (field == "integer")
    h.field = MmField::Integer;
  else if (field == "pattern")
    h.field = MmField::Pattern;
  else
    throw ParseError(line_no, "unsupported field '" + field + "'");

  symmetry = lower(symmetry);
  if (symmetry == "general")
    h.symmetry = MmSymmetry::General;
  else if (symmetry == "symmetric")
    h.symmetry = MmSymmetry::Symmetric;
  else if (symmetry == "skew-symmetric")
    h.symmetry = MmSymmetry::SkewSymmetric;
  else
    throw ParseError(line_no, "unsupported symmetry '" + symmetry + "'");
  return h;
}

CsrMatrix read_matrix_market(std::istream &is) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(is, line))
    throw ParseError(1, "empty input");
  ++line_no;
  const auto header = parse_matrix_market_banner(line, line_no);

  // Skip comments and blank lines up to the size line.
  bool have_size = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '%')
      continue;
    if (blank(line))
      continue;
    have_size = true;
    break;
  }
  if (!have_size)
    throw ParseError(line_no, "missing size line");

  unsigned long long rows = 0, cols = 0, declared = 0;
  {
    std::istringstream ss(line);
    std::string extra;
    if (!(ss >> rows >> cols >> declared) || (ss >> extra))
      throw ParseError(line_no, "malformed size line '" + line + "'");
  }
  if (rows > std::numeric_limits<index_t>::max() || cols > std::numeric_limits<index_t>::max())
    throw ParseError(line_no, "dimensions exceed 32-bit indices");
  if (header.symmetry != MmSymmetry::General && rows != cols)
    throw ParseError(line_no, "symmetric storage requires a square matrix");
  const std::size_t mirror_factor = header.symmetry == MmSymmetry::General ? 1 : 2;
  if (declared * mirror_factor >= kMaxNnz)
    throw ParseError(line_no, "too many entries for 32-bit indices");

  std::vector<Triplet> triplets;
  triplets.reserve(declared * mirror_factor);
  std::size_t seen = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (blank(line) || line[0] == '%')
      continue;
    if (seen == declared)
      throw ParseError(line_no, "more entries than the " + std::to_string(declared) + " declared");
    std::istringstream ss(line);
    long long r = 0, c = 0;
    double v = 1.0;
    if (!(ss >> r >> c))
      throw ParseError(line_no, "malformed entry '" + line + "'");
    if (header.field != MmField::Pattern && !(ss >> v))
      throw ParseError(line_no, "missing value in entry '" + line + "'");
    if (r < 1 || c < 1 || static_cast<unsigned long long>(r) > rows ||
        static_cast<unsigned long long>(c) > cols)
      throw ParseError(line_no, "index (" + std::to_string(r) + ", " + std::to_string(c) +
                                    ") out of range for " + std::to_string(rows) + "x" +
                                    std::to_string(cols));
    const auto i = static_cast<index_t>(r - 1), j = static_cast<index_t>(c - 1);
    triplets.push_back({i, j, v});
    if (i != j && header.symmetry == MmSymmetry::Symmetric)
      triplets.push_back({j, i, v});
    else if (i != j && header.symmetry == MmSymmetry::SkewSymmetric)
      triplets.push_back({j, i, -v});
    ++seen;
  }
  if (seen != declared)
    throw ParseError(line_no, "expected " + std::to_string(declared) + " entries, found " +
                                  std::to_string(seen));
  return build_csr(static_cast<index_t>(rows), static_cast<index_t>(cols), triplets);
}

CsrMatrix read_matrix_market(const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is)
    throw Error("cannot open " + path.string());
  try {
    return read_matrix_market(is);
  } catch (const ParseError &e) {
    throw ParseError(e.line(), e.detail(), path.string());
  }
}

void write_matrix_market(std::ostream &os, const CsrMatrix &a) {
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << a.n_rows() << ' ' << a.n_cols() << ' ' << a.nnz() << '\n';
  char buf[64];
  for (index_t r = 0; r < a.n_rows(); ++r) {
    auto cols = a.row_cols(r);
    auto vals = a.row_vals(r);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      auto res = std::to_chars(buf, buf + sizeof buf, vals[j]);
      os << r + 1 << ' ' << cols[j] + 1 << ' ';
      os.write(buf, res.ptr - buf);
      os << '\n';
    }
  }
  if (!os)
    throw Error("write_matrix_market: stream write failed");
}

void write_matrix_market(const std::filesystem::path &path, const CsrMatrix &a) {
  std::ofstream os(path);
  if (!os)
    throw Error("cannot open " + path.string() + " for writing");
  write_matrix_market(os, a);
}

} // namespace csrk
