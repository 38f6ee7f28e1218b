#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "csrk/stats.hpp"

namespace csrk {

/// A metadata figure as printed in the benchmark table, e.g. "1.59M" or "1.2K".
/// `resolution` is half a unit of the last printed digit, so any true value
/// that rounds to the printed text lies within value ± resolution.
struct ApproxCount {
  double value = 0.0;
  double resolution = 0.0;
  std::string text;

  bool matches(double actual) const;
};

struct ManifestEntry {
  std::string id;   // r1..r35 regular, i1..i29 irregular
  std::string name; // SuiteSparse matrix name
  ApproxCount n;
  ApproxCount nnz;
  ApproxCount max;
  MatrixClass matrix_class = MatrixClass::Regular;
  std::optional<ApproxCount> sy;
  std::optional<ApproxCount> rdensity;
};

/// CSV with header id,name,n,nnz,max,class; optional sy and rdensity columns
/// may appear anywhere. '#' lines are comments. Counts accept K/M suffixes.
std::vector<ManifestEntry> parse_manifest(std::istream &is);
std::vector<ManifestEntry> load_manifest(const std::filesystem::path &path);

ApproxCount parse_approx_count(const std::string &text);

/// Compares computed stats with the manifest row; returns one warning line per
/// mismatching field (empty when everything agrees).
std::vector<std::string> verify_against_manifest(const ManifestEntry &e, const MatrixStats &s);

const ManifestEntry *find_entry(const std::vector<ManifestEntry> &entries, const std::string &key);

} // namespace csrk
