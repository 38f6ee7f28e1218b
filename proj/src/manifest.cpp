#include "csrk/manifest.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace csrk {

namespace {

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string &line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ','))
    out.push_back(trim(field));
  if (!line.empty() && line.back() == ',')
    out.emplace_back();
  return out;
}

MatrixClass parse_class(const std::string &s) {
  if (s == "regular")
    return MatrixClass::Regular;
  if (s == "irregular")
    return MatrixClass::Irregular;
  throw Error("class must be 'regular' or 'irregular', got '" + s + "'");
}

} // namespace

bool ApproxCount::matches(double actual) const {
  return std::abs(actual - value) <= resolution * (1.0 + 1e-9);
}

ApproxCount parse_approx_count(const std::string &raw) {
  const std::string text = trim(raw);
  if (text.empty())
    throw Error("empty count");
  double unit = 1.0;
  std::string digits = text;
  switch (text.back()) {
  case 'k':
  case 'K':
    unit = 1e3;
    digits.pop_back();
    break;
  case 'M':
    unit = 1e6;
    digits.pop_back();
    break;
  default:
    break;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(digits, &used);
  } catch (const std::logic_error &) {
    throw Error("not a count: '" + text + "'");
  }
  if (used != digits.size() || v < 0.0)
    throw Error("not a count: '" + text + "'");
  const auto dot = digits.find('.');
  const int decimals = dot == std::string::npos ? 0 : static_cast<int>(digits.size() - dot - 1);
  return {v * unit, 0.5 * std::pow(10.0, -decimals) * unit, text};
}

std::vector<ManifestEntry> parse_manifest(std::istream &is) {
  std::vector<ManifestEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, std::size_t> column;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#')
      continue;
    const auto fields = split_csv(t);
    if (column.empty()) {
      for (std::size_t i = 0; i < fields.size(); ++i)
        column[fields[i]] = i;
      for (const char *req : {"id", "name", "n", "nnz", "max", "class"})
        if (!column.count(req))
          throw Error("manifest line " + std::to_string(line_no) + ": header lacks column '" +
                      req + "'");
      continue;
    }
    if (fields.size() != column.size())
      throw Error("manifest line " + std::to_string(line_no) + ": expected " +
                  std::to_string(column.size()) + " fields, found " +
                  std::to_string(fields.size()));
    try {
      ManifestEntry e;
      e.id = fields[column["id"]];
      e.name = fields[column["name"]];
      if (e.id.empty() || e.name.empty())
        throw Error("empty id or name");
      e.n = parse_approx_count(fields[column["n"]]);
      e.nnz = parse_approx_count(fields[column["nnz"]]);
      e.max = parse_approx_count(fields[column["max"]]);
      e.matrix_class = parse_class(fields[column["class"]]);
      if (auto it = column.find("sy"); it != column.end() && !fields[it->second].empty())
        e.sy = parse_approx_count(fields[it->second]);
      if (auto it = column.find("rdensity"); it != column.end() && !fields[it->second].empty())
        e.rdensity = parse_approx_count(fields[it->second]);
      entries.push_back(std::move(e));
    } catch (const Error &err) {
      throw Error("manifest line " + std::to_string(line_no) + ": " + err.what());
    }
  }
  return entries;
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is)
    throw Error("cannot open manifest " + path.string());
  try {
    return parse_manifest(is);
  } catch (const Error &e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::vector<std::string> verify_against_manifest(const ManifestEntry &e, const MatrixStats &s) {
  std::vector<std::string> warnings;
  auto check = [&](const char *field, const ApproxCount &want, double got) {
    if (!want.matches(got)) {
      std::ostringstream os;
      os << e.id << " (" << e.name << "): " << field << " = " << got << ", manifest says "
         << want.text;
      warnings.push_back(os.str());
    }
  };
  check("n", e.n, s.n);
  check("nnz", e.nnz, static_cast<double>(s.nnz));
  check("max", e.max, s.max_row_nnz);
  if (e.rdensity)
    check("rdensity", *e.rdensity, s.rdensity);
  if (e.sy)
    check("sy", *e.sy, s.pattern_symmetry);
  if (classify(s) != e.matrix_class)
    warnings.push_back(e.id + " (" + e.name + "): classified " +
                       std::string(to_string(classify(s))) + ", manifest says " +
                       std::string(to_string(e.matrix_class)));
  return warnings;
}

const ManifestEntry *find_entry(const std::vector<ManifestEntry> &entries, const std::string &key) {
  for (const auto &e : entries)
    if (e.id == key || e.name == key)
      return &e;
  return nullptr;
}

} // namespace csrk
