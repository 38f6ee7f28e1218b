// Key/value device profile files:
//
//   name = volta
//   ssrs.a = 8.900          ssrs.b = 1.25
//   srs.a = 10.146          srs.b = 1.50
//   serial_inner_threshold = 8
//   case<N>.max_rdensity = 8 | inf
//   case<N>.dims = 8,12,1
//   case<N>.ssrs = ssrs | round(ssrs * 1.5) | ssrs * 4
//   case<N>.srs  = srs * 2 | floor(new_ssrs / 2) | new_ssrs * 3
//
// '#' starts a comment. Omitted case keys keep the standard case table.

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "csrk/tuning.hpp"

namespace csrk {

namespace {

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_spaces(const std::string &s) {
  std::string out;
  for (char c : s)
    if (c != ' ' && c != '\t')
      out.push_back(c);
  return out;
}

double parse_number(const std::string &text, const std::string &key) {
  if (text == "inf" || text == "+inf" || text == "infinity")
    return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size())
      throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error &) {
    throw Error("profile: key '" + key + "': not a number: '" + text + "'");
  }
}

SizeRule parse_rule(const std::string &raw, const std::string &key) {
  std::string s = strip_spaces(raw);
  SizeRule rule;
  auto unwrap = [&](const std::string &fn) {
    if (s.rfind(fn + "(", 0) == 0 && s.back() == ')') {
      s = s.substr(fn.size() + 1, s.size() - fn.size() - 2);
      return true;
    }
    return false;
  };
  if (unwrap("floor"))
    rule.rounding = Rounding::Floor;
  else
    unwrap("round");

  const auto op = s.find_first_of("*/");
  const std::string src = s.substr(0, op);
  if (src == "ssrs")
    rule.source = SizeSource::Ssrs;
  else if (src == "srs")
    rule.source = SizeSource::Srs;
  else if (src == "new_ssrs")
    rule.source = SizeSource::AdjustedSsrs;
  else
    throw Error("profile: key '" + key + "': unknown size source '" + src + "'");
  if (op != std::string::npos) {
    const double f = parse_number(s.substr(op + 1), key);
    rule.factor = s[op] == '*' ? f : 1.0 / f;
  }
  return rule;
}

std::string format_number(double v) {
  if (std::isinf(v))
    return "inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  // Prefer the shortest text that reads back exactly.
  for (int p = 1; p < 17; ++p) {
    std::ostringstream t;
    t.precision(p);
    t << v;
    if (std::stod(t.str()) == v)
      return t.str();
  }
  return os.str();
}

std::string format_rule(const SizeRule &r) {
  std::string src = r.source == SizeSource::Ssrs  ? "ssrs"
                    : r.source == SizeSource::Srs ? "srs"
                                                  : "new_ssrs";
  std::string body = r.factor == 1.0 ? src : src + " * " + format_number(r.factor);
  if (r.rounding == Rounding::Floor)
    return "floor(" + body + ")";
  return r.factor == std::floor(r.factor) ? body : "round(" + body + ")";
}

} // namespace

DeviceProfile parse_profile(std::istream &is) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("profile: line " + std::to_string(line_no) + ": expected 'key = value'");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  auto take = [&](const std::string &key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end())
      return std::nullopt;
    auto v = it->second;
    kv.erase(it);
    return v;
  };
  auto require = [&](const std::string &key) {
    auto v = take(key);
    if (!v)
      throw Error("profile: missing key '" + key + "'");
    return *v;
  };

  DeviceProfile p = volta_profile();
  p.name = require("name");
  p.ssrs = {parse_number(require("ssrs.a"), "ssrs.a"), parse_number(require("ssrs.b"), "ssrs.b")};
  p.srs = {parse_number(require("srs.a"), "srs.a"), parse_number(require("srs.b"), "srs.b")};
  if (auto v = take("serial_inner_threshold"))
    p.serial_inner_threshold = parse_number(*v, "serial_inner_threshold");
  for (std::size_t i = 0; i < p.cases.size(); ++i) {
    auto &c = p.cases[i];
    const std::string prefix = "case" + std::to_string(i + 1) + ".";
    // Start from "keep" so that an omitted rule means no adjustment.
    c.ssrs = {SizeSource::Ssrs, 1.0, Rounding::NearestHalfUp};
    c.srs = {SizeSource::Srs, 1.0, Rounding::NearestHalfUp};
    if (auto v = take(prefix + "max_rdensity"))
      c.max_rdensity = parse_number(*v, prefix + "max_rdensity");
    if (auto v = take(prefix + "dims"))
      c.dims = parse_block_dims(*v);
    if (auto v = take(prefix + "ssrs"))
      c.ssrs = parse_rule(*v, prefix + "ssrs");
    if (auto v = take(prefix + "srs"))
      c.srs = parse_rule(*v, prefix + "srs");
  }
  if (!kv.empty())
    throw Error("profile: unknown key '" + kv.begin()->first + "'");
  validate_profile(p);
  return p;
}

DeviceProfile load_profile(const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is)
    throw Error("cannot open profile " + path.string());
  return parse_profile(is);
}

void write_profile(std::ostream &os, const DeviceProfile &p) {
  os << "name = " << p.name << '\n';
  os << "ssrs.a = " << format_number(p.ssrs.a) << '\n';
  os << "ssrs.b = " << format_number(p.ssrs.b) << '\n';
  os << "srs.a = " << format_number(p.srs.a) << '\n';
  os << "srs.b = " << format_number(p.srs.b) << '\n';
  os << "serial_inner_threshold = " << format_number(p.serial_inner_threshold) << '\n';
  for (const auto &c : p.cases) {
    const std::string prefix = "case" + std::to_string(c.id) + ".";
    os << '\n';
    os << prefix << "max_rdensity = " << format_number(c.max_rdensity) << '\n';
    os << prefix << "dims = " << c.dims.x << ',' << c.dims.y << ',' << c.dims.z << '\n';
    os << prefix << "ssrs = " << format_rule(c.ssrs) << '\n';
    os << prefix << "srs = " << format_rule(c.srs) << '\n';
  }
}

} // namespace csrk
