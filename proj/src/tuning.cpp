#include "csrk/tuning.hpp"

#include <cmath>
#include <string>

namespace csrk {

double LogModel::evaluate(double rdensity) const { return a - b * std::log(rdensity); }

index_t LogModel::predict(double rdensity) const {
  const long long v = round_half_up(evaluate(rdensity));
  return v < 1 ? 1 : static_cast<index_t>(v);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr SizeRule keep_ssrs{SizeSource::Ssrs, 1.0, Rounding::NearestHalfUp};
constexpr SizeRule keep_srs{SizeSource::Srs, 1.0, Rounding::NearestHalfUp};

std::array<CaseRule, 4> standard_cases() {
  return {{
      {1, 8.0, {8, 12, 1}, keep_ssrs, keep_srs},
      {2, 16.0, {4, 8, 12}, keep_ssrs, keep_srs},
      {3, 32.0, {8, 8, 8}, keep_ssrs, keep_srs},
      {4, kInf, {16, 8, 4}, keep_ssrs, keep_srs},
  }};
}

index_t apply_rule(const SizeRule &rule, SizePair base, index_t adjusted_ssrs) {
  double source = 0.0;
  switch (rule.source) {
  case SizeSource::Ssrs:
    source = base.ssrs;
    break;
  case SizeSource::Srs:
    source = base.srs;
    break;
  case SizeSource::AdjustedSsrs:
    source = adjusted_ssrs;
    break;
  }
  const double v = source * rule.factor;
  const long long r = rule.rounding == Rounding::Floor ? static_cast<long long>(std::floor(v))
                                                       : round_half_up(v);
  return r < 1 ? 1 : static_cast<index_t>(r);
}

} // namespace

void validate_profile(const DeviceProfile &p) {
  double prev = 0.0;
  for (std::size_t i = 0; i < p.cases.size(); ++i) {
    const auto &c = p.cases[i];
    if (c.id != static_cast<int>(i) + 1)
      throw Error("profile " + p.name + ": case ids must be 1..4 in order");
    if (!(c.max_rdensity > prev))
      throw Error("profile " + p.name + ": case " + std::to_string(c.id) +
                  " upper bound must exceed the previous one");
    if (c.ssrs.source == SizeSource::AdjustedSsrs)
      throw Error("profile " + p.name + ": the SSRS rule cannot read the adjusted SSRS");
    if (!(c.ssrs.factor > 0.0) || !(c.srs.factor > 0.0))
      throw Error("profile " + p.name + ": rule factors must be positive");
    validate_block_dims(c.dims);
    prev = c.max_rdensity;
  }
  if (prev != kInf)
    throw Error("profile " + p.name + ": the last case must extend to infinity");
}

DeviceProfile volta_profile() {
  DeviceProfile p{"volta", {8.900, 1.25}, {10.146, 1.50}, standard_cases(), 8.0};
  p.cases[1].ssrs = {SizeSource::Ssrs, 1.5, Rounding::NearestHalfUp};
  p.cases[1].srs = {SizeSource::Srs, 2.0, Rounding::NearestHalfUp};
  p.cases[2].ssrs = {SizeSource::Ssrs, 4.0, Rounding::NearestHalfUp};
  p.cases[2].srs = {SizeSource::AdjustedSsrs, 0.5, Rounding::Floor};
  p.cases[3].ssrs = {SizeSource::Ssrs, 5.0, Rounding::NearestHalfUp};
  p.cases[3].srs = {SizeSource::AdjustedSsrs, 0.5, Rounding::Floor};
  return p;
}

DeviceProfile ampere_profile() {
  DeviceProfile p{"ampere", {9.175, 1.32}, {20.500, 3.50}, standard_cases(), 8.0};
  p.cases[1].srs = {SizeSource::Srs, 4.0, Rounding::NearestHalfUp};
  p.cases[2].ssrs = {SizeSource::Ssrs, 2.5, Rounding::NearestHalfUp};
  p.cases[2].srs = {SizeSource::AdjustedSsrs, 3.0, Rounding::NearestHalfUp};
  p.cases[3].ssrs = {SizeSource::Ssrs, 2.0, Rounding::NearestHalfUp};
  p.cases[3].srs = {SizeSource::AdjustedSsrs, 2.0, Rounding::NearestHalfUp};
  return p;
}

DeviceProfile builtin_profile(std::string_view name) {
  if (name == "volta")
    return volta_profile();
  if (name == "ampere")
    return ampere_profile();
  throw Error("unknown device profile '" + std::string(name) + "' (expected volta or ampere)");
}

CaseSelection select_case(const DeviceProfile &profile, double rdensity) {
  if (!(rdensity > 0.0))
    throw Error("select_case: rdensity must be positive, got " + std::to_string(rdensity));
  for (const auto &c : profile.cases)
    if (rdensity <= c.max_rdensity)
      return {c.id, c.dims};
  throw Error("select_case: no case covers rdensity " + std::to_string(rdensity));
}

CaseSelection select_case(double rdensity) {
  static const DeviceProfile standard{"standard", {}, {}, standard_cases(), 8.0};
  return select_case(standard, rdensity);
}

SizePair base_sizes(const DeviceProfile &profile, double rdensity) {
  if (!(rdensity > 0.0))
    throw Error("base_sizes: rdensity must be positive, got " + std::to_string(rdensity));
  return {profile.ssrs.predict(rdensity), profile.srs.predict(rdensity)};
}

SizePair adjust_sizes(const DeviceProfile &profile, int case_id, SizePair base) {
  if (case_id < 1 || case_id > static_cast<int>(profile.cases.size()))
    throw Error("adjust_sizes: case id " + std::to_string(case_id) + " out of range");
  const auto &c = profile.cases[static_cast<std::size_t>(case_id - 1)];
  const index_t ssrs = apply_rule(c.ssrs, base, 0);
  const index_t srs = apply_rule(c.srs, base, ssrs);
  return {ssrs, srs};
}

std::string_view to_string(KernelVariant v) {
  switch (v) {
  case KernelVariant::CpuCsr2:
    return "CPU_CSR2";
  case KernelVariant::CpuCsr3:
    return "CPU_CSR3";
  case KernelVariant::Gpu3:
    return "GPU3";
  case KernelVariant::Gpu35:
    return "GPU35";
  }
  return "?";
}

std::vector<index_t> TuningParams::level_targets() const {
  if (k == 3)
    return {srs, ssrs};
  return {srs};
}

TuningParams tune_gpu(const MatrixStats &stats, const DeviceProfile &profile) {
  // A matrix without nonzeros has no meaningful density; evaluate the model at 1.
  const double rd = stats.rdensity > 0.0 ? stats.rdensity : 1.0;
  const auto sel = select_case(profile, rd);
  const auto sizes = adjust_sizes(profile, sel.id, base_sizes(profile, rd));
  TuningParams t;
  t.k = 3;
  t.ssrs = sizes.ssrs;
  t.srs = sizes.srs;
  t.block_dims = sel.dims;
  t.variant = rd <= profile.serial_inner_threshold ? KernelVariant::Gpu3 : KernelVariant::Gpu35;
  t.case_id = sel.id;
  return t;
}

TuningParams tune_cpu_constant(int k) {
  if (k != 2 && k != 3)
    throw Error("tune_cpu_constant: k must be 2 or 3");
  TuningParams t;
  t.k = k;
  t.srs = kCpuFallbackSrs;
  t.ssrs = k == 3 ? kCpuDefaultSsrs : 0;
  t.variant = k == 3 ? KernelVariant::CpuCsr3 : KernelVariant::CpuCsr2;
  return t;
}

namespace {

std::vector<index_t> power_set_union(int lo, int hi) {
  std::vector<index_t> v;
  for (int i = lo; i <= hi; ++i) {
    v.push_back(index_t{1} << i);
    v.push_back(3 * (index_t{1} << (i - 1)));
  }
  return v; // already ascending: 2^i < 1.5·2^i < 2^(i+1)
}

} // namespace

std::vector<SizePair> gpu_candidate_grid() {
  const auto base = power_set_union(2, 5);
  std::vector<SizePair> grid;
  for (auto ssrs : base)
    for (auto srs : base)
      grid.push_back({ssrs, srs});
  return grid;
}

std::vector<index_t> cpu_candidate_srs() { return power_set_union(3, 11); }

index_t cpu_fallback_srs() { return kCpuFallbackSrs; }

LogModel fit_log_model(std::span<const SizeSample> samples) {
  if (samples.size() < 2)
    throw Error("fit_log_model: need at least two samples");
  double mx = 0.0, my = 0.0;
  for (const auto &s : samples) {
    if (!(s.rdensity > 0.0))
      throw Error("fit_log_model: rdensity must be positive");
    mx += std::log(s.rdensity);
    my += s.optimal_size;
  }
  mx /= samples.size();
  my /= samples.size();
  double sxx = 0.0, sxy = 0.0;
  for (const auto &s : samples) {
    const double dx = std::log(s.rdensity) - mx;
    sxx += dx * dx;
    sxy += dx * (s.optimal_size - my);
  }
  if (sxx == 0.0)
    throw Error("fit_log_model: all samples share one rdensity");
  const double slope = sxy / sxx;
  return {my - slope * mx, -slope};
}

} // namespace csrk
