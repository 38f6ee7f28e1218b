#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "csrk/csr_matrix.hpp"
#include "csrk/gpu_emulation.hpp"
#include "csrk/stats.hpp"

namespace csrk {

/// ⌊x⌉: round to nearest, halves toward +∞.
inline long long round_half_up(double x) { return static_cast<long long>(std::floor(x + 0.5)); }

/// size = ⌊a − b·ln(rdensity)⌉
struct LogModel {
  double a = 0.0;
  double b = 0.0;

  double evaluate(double rdensity) const;
  /// Rounded, clamped to at least 1.
  index_t predict(double rdensity) const;
  /// Hand override of the log coefficient, keeping the intercept.
  LogModel with_slope(double new_b) const { return {a, new_b}; }
};

enum class SizeSource { Ssrs, Srs, AdjustedSsrs };
enum class Rounding { NearestHalfUp, Floor };

/// new value = round(source · factor); `keep` is {own source, 1}.
struct SizeRule {
  SizeSource source = SizeSource::Ssrs;
  double factor = 1.0;
  Rounding rounding = Rounding::NearestHalfUp;

  friend bool operator==(const SizeRule &, const SizeRule &) = default;
};

/// One rdensity interval (previous bound, max_rdensity] of the case table.
struct CaseRule {
  int id = 1;
  double max_rdensity = std::numeric_limits<double>::infinity();
  BlockDims dims;
  SizeRule ssrs{SizeSource::Ssrs};
  SizeRule srs{SizeSource::Srs};

  friend bool operator==(const CaseRule &, const CaseRule &) = default;
};

struct DeviceProfile {
  std::string name;
  LogModel ssrs;
  LogModel srs;
  std::array<CaseRule, 4> cases;
  double serial_inner_threshold = 8.0;

  friend bool operator==(const DeviceProfile &a, const DeviceProfile &b) {
    return a.name == b.name && a.ssrs.a == b.ssrs.a && a.ssrs.b == b.ssrs.b &&
           a.srs.a == b.srs.a && a.srs.b == b.srs.b && a.cases == b.cases &&
           a.serial_inner_threshold == b.serial_inner_threshold;
  }
};

/// Case intervals must be increasing and end at +∞; throws otherwise.
void validate_profile(const DeviceProfile &p);

DeviceProfile volta_profile();
DeviceProfile ampere_profile();
/// "volta" or "ampere".
DeviceProfile builtin_profile(std::string_view name);

/// Key/value profile files (see data/profiles/*.conf).
DeviceProfile parse_profile(std::istream &is);
DeviceProfile load_profile(const std::filesystem::path &path);
void write_profile(std::ostream &os, const DeviceProfile &p);

struct CaseSelection {
  int id;
  BlockDims dims;
};

/// Case 1: ≤8 → 8×12; 2: (8,16] → 4×8×12; 3: (16,32] → 8×8×8; 4: >32 → 16×8×4.
CaseSelection select_case(double rdensity);
CaseSelection select_case(const DeviceProfile &profile, double rdensity);

struct SizePair {
  index_t ssrs;
  index_t srs;
  friend bool operator==(const SizePair &, const SizePair &) = default;
  friend auto operator<=>(const SizePair &, const SizePair &) = default;
};

/// Unadjusted (SSRS, SRS) from the profile's log models.
SizePair base_sizes(const DeviceProfile &profile, double rdensity);
/// Applies the case's SSRS rule, then its SRS rule (which may read the adjusted SSRS).
SizePair adjust_sizes(const DeviceProfile &profile, int case_id, SizePair base);

enum class KernelVariant { CpuCsr2, CpuCsr3, Gpu3, Gpu35 };
std::string_view to_string(KernelVariant v);

struct TuningParams {
  int k = 2;
  index_t ssrs = 0; // unused (0) when k = 2
  index_t srs = 0;
  BlockDims block_dims;
  KernelVariant variant = KernelVariant::CpuCsr2;
  int case_id = 0; // 0 when no GPU case applies

  /// band_k level targets: {srs} or {srs, ssrs}.
  std::vector<index_t> level_targets() const;
  friend bool operator==(const TuningParams &, const TuningParams &) = default;
};

TuningParams tune_gpu(const MatrixStats &stats, const DeviceProfile &profile);

inline constexpr index_t kCpuFallbackSrs = 96;
inline constexpr index_t kCpuDefaultSsrs = 8;

/// Constant-time CPU choice: CSR-2 with SRS 96 (CSR-3 adds SSRS 8).
TuningParams tune_cpu_constant(int k = 2);

/// {2^i, 1.5·2^i | i = 2..5}², 64 pairs in ascending order.
std::vector<SizePair> gpu_candidate_grid();
/// {2^i, 1.5·2^i | i = 3..11}, 18 values from 8 to 3072, ascending.
std::vector<index_t> cpu_candidate_srs();
index_t cpu_fallback_srs();

template <class Param> struct GridSearchResult {
  Param best;
  double best_mean_seconds;
  std::vector<std::pair<Param, double>> table; // candidate -> mean seconds
};

/// Times every candidate `reps` times with `runner(a, candidate)` (which
/// returns seconds for one SpMV) and returns the smallest mean; ties go to the
/// smaller candidate. Runs sequentially.
template <class Param, class Runner>
GridSearchResult<Param> grid_search(const CsrMatrix &a, std::span<const Param> candidates,
                                    Runner &&runner, int reps) {
  if (candidates.empty())
    throw Error("grid_search: empty candidate set");
  if (reps < 1)
    throw Error("grid_search: reps must be at least 1");
  GridSearchResult<Param> res{candidates.front(), std::numeric_limits<double>::infinity(), {}};
  for (const auto &c : candidates) {
    double total = 0.0;
    for (int r = 0; r < reps; ++r)
      total += runner(a, c);
    const double mean = total / reps;
    res.table.emplace_back(c, mean);
    if (mean < res.best_mean_seconds || (mean == res.best_mean_seconds && c < res.best)) {
      res.best = c;
      res.best_mean_seconds = mean;
    }
  }
  return res;
}

struct SizeSample {
  double rdensity;
  double optimal_size;
};

/// Ordinary least squares of size against ln(rdensity). Needs at least two
/// distinct positive rdensity values.
LogModel fit_log_model(std::span<const SizeSample> samples);

} // namespace csrk
