#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "csrk/csr_matrix.hpp"
#include "csrk/stats.hpp"
#include "csrk/tuning.hpp"

namespace csrk {

enum class Target { Ref, Cpu2, Cpu3, Gpu3Emu, Gpu35Emu };

/// "ref", "cpu2", "cpu3", "gpu3-emu", "gpu35-emu".
std::string_view to_string(Target t);
Target parse_target(std::string_view name);

enum class TuningSource { Auto, Explicit, GridSearch };
std::string_view to_string(TuningSource s);
TuningSource parse_tuning_source(std::string_view name);

/// Monotonic clock in seconds.
using Clock = std::function<double()>;
double steady_seconds();

struct TimingProtocol {
  int warmups = 5;
  int reps = 20;
};

struct TimingResult {
  double mean_seconds = 0.0;
  std::vector<double> samples;
};

/// Runs `kernel` `warmups` times untimed, then `reps` times, each bracketed by
/// two clock reads. Reports the arithmetic mean of the timed runs.
TimingResult time_kernel(const std::function<void()> &kernel, const TimingProtocol &protocol,
                         const Clock &clock = steady_seconds);

struct RunOptions {
  Target target = Target::Ref;
  TimingProtocol protocol;
  int threads = 0; // 0: OMP_NUM_THREADS or hardware parallelism
  double tolerance = 1e-10;
  TuningSource tuning = TuningSource::Auto;
  /// Explicit overrides; unset fields fall back to the automatic choice.
  std::optional<index_t> ssrs;
  std::optional<index_t> srs;
  std::optional<BlockDims> block_dims;
  DeviceProfile profile = volta_profile();
  /// Repetitions per candidate during grid search.
  int grid_reps = 3;
  std::string matrix_id;
};

/// Observer for kernel invocations, called with `true` for timed runs.
using KernelObserver = std::function<void(bool timed)>;

struct GridRow {
  SizePair candidate;
  double mean_seconds;
};

struct BenchRecord {
  std::string matrix_id;
  Target target = Target::Ref;
  /// Parameters used; empty for the reference kernel, which needs none.
  std::optional<TuningParams> params;
  TuningSource tuning = TuningSource::Auto;
  index_t n = 0;
  std::size_t nnz = 0;
  int threads = 1;
  int warmups = 0;
  int reps = 0;
  double mean_seconds = 0.0;
  double gflops = 0.0;
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  /// Band-k and packing time, kept apart from kernel time.
  double reorder_seconds = 0.0;
  double pack_seconds = 0.0;
  std::vector<GridRow> grid_table;
  double speedup = 1.0; // filled by compare()
};

/// 2·nnz / seconds / 1e9; 0 when seconds is not positive.
double gflops(std::size_t nnz, double seconds);

/// Parameters the pipeline would use for `opts` on a matrix with `stats`,
/// before any grid search. Throws on invalid combinations (e.g. an SSRS for a
/// k = 2 target).
TuningParams resolve_params(const MatrixStats &stats, const RunOptions &opts);

/// stats -> tune -> band_k -> pack -> timed kernel, verified once against the
/// sequential reference.
BenchRecord run_benchmark(const CsrMatrix &a, const RunOptions &opts,
                          const Clock &clock = steady_seconds,
                          const KernelObserver &observer = {});

/// Runs every target with the shared options and fills `speedup` relative to
/// the reference mean (the first record when `ref` is absent).
std::vector<BenchRecord> compare(const CsrMatrix &a, const std::vector<Target> &targets,
                                 const RunOptions &opts, const Clock &clock = steady_seconds,
                                 const KernelObserver &observer = {});

inline constexpr std::string_view kBenchSchema = "csrk.bench/1";
inline constexpr std::string_view kTuneSchema = "csrk.tune/1";

void write_records_json(std::ostream &os, const std::vector<BenchRecord> &records);
void write_records_csv(std::ostream &os, const std::vector<BenchRecord> &records);

std::string tuning_json(const TuningParams &p, const MatrixStats &stats, std::string_view profile,
                        const std::vector<GridRow> &grid_table = {});

} // namespace csrk
