#include "csrk/bench.hpp"

#include <charconv>
#include <chrono>
#include <ostream>
#include <random>

#include <json.hpp>

#include "csrk/band_k.hpp"
#include "csrk/gpu_emulation.hpp"
#include "csrk/kernels.hpp"

namespace csrk {

std::string_view to_string(Target t) {
  switch (t) {
  case Target::Ref:
    return "ref";
  case Target::Cpu2:
    return "cpu2";
  case Target::Cpu3:
    return "cpu3";
  case Target::Gpu3Emu:
    return "gpu3-emu";
  case Target::Gpu35Emu:
    return "gpu35-emu";
  }
  return "?";
}

Target parse_target(std::string_view name) {
  for (auto t : {Target::Ref, Target::Cpu2, Target::Cpu3, Target::Gpu3Emu, Target::Gpu35Emu})
    if (to_string(t) == name)
      return t;
  throw Error("unknown target '" + std::string(name) +
              "' (expected ref, cpu2, cpu3, gpu3-emu or gpu35-emu)");
}

std::string_view to_string(TuningSource s) {
  switch (s) {
  case TuningSource::Auto:
    return "auto";
  case TuningSource::Explicit:
    return "explicit";
  case TuningSource::GridSearch:
    return "grid";
  }
  return "?";
}

TuningSource parse_tuning_source(std::string_view name) {
  for (auto s : {TuningSource::Auto, TuningSource::Explicit, TuningSource::GridSearch})
    if (to_string(s) == name)
      return s;
  throw Error("unknown tuning source '" + std::string(name) + "' (expected auto, explicit or grid)");
}

double steady_seconds() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

TimingResult time_kernel(const std::function<void()> &kernel, const TimingProtocol &protocol,
                         const Clock &clock) {
  if (protocol.warmups < 0)
    throw Error("time_kernel: warmups must be non-negative");
  if (protocol.reps < 1)
    throw Error("time_kernel: reps must be at least 1");
  for (int i = 0; i < protocol.warmups; ++i)
    kernel();
  TimingResult r;
  r.samples.reserve(static_cast<std::size_t>(protocol.reps));
  double total = 0.0;
  for (int i = 0; i < protocol.reps; ++i) {
    const double t0 = clock();
    kernel();
    const double t1 = clock();
    r.samples.push_back(t1 - t0);
    total += t1 - t0;
  }
  r.mean_seconds = total / protocol.reps;
  return r;
}

double gflops(std::size_t nnz, double seconds) {
  return seconds > 0.0 ? 2.0 * static_cast<double>(nnz) / seconds / 1e9 : 0.0;
}

namespace {

int level_count(Target t) { return t == Target::Cpu2 ? 2 : 3; }

bool is_gpu(Target t) { return t == Target::Gpu3Emu || t == Target::Gpu35Emu; }

std::vector<value_t> probe_vector(index_t n) {
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<value_t> dist(-1.0, 1.0);
  std::vector<value_t> x(n);
  for (auto &v : x)
    v = dist(rng);
  return x;
}

std::vector<SizePair> grid_candidates(Target t) {
  if (is_gpu(t))
    return gpu_candidate_grid();
  std::vector<SizePair> out;
  for (auto srs : cpu_candidate_srs())
    out.push_back({t == Target::Cpu3 ? kCpuDefaultSsrs : index_t{0}, srs});
  return out;
}

// One kernel call on a packed matrix; `y` is in permuted order.
std::function<void()> make_kernel(Target t, const CsrKMatrix &m, const std::vector<value_t> &xp,
                                  std::vector<value_t> &y, const TuningParams &p, int threads) {
  switch (t) {
  case Target::Cpu2:
    return [&m, &xp, &y, threads] { spmv_csr2(m, xp, y, Threads{threads}); };
  case Target::Cpu3:
    return [&m, &xp, &y, threads] { spmv_csr3(m, xp, y, Threads{threads}); };
  case Target::Gpu3Emu:
    return [&m, &xp, &y, dims = p.block_dims] { y = emulate_gpu_spmv3(m, xp, dims).y; };
  case Target::Gpu35Emu:
    return [&m, &xp, &y, dims = p.block_dims] { y = emulate_gpu_spmv35(m, xp, dims).y; };
  case Target::Ref:
    break;
  }
  throw Error("make_kernel: the reference target has no packed kernel");
}

} // namespace

TuningParams resolve_params(const MatrixStats &stats, const RunOptions &opts) {
  const bool overridden = opts.ssrs || opts.srs || opts.block_dims;
  if (opts.tuning == TuningSource::Explicit && !overridden)
    throw Error("explicit tuning needs --ssrs, --srs or --block-dims");
  if (opts.tuning == TuningSource::GridSearch && overridden)
    throw Error("grid search chooses the sizes itself; drop --ssrs/--srs/--block-dims");

  TuningParams p;
  switch (opts.target) {
  case Target::Ref:
    return p;
  case Target::Cpu2:
    p = tune_cpu_constant(2);
    break;
  case Target::Cpu3:
    p = tune_cpu_constant(3);
    break;
  case Target::Gpu3Emu:
  case Target::Gpu35Emu:
    p = tune_gpu(stats, opts.profile);
    break;
  }
  if (opts.ssrs && level_count(opts.target) != 3)
    throw Error("--ssrs only applies to k = 3 targets (cpu3, gpu3-emu, gpu35-emu)");
  if (opts.block_dims && !is_gpu(opts.target))
    throw Error("--block-dims only applies to the GPU emulation targets");
  if (opts.ssrs)
    p.ssrs = *opts.ssrs;
  if (opts.srs)
    p.srs = *opts.srs;
  if ((opts.ssrs && *opts.ssrs == 0) || (opts.srs && *opts.srs == 0))
    throw Error("super-row sizes must be at least 1");

  if (opts.target == Target::Gpu3Emu) {
    p.variant = KernelVariant::Gpu3;
    // The GPU3 launch has no z extent: super-rows move from z to y, rows from y to x.
    if (!opts.block_dims && p.block_dims.z != 1)
      p.block_dims = {p.block_dims.y, p.block_dims.z, 1};
  } else if (opts.target == Target::Gpu35Emu) {
    p.variant = KernelVariant::Gpu35;
  }
  if (opts.block_dims) {
    validate_block_dims(*opts.block_dims);
    if (opts.target == Target::Gpu3Emu && opts.block_dims->z != 1)
      throw Error("gpu3-emu needs block dims with z = 1");
    p.block_dims = *opts.block_dims;
  }
  return p;
}

BenchRecord run_benchmark(const CsrMatrix &a, const RunOptions &opts, const Clock &clock,
                          const KernelObserver &observer) {
  if (opts.protocol.reps < 1)
    throw Error("reps must be at least 1");
  if (opts.protocol.warmups < 0)
    throw Error("warmups must be non-negative");
  if (!(opts.tolerance >= 0.0))
    throw Error("tolerance must be non-negative");
  if (a.n_rows() != a.n_cols())
    throw DimensionError("benchmarks need a square matrix, got " + std::to_string(a.n_rows()) +
                         "x" + std::to_string(a.n_cols()));

  const MatrixStats stats = compute_stats(a);
  BenchRecord rec;
  rec.matrix_id = opts.matrix_id;
  rec.target = opts.target;
  rec.tuning = opts.tuning;
  rec.n = stats.n;
  rec.nnz = stats.nnz;
  rec.warmups = opts.protocol.warmups;
  rec.reps = opts.protocol.reps;
  rec.tolerance = opts.tolerance;

  const std::vector<value_t> x = probe_vector(a.n_cols());
  const std::vector<value_t> reference = spmv_csr_ref(a, x);
  const std::vector<value_t> scale = abs_row_scale(a, x);
  std::vector<value_t> y(a.n_rows());

  auto observed = [&](std::function<void()> kernel) {
    return [kernel = std::move(kernel), &observer, seen = 0,
            warmups = opts.protocol.warmups]() mutable {
      kernel();
      if (observer)
        observer(seen++ >= warmups);
    };
  };

  if (opts.target == Target::Ref) {
    rec.threads = 1;
    const auto t = time_kernel(observed([&] { spmv_csr_ref(a, x, y); }), opts.protocol, clock);
    rec.mean_seconds = t.mean_seconds;
  } else {
    const int threads = is_gpu(opts.target) ? 1 : resolve_threads(Threads{opts.threads});
    rec.threads = threads;
    TuningParams params = resolve_params(stats, opts);

    if (opts.tuning == TuningSource::GridSearch) {
      const auto candidates = grid_candidates(opts.target);
      std::optional<SizePair> built;
      std::optional<CsrKMatrix> m;
      std::vector<value_t> xp;
      auto runner = [&](const CsrMatrix &mat, const SizePair &c) {
        TuningParams trial = params;
        trial.ssrs = c.ssrs;
        trial.srs = c.srs;
        if (!built || !(*built == c)) {
          const auto targets = trial.level_targets();
          m = reorder_and_pack(mat, trial.k, targets);
          xp = permute_vector(m->perm(), x);
          built = c;
          make_kernel(opts.target, *m, xp, y, trial, threads)(); // untimed warmup
        }
        auto kernel = make_kernel(opts.target, *m, xp, y, trial, threads);
        const double t0 = clock();
        kernel();
        return clock() - t0;
      };
      const auto res = grid_search<SizePair>(a, candidates, runner, std::max(1, opts.grid_reps));
      params.ssrs = res.best.ssrs;
      params.srs = res.best.srs;
      for (const auto &[c, s] : res.table)
        rec.grid_table.push_back({c, s});
    }

    const auto targets = params.level_targets();
    const double r0 = clock();
    BandKResult order = band_k(a, params.k, targets);
    const double r1 = clock();
    const CsrKMatrix m = pack_csrk(a, order.perm, order.level_group_sizes);
    const double r2 = clock();
    rec.reorder_seconds = r1 - r0;
    rec.pack_seconds = r2 - r1;

    const std::vector<value_t> xp = permute_vector(m.perm(), x);
    const auto t = time_kernel(observed(make_kernel(opts.target, m, xp, y, params, threads)),
                               opts.protocol, clock);
    rec.mean_seconds = t.mean_seconds;
    y = unpermute_vector(m.perm(), y);
    rec.params = params;
  }

  rec.gflops = gflops(rec.nnz, rec.mean_seconds);
  rec.max_rel_error = max_relative_error(y, reference, scale);
  rec.passed = rec.max_rel_error <= opts.tolerance;
  return rec;
}

std::vector<BenchRecord> compare(const CsrMatrix &a, const std::vector<Target> &targets,
                                 const RunOptions &opts, const Clock &clock,
                                 const KernelObserver &observer) {
  if (targets.empty())
    throw Error("compare: at least one target is required");
  std::vector<BenchRecord> records;
  for (auto t : targets) {
    RunOptions o = opts;
    o.target = t;
    records.push_back(run_benchmark(a, o, clock, observer));
  }
  double base = records.front().mean_seconds;
  for (const auto &r : records)
    if (r.target == Target::Ref) {
      base = r.mean_seconds;
      break;
    }
  for (auto &r : records)
    r.speedup = r.mean_seconds > 0.0 ? base / r.mean_seconds : 0.0;
  return records;
}

namespace {

using nlohmann::json;

json params_json(const TuningParams &p) {
  json j{{"k", p.k},
         {"srs", p.srs},
         {"variant", std::string(to_string(p.variant))},
         {"case", p.case_id}};
  j["ssrs"] = p.k == 3 ? json(p.ssrs) : json(nullptr);
  const bool gpu = p.variant == KernelVariant::Gpu3 || p.variant == KernelVariant::Gpu35;
  j["block_dims"] = gpu ? json::array({p.block_dims.x, p.block_dims.y, p.block_dims.z})
                        : json(nullptr);
  return j;
}

json grid_json(const std::vector<GridRow> &rows) {
  json arr = json::array();
  for (const auto &r : rows)
    arr.push_back({{"ssrs", r.candidate.ssrs}, {"srs", r.candidate.srs},
                   {"mean_seconds", r.mean_seconds}});
  return arr;
}

std::string number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

} // namespace

void write_records_json(std::ostream &os, const std::vector<BenchRecord> &records) {
  json arr = json::array();
  for (const auto &r : records) {
    json j{{"matrix", r.matrix_id},
           {"target", std::string(to_string(r.target))},
           {"tuning_source", std::string(to_string(r.tuning))},
           {"n", r.n},
           {"nnz", r.nnz},
           {"threads", r.threads},
           {"warmups", r.warmups},
           {"reps", r.reps},
           {"mean_seconds", r.mean_seconds},
           {"gflops", r.gflops},
           {"speedup", r.speedup},
           {"max_rel_error", r.max_rel_error},
           {"tolerance", r.tolerance},
           {"status", r.passed ? "PASS" : "FAIL"},
           {"reorder_seconds", r.reorder_seconds},
           {"pack_seconds", r.pack_seconds}};
    j["params"] = r.params ? params_json(*r.params) : json(nullptr);
    if (!r.grid_table.empty())
      j["grid"] = grid_json(r.grid_table);
    arr.push_back(std::move(j));
  }
  os << json{{"schema", std::string(kBenchSchema)}, {"records", arr}}.dump(2) << '\n';
}

void write_records_csv(std::ostream &os, const std::vector<BenchRecord> &records) {
  os << "schema,matrix,target,tuning_source,k,ssrs,srs,block_dims,variant,case,n,nnz,threads,"
        "warmups,reps,mean_seconds,gflops,speedup,max_rel_error,tolerance,status,"
        "reorder_seconds,pack_seconds\n";
  for (const auto &r : records) {
    os << kBenchSchema << ',' << r.matrix_id << ',' << to_string(r.target) << ','
       << to_string(r.tuning) << ',';
    if (r.params) {
      const auto &p = *r.params;
      const bool gpu = p.variant == KernelVariant::Gpu3 || p.variant == KernelVariant::Gpu35;
      os << p.k << ',' << (p.k == 3 ? std::to_string(p.ssrs) : "") << ',' << p.srs << ','
         << (gpu ? p.block_dims.to_string() : "") << ',' << to_string(p.variant) << ','
         << p.case_id << ',';
    } else {
      os << ",,,,,,";
    }
    os << r.n << ',' << r.nnz << ',' << r.threads << ',' << r.warmups << ',' << r.reps << ','
       << number(r.mean_seconds) << ',' << number(r.gflops) << ',' << number(r.speedup) << ','
       << number(r.max_rel_error) << ',' << number(r.tolerance) << ','
       << (r.passed ? "PASS" : "FAIL") << ',' << number(r.reorder_seconds) << ','
       << number(r.pack_seconds) << '\n';
  }
}

std::string tuning_json(const TuningParams &p, const MatrixStats &stats, std::string_view profile,
                        const std::vector<GridRow> &grid_table) {
  json j{{"schema", std::string(kTuneSchema)},
         {"profile", std::string(profile)},
         {"rdensity", stats.rdensity},
         {"params", params_json(p)}};
  if (!grid_table.empty())
    j["grid"] = grid_json(grid_table);
  return j.dump(2);
}

} // namespace csrk
