#include "csrk/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "csrk/band_k.hpp"
#include "csrk/bench.hpp"
#include "csrk/manifest.hpp"
#include "csrk/matrix_market.hpp"
#include "csrk/ordering.hpp"

namespace fs = std::filesystem;

namespace csrk {

namespace {

struct Common {
  std::string matrix;
  std::string profile = "volta";
  std::string format = "csv";
};

DeviceProfile resolve_profile(const std::string &name_or_path) {
  if (fs::exists(name_or_path))
    return load_profile(name_or_path);
  return builtin_profile(name_or_path);
}

std::string matrix_id(const std::string &path) { return fs::path(path).stem().string(); }

void print_stats(std::ostream &os, const MatrixStats &s, const std::string &format) {
  if (format == "json") {
    nlohmann::json j{{"n", s.n},
                     {"nnz", s.nnz},
                     {"max", s.max_row_nnz},
                     {"rdensity", s.rdensity},
                     {"variance", s.variance},
                     {"sy", s.pattern_symmetry},
                     {"class", std::string(to_string(classify(s)))}};
    os << j.dump(2) << '\n';
    return;
  }
  os << "N         " << s.n << '\n'
     << "NNZ       " << s.nnz << '\n'
     << "MAX       " << s.max_row_nnz << '\n'
     << "rdensity  " << s.rdensity << '\n'
     << "variance  " << s.variance << '\n'
     << "SY        " << s.pattern_symmetry << '\n'
     << "class     " << (classify(s) == MatrixClass::Regular ? "Regular" : "Irregular") << '\n';
}

void emit(std::ostream &out, const std::vector<BenchRecord> &records, const std::string &format) {
  if (format == "json")
    write_records_json(out, records);
  else
    write_records_csv(out, records);
}

int verdict(std::ostream &err, const std::vector<BenchRecord> &records) {
  for (const auto &r : records)
    if (!r.passed) {
      err << "verification failed: " << to_string(r.target) << " max_rel_error "
                << r.max_rel_error << " > tolerance " << r.tolerance << '\n';
      return kExitVerifyFailed;
    }
  return 0;
}

} // namespace

int run_cli(const std::vector<std::string> &args, const CliHooks &hooks) {
  CLI::App app{"CSR-k sparse matrix toolkit"};
  app.require_subcommand(1);

  Common c;
  RunOptions opts;
  std::string kernel = "cpu2";
  std::string tuning = "auto";
  std::optional<int> k;
  std::optional<index_t> ssrs, srs;
  std::string block_dims;

  auto add_matrix = [&](CLI::App *sub) {
    sub->add_option("matrix", c.matrix, "Matrix Market file")->required()->check(CLI::ExistingFile);
  };
  auto add_run_flags = [&](CLI::App *sub) {
    sub->add_option("--k", k, "CSR-k levels (2 or 3); with --kernel cpu selects cpu2/cpu3")
        ->check(CLI::IsMember({2, 3}));
    sub->add_option("--ssrs", ssrs, "Super-rows per super-super-row (k = 3 only)");
    sub->add_option("--srs", srs, "Rows per super-row");
    sub->add_option("--block-dims", block_dims, "Emulated block dims x,y,z");
    sub->add_option("--tuning", tuning, "auto, explicit or grid")
        ->check(CLI::IsMember({"auto", "explicit", "grid"}));
    sub->add_option("--warmups", opts.protocol.warmups, "Untimed warmup runs")
        ->capture_default_str()->check(CLI::NonNegativeNumber);
    sub->add_option("--reps", opts.protocol.reps, "Timed runs")
        ->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--threads", opts.threads, "Worker threads (0: runtime default)")
        ->envname("OMP_NUM_THREADS")->check(CLI::NonNegativeNumber);
    sub->add_option("--profile", c.profile, "Device profile: volta, ampere or a profile file")
        ->capture_default_str();
    sub->add_option("--format", c.format, "Output format")
        ->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--tolerance", opts.tolerance, "Max relative error for PASS")
        ->capture_default_str()->check(CLI::NonNegativeNumber);
  };

  auto *info = app.add_subcommand("info", "Print N, NNZ, MAX, rdensity, variance, SY and class");
  add_matrix(info);
  std::string manifest_path, manifest_key;
  std::string info_format = "text";
  info->add_option("--manifest", manifest_path, "Check against a manifest CSV")
      ->check(CLI::ExistingFile);
  info->add_option("--id", manifest_key, "Manifest id or name (default: file stem)");
  info->add_option("--format", info_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto *run = app.add_subcommand("run", "Benchmark one kernel through the full pipeline");
  add_matrix(run);
  run->add_option("--kernel", kernel, "ref, cpu, cpu2, cpu3, gpu3-emu or gpu35-emu")
      ->capture_default_str();
  add_run_flags(run);

  auto *tune = app.add_subcommand("tune", "Print the tuning decision as JSON");
  add_matrix(tune);
  std::string mode = "gpu";
  tune->add_option("--mode", mode, "gpu (model), cpu (constant) or grid (measured search)")
      ->capture_default_str()->check(CLI::IsMember({"gpu", "cpu", "grid"}));
  tune->add_option("--kernel", kernel, "Target for --mode grid")->capture_default_str();
  tune->add_option("--k", k, "k for --mode cpu")->check(CLI::IsMember({2, 3}));
  tune->add_option("--profile", c.profile, "Device profile: volta, ampere or a profile file")
      ->capture_default_str();
  tune->add_option("--reps", opts.grid_reps, "Timed runs per candidate in grid mode")
      ->capture_default_str()->check(CLI::PositiveNumber);
  tune->add_option("--threads", opts.threads, "Worker threads")->envname("OMP_NUM_THREADS");

  auto *cmp = app.add_subcommand("compare", "Time several targets and report speedup vs ref");
  add_matrix(cmp);
  std::vector<std::string> targets;
  cmp->add_option("--targets", targets, "Comma-separated targets")->delimiter(',');
  add_run_flags(cmp);

  auto *reorder = app.add_subcommand("reorder", "Run Band-k and write the permutation");
  add_matrix(reorder);
  std::string perm_out, matrix_out, groups_out;
  int reorder_k = 2;
  index_t reorder_srs = kCpuFallbackSrs, reorder_ssrs = kCpuDefaultSsrs;
  reorder->add_option("--k", reorder_k, "2 or 3")->capture_default_str()->check(CLI::IsMember({2, 3}));
  reorder->add_option("--srs", reorder_srs, "Rows per super-row")->capture_default_str();
  reorder->add_option("--ssrs", reorder_ssrs, "Super-rows per super-super-row (k = 3)")
      ->capture_default_str();
  reorder->add_option("-o,--output", perm_out, "Permutation file (line i: new position of row i)")
      ->required();
  reorder->add_option("--matrix-out", matrix_out, "Also write the permuted matrix");
  reorder->add_option("--groups-out", groups_out, "Also write sr_ptr / ssr_ptr as JSON");

  std::ostream &out = hooks.out ? *hooks.out : std::cout;
  std::ostream &err = hooks.err ? *hooks.err : std::cerr;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(rev);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    const CsrMatrix a = read_matrix_market(fs::path(c.matrix));

    if (info->parsed()) {
      const MatrixStats s = compute_stats(a);
      print_stats(out, s, info_format);
      if (!manifest_path.empty()) {
        const auto entries = load_manifest(manifest_path);
        const std::string key = manifest_key.empty() ? matrix_id(c.matrix) : manifest_key;
        const ManifestEntry *e = find_entry(entries, key);
        if (!e) {
          err << "warning: '" << key << "' is not in " << manifest_path << '\n';
        } else {
          for (const auto &w : verify_against_manifest(*e, s))
            err << "warning: " << w << '\n';
        }
      }
      return 0;
    }

    if (reorder->parsed()) {
      std::vector<index_t> lt{reorder_srs};
      if (reorder_k == 3)
        lt.push_back(reorder_ssrs);
      const BandKResult r = band_k(a, reorder_k, lt);
      write_permutation(fs::path(perm_out), r.perm);
      const CsrKMatrix m = pack_csrk(a, r.perm, r.level_group_sizes);
      if (!matrix_out.empty())
        write_matrix_market(fs::path(matrix_out), m.base());
      if (!groups_out.empty()) {
        nlohmann::json j{{"k", m.k()}, {"sr_ptr", m.sr_ptr()}};
        if (m.k() == 3)
          j["ssr_ptr"] = m.ssr_ptr();
        std::ofstream(groups_out) << j.dump() << '\n';
      }
      err << "bandwidth " << bandwidth(a) << " -> " << bandwidth(m.base()) << ", "
                << m.num_super_rows() << " super-rows\n";
      return 0;
    }

    opts.profile = resolve_profile(c.profile);
    opts.matrix_id = matrix_id(c.matrix);
    opts.tuning = parse_tuning_source(tuning);
    opts.ssrs = ssrs;
    opts.srs = srs;
    if (!block_dims.empty())
      opts.block_dims = parse_block_dims(block_dims);

    auto target_of = [&](const std::string &name) {
      if (name == "cpu")
        return k.value_or(2) == 3 ? Target::Cpu3 : Target::Cpu2;
      const Target t = parse_target(name);
      const int tk = t == Target::Cpu2 ? 2 : 3;
      if (k && t != Target::Ref && *k != tk)
        throw Error("--k " + std::to_string(*k) + " conflicts with target " + name);
      return t;
    };

    if (tune->parsed()) {
      const MatrixStats s = compute_stats(a);
      TuningParams p;
      std::vector<GridRow> table;
      if (mode == "gpu") {
        p = tune_gpu(s, opts.profile);
      } else if (mode == "cpu") {
        p = tune_cpu_constant(k.value_or(2));
      } else {
        opts.target = target_of(kernel);
        if (opts.target == Target::Ref)
          throw Error("grid search needs a CSR-k target");
        opts.tuning = TuningSource::GridSearch;
        opts.protocol = {1, 1};
        const BenchRecord rec = run_benchmark(a, opts, hooks.clock, hooks.observer);
        p = *rec.params;
        table = rec.grid_table;
      }
      out << tuning_json(p, s, mode == "cpu" ? "cpu" : opts.profile.name, table) << '\n';
      return 0;
    }

    if (run->parsed()) {
      opts.target = target_of(kernel);
      const auto rec = run_benchmark(a, opts, hooks.clock, hooks.observer);
      emit(out, {rec}, c.format);
      return verdict(err, {rec});
    }

    if (cmp->parsed()) {
      if (targets.empty()) {
        err << "compare: --targets needs at least one target\n";
        return kExitError;
      }
      std::vector<Target> ts;
      for (const auto &t : targets)
        ts.push_back(target_of(t));
      const auto recs = compare(a, ts, opts, hooks.clock, hooks.observer);
      emit(out, recs, c.format);
      return verdict(err, recs);
    }
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}

} // namespace csrk
