// Acceptance suite: one PASS/FAIL line per criterion.
//
//   csrk_acceptance            exit 1 if any of criteria 1-9 fails
//   csrk_acceptance --report   always exit 0 (used by ctest; the lines still say FAIL)
//
// Criterion 10 is advisory and never affects the exit code.

#include <chrono>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/cuthill_mckee_ordering.hpp>

#include "csrk/band_k.hpp"
#include "csrk/bench.hpp"
#include "csrk/cli.hpp"
#include "csrk/gpu_emulation.hpp"
#include "csrk/kernels.hpp"
#include "csrk/matrix_market.hpp"
#include "csrk/stats.hpp"
#include "csrk/tuning.hpp"
#include "support.hpp"

using namespace csrk;
using namespace csrk::testing;

namespace {

// Tolerances and limits.
constexpr double kOracleTolerance = 1e-12;
constexpr int kRandomMatrices = 200;
constexpr index_t kMaxN = 300;
constexpr double kMaxDensity = 0.10;
constexpr double kFitTolerance = 1e-9;
constexpr double kBandwidthReduction = 2.0;
constexpr double kRcmSlack = 1.5;
constexpr double kLimitGolden = 1.0;
constexpr double kLimitOracle = 60.0;
constexpr double kLimitBandwidth = 10.0;
constexpr int kPerfThreads = 8;
constexpr std::size_t kPerfNnz = 1'000'000;

const std::filesystem::path kData = CSRK_DATA_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string fmt(double v, int prec = 3) {
  std::ostringstream os;
  os << std::setprecision(prec) << v;
  return os.str();
}

Outcome golden_pack() {
  Stopwatch sw;
  const auto a = read_matrix_market(kData / "fixtures" / "fig1_9x9.mtx");
  const std::vector<std::vector<index_t>> groups{{2, 3, 2, 2}, {2, 2}};
  const auto m = pack_csrk(a, Permutation::identity(9), groups);
  const double t = sw.seconds();
  Outcome o;
  o.pass = m.sr_ptr() == std::vector<index_t>{0, 2, 5, 7, 9} &&
           m.ssr_ptr() == std::vector<index_t>{0, 2, 4} && t < kLimitGolden;
  o.detail = "sr_ptr/ssr_ptr bit-exact, " + fmt(t * 1e3) + " ms";
  return o;
}

Outcome oracle_equivalence() {
  Stopwatch sw;
  std::mt19937_64 rng(20240601);
  const Shape shapes[] = {Shape::General, Shape::Symmetric, Shape::Disconnected, Shape::EmptyRows,
                          Shape::DenseRow};
  const Target targets[] = {Target::Ref, Target::Cpu2, Target::Cpu3, Target::Gpu3Emu,
                            Target::Gpu35Emu};
  std::uniform_int_distribution<index_t> size(1, kMaxN);
  std::uniform_real_distribution<double> dens(0.0, kMaxDensity);
  double worst = 0.0;
  int checked = 0;
  for (int trial = 0; trial < kRandomMatrices; ++trial) {
    const Shape shape = shapes[trial % 5];
    const index_t n = trial < 10 ? static_cast<index_t>(trial + 1) : size(rng);
    // The dense row alone contributes 1/n; keep the total under the cap.
    double d = dens(rng);
    if (shape == Shape::DenseRow)
      d = std::max(0.0, std::min(d, kMaxDensity - 1.0 / n));
    const auto a = random_matrix(n, d, shape, rng);
    const auto x = random_vector(n, rng);
    const auto dense = to_dense(a);
    const auto oracle = dense_matvec(dense, x);
    const auto scale = dense_abs_matvec(dense, x);
    const auto stats = compute_stats(a);
    for (auto t : targets) {
      std::vector<double> y;
      if (t == Target::Ref) {
        y = spmv_csr_ref(a, x);
      } else {
        RunOptions opts;
        opts.target = t;
        const auto p = resolve_params(stats, opts);
        const auto lt = p.level_targets();
        const auto m = reorder_and_pack(a, p.k, lt);
        const auto xp = permute_vector(m.perm(), x);
        std::vector<double> yp;
        switch (t) {
        case Target::Cpu2:
          yp = spmv_csr2(m, xp);
          break;
        case Target::Cpu3:
          yp = spmv_csr3(m, xp);
          break;
        case Target::Gpu3Emu:
          yp = emulate_gpu_spmv3(m, xp, p.block_dims).y;
          break;
        default:
          yp = emulate_gpu_spmv35(m, xp, p.block_dims).y;
          break;
        }
        y = unpermute_vector(m.perm(), yp);
      }
      worst = std::max(worst, oracle_error(y, oracle, scale));
      ++checked;
    }
  }
  const double t = sw.seconds();
  Outcome o;
  o.pass = worst <= kOracleTolerance && t < kLimitOracle;
  o.detail = std::to_string(kRandomMatrices) + " matrices x 5 kernels, max rel error " +
             fmt(worst) + " (tol " + fmt(kOracleTolerance) + "), " + fmt(t) + " s";
  return o;
}

Outcome tuning_table() {
  struct Row {
    double rdensity;
    SizePair volta, ampere;
  };
  // Evaluated by hand from the log models and case rules.
  const Row rows[] = {
      {1, {9, 10}, {9, 21}},   {8, {6, 7}, {6, 13}},     {16, {8, 12}, {6, 44}},
      {20, {20, 10}, {13, 39}}, {32, {20, 10}, {13, 39}}, {100, {15, 7}, {6, 12}},
  };
  Outcome o;
  int ok = 0;
  for (const auto &r : rows) {
    MatrixStats s;
    s.rdensity = r.rdensity;
    const auto v = tune_gpu(s, volta_profile());
    const auto a = tune_gpu(s, ampere_profile());
    const bool good = SizePair{v.ssrs, v.srs} == r.volta && SizePair{a.ssrs, a.srs} == r.ampere;
    if (!good) {
      o.pass = false;
      o.detail += "rdensity " + fmt(r.rdensity) + ": volta (" + std::to_string(v.ssrs) + "," +
                  std::to_string(v.srs) + ") ampere (" + std::to_string(a.ssrs) + "," +
                  std::to_string(a.srs) + "); ";
    }
    ok += good;
  }
  o.detail += std::to_string(ok) + "/6 rdensity values match for both profiles";
  return o;
}

Outcome candidate_sets() {
  const std::vector<index_t> base{4, 6, 8, 12, 16, 24, 32, 48};
  const auto grid = gpu_candidate_grid();
  bool grid_ok = grid.size() == 64;
  for (const auto &p : grid)
    grid_ok = grid_ok && std::count(base.begin(), base.end(), p.ssrs) == 1 &&
              std::count(base.begin(), base.end(), p.srs) == 1 &&
              std::count(grid.begin(), grid.end(), p) == 1;
  const auto cpu = cpu_candidate_srs();
  const bool cpu_ok = cpu.size() == 18 && cpu.front() == 8 && cpu.back() == 3072 &&
                      std::is_sorted(cpu.begin(), cpu.end()) &&
                      std::adjacent_find(cpu.begin(), cpu.end()) == cpu.end();
  Outcome o;
  o.pass = grid_ok && cpu_ok && cpu_fallback_srs() == 96;
  o.detail = "gpu grid " + std::to_string(grid.size()) + " pairs, cpu set " +
             std::to_string(cpu.size()) + " values [" + std::to_string(cpu.front()) + ", " +
             std::to_string(cpu.back()) + "], fallback " + std::to_string(cpu_fallback_srs());
  return o;
}

Outcome classification() {
  // Row counts {0,5,5,5,10}: mean 5, variance exactly 10.
  std::vector<Triplet> t;
  const index_t counts[] = {0, 5, 5, 5, 10};
  for (index_t r = 0; r < 5; ++r)
    for (index_t c = 0; c < counts[r]; ++c)
      t.push_back({r, c, 1.0});
  const auto s10 = compute_stats(build_csr(5, 10, t));
  const auto flat = compute_stats(read_matrix_market(kData / "fixtures" / "circulant_64_r8.mtx"));
  Outcome o;
  o.pass = s10.variance == 10.0 && classify(s10) == MatrixClass::Regular &&
           classify(10.0) == MatrixClass::Regular &&
           classify(std::nextafter(10.0, 11.0)) == MatrixClass::Irregular &&
           flat.variance == 0.0 && classify(flat) == MatrixClass::Regular;
  o.detail = "variance 10 -> " + std::string(to_string(classify(10.0))) + ", 10+ulp -> " +
             std::string(to_string(classify(std::nextafter(10.0, 11.0)))) +
             ", constant rows -> " + std::string(to_string(classify(flat)));
  return o;
}

index_t boost_rcm_bandwidth(const CsrMatrix &a) {
  using G = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                  boost::property<boost::vertex_color_t, boost::default_color_type,
                                                  boost::property<boost::vertex_degree_t, int>>>;
  G g(a.n_rows());
  for (index_t r = 0; r < a.n_rows(); ++r)
    for (auto c : a.row_cols(r))
      if (c > r)
        boost::add_edge(r, c, g);
  std::vector<std::size_t> inv(a.n_rows());
  boost::cuthill_mckee_ordering(g, inv.rbegin(), boost::get(boost::vertex_color, g),
                                boost::make_degree_map(g));
  std::vector<index_t> pos(a.n_rows());
  for (std::size_t i = 0; i < inv.size(); ++i)
    pos[inv[i]] = static_cast<index_t>(i);
  return bandwidth_of(symmetric_permute(a, Permutation::from_forward(pos)));
}

Outcome band_k_bandwidth() {
  Stopwatch sw;
  std::mt19937_64 rng(42);
  const auto grid = grid_laplacian(64);
  const auto scrambled = symmetric_permute(grid, random_permutation(grid.n_rows(), rng));
  const index_t bw_in = bandwidth_of(scrambled);
  const index_t bw_rcm = boost_rcm_bandwidth(scrambled);

  auto band_k_bw = [&](int k, std::vector<index_t> targets) {
    const auto r = band_k(scrambled, k, targets);
    return bandwidth_of(symmetric_permute(scrambled, r.perm));
  };
  const index_t srs = 2;
  const index_t bw = band_k_bw(2, {srs});
  const double t = sw.seconds();

  const bool reduce_ok = bw_in >= kBandwidthReduction * bw;
  const bool rcm_ok = bw <= kRcmSlack * bw_rcm;
  Outcome o;
  o.pass = reduce_ok && rcm_ok && t < kLimitBandwidth;
  o.detail = "k=2 SRS " + std::to_string(srs) + ": bandwidth " + std::to_string(bw_in) + " -> " +
             std::to_string(bw) + " (" + fmt(double(bw_in) / bw) + "x, need >= 2: " +
             (reduce_ok ? "ok" : "no") + "); RCM " + std::to_string(bw_rcm) + ", ratio " +
             fmt(double(bw) / bw_rcm) + " (need <= 1.5: " + (rcm_ok ? "ok" : "no") + "); " +
             fmt(t) + " s";
  // Other group sizes, for the record.
  std::ostringstream more;
  more << "\n        other sizes:";
  for (index_t s : {3u, 4u, 8u, 96u})
    more << " k2/SRS" << s << "=" << band_k_bw(2, {s});
  more << " k3/(4,4)=" << band_k_bw(3, {4, 4});
  o.detail += more.str();
  return o;
}

Outcome emulation_partition() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<index_t> ext(1, 12);
  int pairs = 0, partition_fail = 0, bitwise_fail = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const index_t n = 1 + static_cast<index_t>(rng() % 120);
    const auto a = random_matrix(n, 0.08, static_cast<Shape>(trial % 5), rng);
    const std::vector<index_t> lt{1 + static_cast<index_t>(rng() % 10),
                                  1 + static_cast<index_t>(rng() % 6)};
    const auto m = reorder_and_pack(a, 3, lt);
    const auto x = random_vector(n, rng);
    for (int d = 0; d < 4; ++d) {
      const BlockDims d3{ext(rng), ext(rng), 1};
      const BlockDims d35{ext(rng), ext(rng), 1 + static_cast<index_t>(rng() % 6)};
      for (const auto &trace :
           {emulate_gpu_spmv3(m, x, d3).trace, emulate_gpu_spmv35(m, x, d35).trace}) {
        std::vector<int> hits(n, 0);
        bool ok = true;
        for (const auto &r : trace.rows)
          ok = ok && r.row < n && ++hits[r.row] == 1;
        ok = ok && std::count(hits.begin(), hits.end(), 1) == static_cast<long>(n);
        partition_fail += !ok;
        ++pairs;
      }
      // x = 1: super-rows on z, rows on y; the GPU3 launch puts them on y and x.
      const auto y35 = emulate_gpu_spmv35(m, x, {1, d3.x, d3.y}).y;
      const auto y3 = emulate_gpu_spmv3(m, x, d3).y;
      bitwise_fail += std::memcmp(y35.data(), y3.data(), y3.size() * sizeof(double)) != 0;
    }
  }
  Outcome o;
  o.pass = partition_fail == 0 && bitwise_fail == 0;
  o.detail = std::to_string(pairs) + " traces, " + std::to_string(partition_fail) +
             " not a partition; " + std::to_string(bitwise_fail) +
             " GPU35(x=1) vs GPU3 mismatches";
  return o;
}

Outcome regression_round_trip() {
  std::vector<SizeSample> s;
  for (double r : {1.0, 2.15, 4.83, 8.0, 16.0, 34.65, 100.0})
    s.push_back({r, 8.9 - 1.25 * std::log(r)});
  const auto m = fit_log_model(s);
  const double ea = std::fabs(m.a - 8.9), eb = std::fabs(m.b - 1.25);
  Outcome o;
  o.pass = ea <= kFitTolerance && eb <= kFitTolerance;
  o.detail = "a error " + fmt(ea) + ", b error " + fmt(eb) + " (tol " + fmt(kFitTolerance) + ")";
  return o;
}

Outcome timing_protocol() {
  // Kernel runs are counted by the observer; the stub clock makes timed run i
  // last i^2 ticks, so the arithmetic mean (143.5) differs from the median (110.5).
  int warm = 0, timed = 0;
  double pending = 0.0, now = 0.0;
  CliHooks hooks;
  std::ostringstream out, err;
  hooks.out = &out;
  hooks.err = &err;
  hooks.observer = [&](bool is_timed) {
    if (is_timed) {
      ++timed;
      pending = double(timed) * timed;
    } else {
      ++warm;
    }
  };
  hooks.clock = [&] {
    now += pending;
    pending = 0.0;
    return now;
  };
  const int code = run_cli(
      {"csrk", "run", (kData / "fixtures" / "circulant_64_r8.mtx").string(), "--kernel", "cpu2"},
      hooks);

  std::istringstream lines(out.str());
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  auto split = [](const std::string &s) {
    std::vector<std::string> f;
    std::stringstream ss(s);
    for (std::string x; std::getline(ss, x, ',');)
      f.push_back(x);
    return f;
  };
  const auto h = split(header), v = split(row);
  auto field = [&](const std::string &name) -> std::string {
    for (std::size_t i = 0; i < h.size() && i < v.size(); ++i)
      if (h[i] == name)
        return v[i];
    return "";
  };
  double mean = -1.0;
  try {
    mean = std::stod(field("mean_seconds"));
  } catch (...) {
  }
  Outcome o;
  o.pass = code == 0 && warm == 5 && timed == 20 && field("warmups") == "5" &&
           field("reps") == "20" && mean == 143.5;
  o.detail = "run: " + std::to_string(warm) + " warmups, " + std::to_string(timed) +
             " timed, reported mean " + fmt(mean, 6) + " (arithmetic 143.5), exit " +
             std::to_string(code);
  return o;
}

struct Advisory {
  std::string status;
  std::string detail;
};

Advisory performance_smoke() {
  const int threads = resolve_threads(Threads{});
  // Banded, 11 nonzeros per row: 1.1M nonzeros.
  const index_t n = 100'000, half = 5;
  std::vector<Triplet> t;
  t.reserve(std::size_t(n) * (2 * half + 1));
  for (index_t i = 0; i < n; ++i)
    for (index_t j = i > half ? i - half : 0; j <= std::min(n - 1, i + half); ++j)
      t.push_back({i, j, i == j ? 4.0 : -0.5});
  const auto a = build_csr(n, n, t);
  RunOptions opts;
  opts.protocol = {5, 20};
  const auto recs = compare(a, {Target::Ref, Target::Cpu2}, opts);
  const bool faster = recs[1].mean_seconds < recs[0].mean_seconds;
  const bool gated = threads >= kPerfThreads && a.nnz() >= kPerfNnz;
  Advisory r;
  r.status = gated ? (faster ? "PASS" : "FAIL") : "SKIP";
  r.detail = "nnz " + std::to_string(a.nnz()) + ", " + std::to_string(threads) +
             " threads: ref " + fmt(recs[0].mean_seconds * 1e3) + " ms, cpu2 " +
             fmt(recs[1].mean_seconds * 1e3) + " ms" +
             (gated ? "" : " (needs >= " + std::to_string(kPerfThreads) + " threads)");
  return r;
}

} // namespace

int main(int argc, char **argv) {
  const bool report = argc > 1 && std::strcmp(argv[1], "--report") == 0;
  struct Entry {
    int id;
    const char *name;
    std::function<Outcome()> run;
  };
  const Entry entries[] = {
      {1, "golden pack of the 9-row example", golden_pack},
      {2, "oracle equivalence, 5 kernels", oracle_equivalence},
      {3, "tuning formula table", tuning_table},
      {4, "candidate sets", candidate_sets},
      {5, "regular/irregular classification", classification},
      {6, "Band-k bandwidth on a scrambled 64x64 grid", band_k_bandwidth},
      {7, "emulation partition and x=1 equivalence", emulation_partition},
      {8, "log-model regression round trip", regression_round_trip},
      {9, "timing protocol defaults", timing_protocol},
  };
  int failed = 0;
  for (const auto &e : entries) {
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception &ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    failed += !o.pass;
    std::cout << "[" << std::setw(2) << e.id << "] " << (o.pass ? "PASS" : "FAIL") << "  "
              << e.name << ": " << o.detail << std::endl;
  }
  Advisory adv;
  try {
    adv = performance_smoke();
  } catch (const std::exception &ex) {
    adv = {"FAIL", std::string("exception: ") + ex.what()};
  }
  std::cout << "[10] " << adv.status << "  performance smoke (advisory): " << adv.detail
            << std::endl;
  std::cout << failed << " of 9 blocking criteria failed" << std::endl;
  return report || failed == 0 ? 0 : 1;
}
