#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "csrk/band_k.hpp"
#include "csrk/bench.hpp"
#include "csrk/gpu_emulation.hpp"
#include "csrk/kernels.hpp"
#include "csrk/matrix_market.hpp"
#include "csrk/stats.hpp"
#include "csrk/tuning.hpp"

namespace py = pybind11;
using namespace csrk;

namespace {

BlockDims dims_from(const std::vector<index_t> &d) {
  if (d.size() < 2 || d.size() > 3)
    throw Error("block dims need 2 or 3 extents");
  BlockDims b{d[0], d[1], d.size() == 3 ? d[2] : 1};
  validate_block_dims(b);
  return b;
}

py::tuple dims_tuple(const BlockDims &d) { return py::make_tuple(d.x, d.y, d.z); }

py::dict params_dict(const TuningParams &p) {
  py::dict d;
  d["k"] = p.k;
  d["ssrs"] = p.k == 3 ? py::object(py::int_(p.ssrs)) : py::object(py::none());
  d["srs"] = p.srs;
  d["block_dims"] = dims_tuple(p.block_dims);
  d["variant"] = std::string(to_string(p.variant));
  d["case"] = p.case_id;
  return d;
}

DeviceProfile profile_from(const std::string &name) { return builtin_profile(name); }

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "CSR-k sparse matrix format, Band-k reordering and SpMV kernels";

  // Later registrations are tried first, so subclasses go last.
  auto base = py::register_exception<Error>(m, "CsrkError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", base);
  py::register_exception<ParseError>(m, "ParseError", base);

  py::class_<CsrMatrix>(m, "CsrMatrix")
      .def(py::init([](index_t n_rows, index_t n_cols, std::vector<index_t> rows,
                       std::vector<index_t> cols, std::vector<value_t> vals) {
             if (rows.size() != cols.size() || rows.size() != vals.size())
               throw Error("rows, cols and vals must have equal length");
             std::vector<Triplet> t(rows.size());
             for (std::size_t i = 0; i < t.size(); ++i)
               t[i] = {rows[i], cols[i], vals[i]};
             return build_csr(n_rows, n_cols, t);
           }),
           py::arg("n_rows"), py::arg("n_cols"), py::arg("rows"), py::arg("cols"),
           py::arg("vals"), "Builds from coordinate triplets; duplicates are summed.")
      .def_property_readonly("n_rows", &CsrMatrix::n_rows)
      .def_property_readonly("n_cols", &CsrMatrix::n_cols)
      .def_property_readonly("nnz", &CsrMatrix::nnz)
      .def_property_readonly("row_ptr", &CsrMatrix::row_ptr)
      .def_property_readonly("col_idx", &CsrMatrix::col_idx)
      .def_property_readonly("vals", &CsrMatrix::vals)
      .def("bandwidth", [](const CsrMatrix &a) { return bandwidth(a); })
      .def("__eq__", [](const CsrMatrix &a, const CsrMatrix &b) { return a == b; })
      .def("__repr__", [](const CsrMatrix &a) {
        return "<CsrMatrix " + std::to_string(a.n_rows()) + "x" + std::to_string(a.n_cols()) +
               ", nnz " + std::to_string(a.nnz()) + ">";
      });

  py::class_<CsrKMatrix>(m, "CsrKMatrix")
      .def_property_readonly("k", &CsrKMatrix::k)
      .def_property_readonly("base", &CsrKMatrix::base)
      .def_property_readonly("sr_ptr", &CsrKMatrix::sr_ptr)
      .def_property_readonly("ssr_ptr", &CsrKMatrix::ssr_ptr)
      .def_property_readonly("perm", [](const CsrKMatrix &m) { return m.perm().forward(); });

  py::class_<MatrixStats>(m, "MatrixStats")
      .def_readonly("n", &MatrixStats::n)
      .def_readonly("nnz", &MatrixStats::nnz)
      .def_readonly("rdensity", &MatrixStats::rdensity)
      .def_readonly("variance", &MatrixStats::variance)
      .def_readonly("max_row_nnz", &MatrixStats::max_row_nnz)
      .def_readonly("pattern_symmetry", &MatrixStats::pattern_symmetry)
      .def_property_readonly("matrix_class",
                             [](const MatrixStats &s) { return std::string(to_string(classify(s))); });

  m.def("read_matrix_market", py::overload_cast<const std::filesystem::path &>(&read_matrix_market),
        py::arg("path"));
  m.def("write_matrix_market",
        py::overload_cast<const std::filesystem::path &, const CsrMatrix &>(&write_matrix_market),
        py::arg("path"), py::arg("matrix"));
  m.def("compute_stats", &compute_stats, py::arg("matrix"));
  m.def("classify", [](double variance) { return std::string(to_string(classify(variance))); },
        py::arg("variance"));

  m.def(
      "band_k",
      [](const CsrMatrix &a, int k, std::vector<index_t> targets) {
        const auto r = band_k(a, k, targets);
        return py::make_tuple(r.perm.forward(), r.level_group_sizes);
      },
      py::arg("matrix"), py::arg("k"), py::arg("level_targets"),
      "Returns (forward permutation, group sizes per level).");
  m.def(
      "pack",
      [](const CsrMatrix &a, std::vector<index_t> forward,
         std::vector<std::vector<index_t>> groups) {
        return pack_csrk(a, Permutation::from_forward(std::move(forward)), groups);
      },
      py::arg("matrix"), py::arg("perm"), py::arg("group_sizes"));
  m.def(
      "reorder_and_pack",
      [](const CsrMatrix &a, int k, std::vector<index_t> targets) {
        return reorder_and_pack(a, k, targets);
      },
      py::arg("matrix"), py::arg("k"), py::arg("level_targets"));

  m.def(
      "spmv_ref", [](const CsrMatrix &a, std::vector<value_t> x) { return spmv_csr_ref(a, x); },
      py::arg("matrix"), py::arg("x"));
  m.def(
      "spmv_csr2",
      [](const CsrKMatrix &mat, std::vector<value_t> x, int threads) {
        py::gil_scoped_release release;
        return spmv_csr2(mat, x, Threads{threads});
      },
      py::arg("matrix"), py::arg("x"), py::arg("threads") = 0,
      "x and the result are in permuted order.");
  m.def(
      "spmv_csr3",
      [](const CsrKMatrix &mat, std::vector<value_t> x, int threads) {
        py::gil_scoped_release release;
        return spmv_csr3(mat, x, Threads{threads});
      },
      py::arg("matrix"), py::arg("x"), py::arg("threads") = 0);
  m.def(
      "emulate_gpu3",
      [](const CsrKMatrix &mat, std::vector<value_t> x, std::vector<index_t> dims) {
        return emulate_gpu_spmv3(mat, x, dims_from(dims)).y;
      },
      py::arg("matrix"), py::arg("x"), py::arg("block_dims"));
  m.def(
      "emulate_gpu35",
      [](const CsrKMatrix &mat, std::vector<value_t> x, std::vector<index_t> dims) {
        return emulate_gpu_spmv35(mat, x, dims_from(dims)).y;
      },
      py::arg("matrix"), py::arg("x"), py::arg("block_dims"));

  m.def(
      "tune_gpu",
      [](double rdensity, const std::string &profile) {
        MatrixStats s;
        s.rdensity = rdensity;
        return params_dict(tune_gpu(s, profile_from(profile)));
      },
      py::arg("rdensity"), py::arg("profile") = "volta");
  m.def(
      "tune_cpu", [](int k) { return params_dict(tune_cpu_constant(k)); }, py::arg("k") = 2);
  m.def("gpu_candidate_grid", [] {
    std::vector<std::pair<index_t, index_t>> out;
    for (const auto &p : gpu_candidate_grid())
      out.emplace_back(p.ssrs, p.srs);
    return out;
  });
  m.def("cpu_candidate_srs", &cpu_candidate_srs);
  m.def(
      "fit_log_model",
      [](std::vector<double> rdensity, std::vector<double> size) {
        if (rdensity.size() != size.size())
          throw Error("rdensity and size must have equal length");
        std::vector<SizeSample> s;
        for (std::size_t i = 0; i < size.size(); ++i)
          s.push_back({rdensity[i], size[i]});
        const auto fit = fit_log_model(s);
        return py::make_tuple(fit.a, fit.b);
      },
      py::arg("rdensity"), py::arg("size"), "Returns (a, b) of size = a - b ln(rdensity).");

  m.def(
      "run_benchmark",
      [](const CsrMatrix &a, const std::string &target, int warmups, int reps, int threads,
         const std::string &profile, double tolerance) {
        RunOptions o;
        o.target = parse_target(target);
        o.protocol = {warmups, reps};
        o.threads = threads;
        o.profile = profile_from(profile);
        o.tolerance = tolerance;
        BenchRecord r;
        {
          py::gil_scoped_release release;
          r = run_benchmark(a, o);
        }
        py::dict d;
        d["target"] = std::string(to_string(r.target));
        d["params"] = r.params ? py::object(params_dict(*r.params)) : py::object(py::none());
        d["n"] = r.n;
        d["nnz"] = r.nnz;
        d["threads"] = r.threads;
        d["warmups"] = r.warmups;
        d["reps"] = r.reps;
        d["mean_seconds"] = r.mean_seconds;
        d["gflops"] = r.gflops;
        d["max_rel_error"] = r.max_rel_error;
        d["passed"] = r.passed;
        d["reorder_seconds"] = r.reorder_seconds;
        d["pack_seconds"] = r.pack_seconds;
        return d;
      },
      py::arg("matrix"), py::arg("target") = "cpu2", py::arg("warmups") = 5, py::arg("reps") = 20,
      py::arg("threads") = 0, py::arg("profile") = "volta", py::arg("tolerance") = 1e-10);
}
