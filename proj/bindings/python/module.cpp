#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>

#include "itercur/baselines.hpp"
#include "itercur/bench.hpp"
#include "itercur/driver.hpp"
#include "itercur/testmat.hpp"

namespace py = pybind11;
using namespace itercur;

namespace {

SelectionMethod parse_method(const std::string& name, double pivot_floor) {
    SelectionMethod method;
    method.pivot_floor = pivot_floor;
    if (name == "lupp")
        method.kind = PivotKind::Lupp;
    else if (name == "qrcp")
        method.kind = PivotKind::Qrcp;
    else if (name == "osinsky")
        method.kind = PivotKind::Osinsky;
    else
        throw std::invalid_argument("unknown selection method '" + name + "'");
    return method;
}

}  // namespace

PYBIND11_MODULE(_itercur, m) {
    m.doc() = "Rank-adaptive CUR decomposition with a recycled residual sketch";

    py::class_<MatrixHandle>(m, "MatrixHandle")
        .def_static("dense", [](Eigen::MatrixXd a) { return MatrixHandle(std::move(a)); },
                    py::arg("array"))
        .def_static(
            "sparse_csr",
            [](Index rows, Index cols, std::vector<Index> indptr, std::vector<Index> indices,
               std::vector<double> data) {
                return MatrixHandle(rows, cols, std::move(indptr), std::move(indices),
                                    std::move(data));
            },
            py::arg("rows"), py::arg("cols"), py::arg("indptr"), py::arg("indices"),
            py::arg("data"))
        .def_property_readonly("rows", &MatrixHandle::rows)
        .def_property_readonly("cols", &MatrixHandle::cols)
        .def_property_readonly("is_sparse", &MatrixHandle::is_sparse)
        .def_property_readonly("nnz", &MatrixHandle::nnz)
        .def("to_numpy", [](const MatrixHandle& a) { return a.to_dense(); })
        .def("fro_norm", [](const MatrixHandle& a) { return fro_norm(a); })
        .def("__repr__", [](const MatrixHandle& a) {
            return "<MatrixHandle " + std::to_string(a.rows()) + "x" +
                   std::to_string(a.cols()) + (a.is_sparse() ? " sparse>" : " dense>");
        });

    py::class_<CurFactors>(m, "CurFactors")
        .def_property_readonly("row_indices",
                               [](const CurFactors& f) { return f.row_indices; })
        .def_property_readonly("col_indices",
                               [](const CurFactors& f) { return f.col_indices; })
        .def_property_readonly("rank", &CurFactors::rank)
        .def("c_matrix", [](const CurFactors& f) { return f.C.to_dense(); })
        .def("r_matrix", [](const CurFactors& f) { return f.R.to_dense(); })
        .def("core_matrix", [](const CurFactors& f) { return f.core.materialize(); });

    py::class_<RunTrace>(m, "RunTrace")
        .def_property_readonly("status",
                               [](const RunTrace& t) { return std::string(to_string(t.status)); })
        .def_property_readonly("final_rho", [](const RunTrace& t) { return t.final_rho; })
        .def_property_readonly("threshold", [](const RunTrace& t) { return t.threshold; })
        .def_property_readonly("note", [](const RunTrace& t) { return t.note; })
        .def_property_readonly("rhos", [](const RunTrace& t) {
            std::vector<double> out;
            for (const auto& rec : t.iterations) out.push_back(rec.rho);
            return out;
        });

    m.def(
        "iterative_cur",
        [](const MatrixHandle& a, double epsilon, Index b, double delta, double alpha,
           bool risk_adjust, Index max_rank, Index max_iters, const std::string& col_method,
           const std::string& row_method, double pivot_floor, std::uint64_t seed) {
            StoppingConfig cfg;
            cfg.epsilon = epsilon;
            cfg.b = b;
            cfg.delta = delta;
            cfg.alpha = alpha;
            cfg.risk_adjust = risk_adjust;
            cfg.max_rank = max_rank;
            cfg.max_iters = max_iters;
            CurResult result = iterative_cur(a, cfg, parse_method(col_method, pivot_floor),
                                             parse_method(row_method, pivot_floor), seed);
            return py::make_tuple(result.factors, result.trace);
        },
        py::arg("a"), py::arg("epsilon") = 1e-6, py::arg("b") = 50, py::arg("delta") = 0.0,
        py::arg("alpha") = 0.05, py::arg("risk_adjust") = false, py::arg("max_rank") = 0,
        py::arg("max_iters") = 0, py::arg("col_method") = "lupp",
        py::arg("row_method") = "lupp", py::arg("pivot_floor") = 1e-13, py::arg("seed") = 0,
        "Run the rank-adaptive decomposition; returns (factors, trace).");

    m.def(
        "slupp_cur",
        [](const MatrixHandle& a, Index rank, std::uint64_t seed) {
            return slupp_cur(a, rank, seed);
        },
        py::arg("a"), py::arg("rank"), py::arg("seed") = 0);

    m.def(
        "true_relative_error",
        [](const MatrixHandle& a, const CurFactors& f) { return true_relative_error(a, f); },
        py::arg("a"), py::arg("factors"));

    m.def(
        "truncated_svd_error",
        [](const MatrixHandle& a, Index rank) { return truncated_svd_error(a, rank); },
        py::arg("a"), py::arg("rank"));

    m.def(
        "singular_values",
        [](const MatrixHandle& a) { return compute_spectrum(a).singular_values; },
        py::arg("a"));

    m.def(
        "rangefinder_error",
        [](const MatrixHandle& a, Index b, std::uint64_t seed) {
            return rangefinder_error(a, b, seed);
        },
        py::arg("a"), py::arg("b"), py::arg("seed") = 0);

    m.def("adjusted_threshold", &adjusted_threshold, py::arg("epsilon"), py::arg("delta"),
          py::arg("alpha"), py::arg("c"));
    m.def("gratton_tail", &gratton_tail, py::arg("c"), py::arg("tau"));

    m.def(
        "low_rank",
        [](Index m, Index n, Index r, std::uint64_t seed) {
            return generate(GeneratorSpec::low_rank(m, n, r, seed));
        },
        py::arg("m"), py::arg("n"), py::arg("rank"), py::arg("seed") = 0);
    m.def(
        "low_rank_pd",
        [](Index m, Index n, Index r, double decay, std::uint64_t seed) {
            return generate(GeneratorSpec::low_rank_pd(m, n, r, decay, seed));
        },
        py::arg("m"), py::arg("n"), py::arg("rank"), py::arg("decay") = 0.0,
        py::arg("seed") = 0);
    m.def("lehmer", [](Index n) { return generate(GeneratorSpec::lehmer(n)); }, py::arg("n"));
    m.def(
        "exp_decay",
        [](Index n, double ratio, std::uint64_t seed) {
            return generate(GeneratorSpec::exp_decay(n, ratio, seed));
        },
        py::arg("n"), py::arg("ratio") = 0.5, py::arg("seed") = 0);

    m.def("read_matrix_market", &read_matrix_market, py::arg("path"));
    m.def("write_matrix_market", &write_matrix_market, py::arg("path"), py::arg("a"));

    m.attr("__version__") = "0.1.0";
}
