#include "bincs/builder.hpp"
#include "bincs/constructions.hpp"
#include "bincs/error.hpp"
#include "bincs/metrics.hpp"
#include "bincs/recovery.hpp"
#include "bincs/sparse_matrix.hpp"

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>

namespace py = pybind11;
using namespace bincs;

namespace {

PyObject* g_error = nullptr;
PyObject* g_malformed = nullptr;

void raise(PyObject* type, const Error& e) {
    py::object inst = py::reinterpret_steal<py::object>(PyObject_CallFunction(type, "s", e.what()));
    if (!inst) return;  // CallFunction already set a Python error
    inst.attr("kind") = std::string(to_string(e.kind()));
    if (const auto* m = dynamic_cast<const MalformedAlist*>(&e)) inst.attr("line") = m->line();
    PyErr_SetObject(type, inst.ptr());
}

CoherenceMethod parse_method(const std::string& name) {
    if (name == "auto") return CoherenceMethod::Auto;
    if (name == "pairwise") return CoherenceMethod::Pairwise;
    if (name == "rows") return CoherenceMethod::RowAccumulation;
    throw Error(ErrorKind::BadParams, "method must be auto, pairwise or rows, got " + name);
}

py::object girth_value(const Girth& g) {
    if (g.is_infinite()) return py::float_(std::numeric_limits<double>::infinity());
    return py::int_(g.length());
}

py::array_t<std::uint8_t> to_dense(const SparseBinaryMatrix& h) {
    py::array_t<std::uint8_t> out({static_cast<py::ssize_t>(h.rows()), static_cast<py::ssize_t>(h.cols())});
    auto v = out.mutable_unchecked<2>();
    for (py::ssize_t r = 0; r < v.shape(0); ++r)
        for (py::ssize_t c = 0; c < v.shape(1); ++c) v(r, c) = 0;
    for (Index j = 0; j < h.cols(); ++j)
        for (Index r : h.column(j)) v(r, j) = 1;
    return out;
}

std::vector<std::vector<Index>> column_lists(const SparseBinaryMatrix& h) {
    std::vector<std::vector<Index>> out(h.cols());
    for (Index j = 0; j < h.cols(); ++j) out[j].assign(h.column(j).begin(), h.column(j).end());
    return out;
}

}  // namespace

PYBIND11_MODULE(_bincs, m) {
    m.doc() = "Deterministic binary measurement matrices for compressed sensing";

    g_error = PyErr_NewException("bincs.Error", PyExc_ValueError, nullptr);
    g_malformed = PyErr_NewException("bincs.MalformedAlist", g_error, nullptr);
    m.attr("Error") = py::handle(g_error);
    m.attr("MalformedAlist") = py::handle(g_malformed);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const MalformedAlist& e) {
            raise(g_malformed, e);
        } catch (const Error& e) {
            raise(g_error, e);
        }
    });

    py::class_<SparseBinaryMatrix>(m, "SparseBinaryMatrix")
        .def(py::init<Index, std::vector<std::vector<Index>>>(), py::arg("rows"), py::arg("columns"),
             "Binary matrix from sorted per-column row indices.")
        .def_property_readonly("rows", &SparseBinaryMatrix::rows)
        .def_property_readonly("cols", &SparseBinaryMatrix::cols)
        .def_property_readonly("shape", [](const SparseBinaryMatrix& h) { return py::make_tuple(h.rows(), h.cols()); })
        .def_property_readonly("nnz", &SparseBinaryMatrix::nnz)
        .def("column", [](const SparseBinaryMatrix& h, Index j) {
            if (j >= h.cols()) throw Error(ErrorKind::IndexOutOfRange, "column " + std::to_string(j));
            return std::vector<Index>(h.column(j).begin(), h.column(j).end());
        })
        .def("columns", &column_lists)
        .def("column_weights", &SparseBinaryMatrix::column_weights)
        .def("row_weights", &SparseBinaryMatrix::row_weights)
        .def("at", &SparseBinaryMatrix::at)
        .def("to_dense", &to_dense, "uint8 array of shape (rows, cols)")
        .def("to_alist", [](const SparseBinaryMatrix& h) { return export_alist(h); })
        .def_static("from_alist", [](const std::string& text) { return import_alist(text); })
        .def_static("load", &load_alist_file, py::arg("path"))
        .def("save", [](const SparseBinaryMatrix& h, const std::string& path) { save_alist_file(path, h); })
        .def("trim", &trim, py::arg("m"), py::arg("n"))
        .def(py::self == py::self)
        .def("__repr__", [](const SparseBinaryMatrix& h) {
            return "<SparseBinaryMatrix " + std::to_string(h.rows()) + "x" + std::to_string(h.cols()) +
                   " nnz=" + std::to_string(h.nnz()) + ">";
        });

    py::class_<BaseMatrix>(m, "BaseMatrix")
        .def_readonly("matrix", &BaseMatrix::h)
        .def_readonly("s", &BaseMatrix::s)
        .def_readonly("t", &BaseMatrix::t)
        .def_readonly("q", &BaseMatrix::q)
        .def_readonly("beta_log", &BaseMatrix::beta_log)
        .def_property_readonly("construction",
                               [](const BaseMatrix& b) { return std::string(to_string(b.construction)); });

    m.def("build_additive", &build_additive, py::arg("q"));
    m.def("build_rs_latin", py::overload_cast<std::uint32_t, std::uint32_t>(&build_rs_latin), py::arg("q"),
          py::arg("beta_log") = 0);
    m.def("build_latin", py::overload_cast<std::uint32_t, std::uint32_t>(&build_latin), py::arg("q"),
          py::arg("beta_log") = 0);
    m.def(
        "build_base",
        [](const std::string& family, std::uint32_t q, std::uint32_t beta_log) {
            return build_base(parse_construction(family), q, beta_log);
        },
        py::arg("family"), py::arg("q"), py::arg("beta_log") = 0);
    m.def("verify_p1", &verify_p1);
    m.def("verify_p2", &verify_p2);

    py::class_<CoherenceReport>(m, "CoherenceReport")
        .def_readonly("mu", &CoherenceReport::mu)
        .def_readonly("lambda_max", &CoherenceReport::lambda_max)
        .def_readonly("witness", &CoherenceReport::witness)
        .def_readonly("min_col_weight", &CoherenceReport::min_col_weight)
        .def_readonly("max_col_weight", &CoherenceReport::max_col_weight)
        .def_property_readonly("exact",
                               [](const CoherenceReport& r) -> py::object {
                                   if (auto e = r.exact()) return py::make_tuple(e->num, e->den);
                                   return py::none();
                               })
        .def("to_key_value", [](const CoherenceReport& r) { return to_key_value(r); });

    m.def(
        "coherence",
        [](const SparseBinaryMatrix& h, const std::string& method, unsigned threads) {
            const auto meth = parse_method(method);
            py::gil_scoped_release release;
            return coherence(h, meth, threads);
        },
        py::arg("h"), py::arg("method") = "auto", py::arg("threads") = 0);
    m.def("max_inner_product", &max_inner_product);
    m.def("girth", [](const SparseBinaryMatrix& h) { return girth_value(girth(h)); },
          "Tanner-graph girth; math.inf for acyclic graphs.");

    m.def("welch_bound", &welch_bound, py::arg("m"), py::arg("n"));
    m.def("johnson_columns", &johnson_columns, py::arg("m"), py::arg("gamma"), py::arg("lam"));
    m.def("johnson_coherence_lower", &johnson_coherence_lower, py::arg("m"), py::arg("n"));
    m.def("theorem2_upper", &theorem2_upper, py::arg("m"), py::arg("s"), py::arg("t"));
    m.def("rip_order", [](std::uint64_t num, std::uint64_t den) { return rip_order(Rational{num, den}); },
          py::arg("num"), py::arg("den"));
    m.def("rip_order", py::overload_cast<double>(&rip_order), py::arg("mu"));

    py::class_<CatalogEntry>(m, "CatalogEntry")
        .def_property_readonly("construction",
                               [](const CatalogEntry& e) { return std::string(to_string(e.construction)); })
        .def_readonly("q", &CatalogEntry::q)
        .def_readonly("beta_log", &CatalogEntry::beta_log)
        .def_readonly("s", &CatalogEntry::s)
        .def_readonly("t", &CatalogEntry::t)
        .def("label", &CatalogEntry::label)
        .def("__repr__", &CatalogEntry::label);

    py::class_<FamilyCatalog>(m, "FamilyCatalog")
        .def_readonly("entries", &FamilyCatalog::entries)
        .def("__len__", [](const FamilyCatalog& c) { return c.entries.size(); });

    m.def(
        "enumerate_catalog",
        [](std::uint32_t max_q, bool additive, bool rs_latin, bool latin, bool extension_fields,
           bool exhaustive_beta) {
            return enumerate_catalog(max_q, {additive, rs_latin, latin, extension_fields, exhaustive_beta});
        },
        py::arg("max_q"), py::kw_only(), py::arg("additive") = true, py::arg("rs_latin") = true,
        py::arg("latin") = true, py::arg("extension_fields") = true, py::arg("exhaustive_beta") = false);

    py::class_<SelectionReport>(m, "SelectionReport")
        .def_readonly("m", &SelectionReport::m)
        .def_readonly("n", &SelectionReport::n)
        .def_readonly("chosen", &SelectionReport::chosen)
        .def_readonly("score", &SelectionReport::score)
        .def_property_readonly("rejected",
                               [](const SelectionReport& r) {
                                   py::list out;
                                   for (const auto& rej : r.rejected)
                                       out.append(py::make_tuple(rej.entry, rej.reason, rej.score));
                                   return out;
                               })
        .def("to_text", &SelectionReport::to_text)
        .def("to_key_value", &SelectionReport::to_key_value);

    m.def("select_base", &select_base, py::arg("m"), py::arg("n"), py::arg("catalog"));
    m.def(
        "build_measurement_matrix",
        [](std::uint64_t mm, std::uint64_t n, const FamilyCatalog& catalog) {
            auto r = build_measurement_matrix(mm, n, catalog);
            return py::make_tuple(std::move(r.matrix), std::move(r.selection));
        },
        py::arg("m"), py::arg("n"), py::arg("catalog"));

    m.def("gaussian_matrix", [](Index rows, Index cols, std::uint64_t seed) {
        Rng rng = matrix_stream(seed);
        return gaussian_matrix(rows, cols, rng).entries();
    }, py::arg("m"), py::arg("n"), py::arg("seed"));
    m.def(
        "omp",
        [](const Eigen::MatrixXd& a, const Eigen::VectorXd& y, Index k) { return omp(RealMatrix(a), y, k); },
        py::arg("a"), py::arg("y"), py::arg("k"));

    py::class_<SparsityRecord>(m, "SparsityRecord")
        .def_readonly("k", &SparsityRecord::k)
        .def_readonly("trials", &SparsityRecord::trials)
        .def_readonly("perfect", &SparsityRecord::perfect)
        .def_readonly("percent", &SparsityRecord::percent)
        .def_readonly("mean_rel_err", &SparsityRecord::mean_rel_err);

    py::class_<ExperimentResult>(m, "ExperimentResult")
        .def_readonly("matrix_id", &ExperimentResult::matrix_id)
        .def_readonly("m", &ExperimentResult::m)
        .def_readonly("n", &ExperimentResult::n)
        .def_readonly("seed", &ExperimentResult::seed)
        .def_readonly("threshold", &ExperimentResult::threshold)
        .def_readonly("records", &ExperimentResult::records)
        .def("to_csv", &ExperimentResult::to_csv, py::arg("with_header") = true);

    auto experiment = [](const RealMatrix& a, const std::vector<Index>& ks, std::uint64_t trials,
                         std::uint64_t seed, double threshold, unsigned threads, const std::string& id) {
        ExperimentOptions o;
        o.matrix_id = id;
        o.threshold = threshold;
        o.threads = threads;
        py::gil_scoped_release release;
        return run_experiment(a, ks, trials, seed, o);
    };
    m.def(
        "run_experiment",
        [experiment](const SparseBinaryMatrix& h, const std::vector<Index>& ks, std::uint64_t trials,
                     std::uint64_t seed, double threshold, unsigned threads, const std::string& id) {
            return experiment(binarize_to_real(h), ks, trials, seed, threshold, threads, id);
        },
        py::arg("a"), py::arg("k_list"), py::arg("trials"), py::arg("seed"),
        py::arg("threshold") = kPerfectRecoveryThreshold, py::arg("threads") = 0, py::arg("matrix_id") = "matrix");
    m.def(
        "run_experiment",
        [experiment](const Eigen::MatrixXd& a, const std::vector<Index>& ks, std::uint64_t trials,
                     std::uint64_t seed, double threshold, unsigned threads, const std::string& id) {
            return experiment(RealMatrix(a), ks, trials, seed, threshold, threads, id);
        },
        py::arg("a"), py::arg("k_list"), py::arg("trials"), py::arg("seed"),
        py::arg("threshold") = kPerfectRecoveryThreshold, py::arg("threads") = 0, py::arg("matrix_id") = "matrix");
}
