#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "aesspmm/matrix.hpp"
#include "aesspmm/quantize.hpp"
#include "aesspmm/sampling.hpp"
#include "aesspmm/spmm.hpp"

namespace py = pybind11;
using namespace aes;

namespace {

CsrMatrix csr_from_arrays(std::size_t n_rows, std::size_t n_cols,
                          py::array_t<std::uint64_t> row_ptr,
                          py::array_t<std::uint32_t> col_ind,
                          py::array_t<float> val) {
    CsrMatrix m;
    m.n_rows = n_rows;
    m.n_cols = n_cols;
    auto rp = row_ptr.unchecked<1>();
    auto ci = col_ind.unchecked<1>();
    auto v = val.unchecked<1>();
    m.row_ptr.assign(rp.data(0), rp.data(0) + rp.shape(0));
    m.col_ind.assign(ci.data(0), ci.data(0) + ci.shape(0));
    m.val.assign(v.data(0), v.data(0) + v.shape(0));
    ValidationResult r = validate_csr(m);
    if (!r.ok()) throw py::value_error(r.message());
    return m;
}

DenseMatrix dense_from_array(py::array_t<float, py::array::c_style |
                                                    py::array::forcecast> a) {
    if (a.ndim() != 2) throw py::value_error("expected a 2-d array");
    DenseMatrix m(std::size_t(a.shape(0)), std::size_t(a.shape(1)));
    std::memcpy(m.data.data(), a.data(), m.data.size() * sizeof(float));
    return m;
}

py::array_t<float> dense_to_array(const DenseMatrix& m) {
    py::array_t<float> a({m.n_rows, m.n_cols});
    std::memcpy(a.mutable_data(), m.data.data(),
                m.data.size() * sizeof(float));
    return a;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "sampled SpMM core: CSR plans, kernels, scalar quantization";

    py::class_<CsrMatrix>(mod, "CsrMatrix")
        .def(py::init(&csr_from_arrays), py::arg("n_rows"), py::arg("n_cols"),
             py::arg("row_ptr"), py::arg("col_ind"), py::arg("val"))
        .def_readonly("n_rows", &CsrMatrix::n_rows)
        .def_readonly("n_cols", &CsrMatrix::n_cols)
        .def_property_readonly("nnz", &CsrMatrix::nnz);

    py::enum_<Strategy>(mod, "Strategy")
        .value("ADAPTIVE", Strategy::Adaptive)
        .value("AFS", Strategy::Afs)
        .value("SFS", Strategy::Sfs)
        .value("FULL", Strategy::Full);

    py::class_<StrategyParams>(mod, "StrategyParams")
        .def_readonly("chunk_len", &StrategyParams::chunk_len)
        .def_readonly("sample_cnt", &StrategyParams::sample_cnt);

    py::class_<RowSamplePlan>(mod, "RowSamplePlan")
        .def_readonly("row_id", &RowSamplePlan::row_id)
        .def_readonly("params", &RowSamplePlan::params)
        .def_readonly("starts", &RowSamplePlan::starts)
        .def_property_readonly("slots", &RowSamplePlan::slots);

    py::class_<SamplePlanSet>(mod, "SamplePlanSet")
        .def_readonly("width", &SamplePlanSet::width)
        .def_readonly("strategy", &SamplePlanSet::strategy)
        .def_readonly("plans", &SamplePlanSet::plans);

    py::class_<QuantParams>(mod, "QuantParams")
        .def(py::init([](float lo, float hi, std::uint32_t bits) {
                 return QuantParams{lo, hi, bits};
             }),
             py::arg("x_min"), py::arg("x_max"), py::arg("bits") = 8)
        .def_readonly("x_min", &QuantParams::x_min)
        .def_readonly("x_max", &QuantParams::x_max)
        .def_readonly("bits", &QuantParams::bits);

    py::class_<QuantizedFeatures>(mod, "QuantizedFeatures")
        .def_readonly("n_rows", &QuantizedFeatures::n_rows)
        .def_readonly("n_cols", &QuantizedFeatures::n_cols)
        .def_readonly("params", &QuantizedFeatures::params)
        .def_property_readonly("codes", [](const QuantizedFeatures& qf) {
            py::array_t<std::uint16_t> a({qf.n_rows, qf.n_cols});
            std::memcpy(a.mutable_data(), qf.codes.data(),
                        qf.codes.size() * sizeof(std::uint16_t));
            return a;
        });

    mod.def("select_strategy", &select_strategy, py::arg("row_nnz"),
            py::arg("width"));
    mod.def("hash_start", &hash_start, py::arg("current_ind"),
            py::arg("row_nnz"), py::arg("chunk_len"));
    mod.def("build_plan_set", &build_plan_set, py::arg("matrix"),
            py::arg("width"), py::arg("strategy") = Strategy::Adaptive);
    mod.def(
        "sampling_rate",
        [](const SamplePlanSet& plans, const CsrMatrix& m) {
            SamplingRates r = sampling_rate(plans, row_stats(m));
            return py::make_tuple(r.aggregate, r.unique_coverage);
        },
        py::arg("plans"), py::arg("matrix"),
        "aggregate (slot rate, unique coverage) of a plan set");

    mod.def(
        "spmm_exact",
        [](const CsrMatrix& a, py::array_t<float> b, unsigned threads) {
            return dense_to_array(spmm_exact(a, dense_from_array(b), threads));
        },
        py::arg("a"), py::arg("b"), py::arg("n_threads") = 0);
    mod.def(
        "spmm_sampled",
        [](const CsrMatrix& a, py::array_t<float> b, const SamplePlanSet& p,
           unsigned threads) {
            return dense_to_array(
                spmm_sampled(a, dense_from_array(b), p, threads));
        },
        py::arg("a"), py::arg("b"), py::arg("plans"), py::arg("n_threads") = 0);

    mod.def(
        "quantize",
        [](py::array_t<float> x, std::uint32_t bits) {
            DenseMatrix d = dense_from_array(x);
            return quantize(d, fit_params(d, bits));
        },
        py::arg("x"), py::arg("bits") = 8);
    mod.def(
        "dequantize",
        [](const QuantizedFeatures& qf) { return dense_to_array(dequantize(qf)); },
        py::arg("qf"));
}
