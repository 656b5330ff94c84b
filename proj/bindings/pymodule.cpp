#include "hptk/corpus.hpp"
#include "hptk/drivers.hpp"
#include "hptk/error.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

py::dict as_dict(const hptk::DriverResult& r) {
    py::dict d;
    d["exit_code"] = r.exit_code;
    d["certificate"] = r.certificate;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact-arithmetic homotopy transfer and perturbation engine";

    py::register_exception<hptk::Error>(m, "HptkError");

    m.def("corpus_names", &hptk::corpus_names, "Names of the shipped models");
    m.def("corpus_document", &hptk::corpus_document, py::arg("name"),
          "Document text of a shipped model");
    m.def(
        "validate", [](const std::string& text) { return as_dict(hptk::run_validate(text)); },
        py::arg("document"), "Run the structure validators; exit_code 0 means all laws pass");
    m.def(
        "cohomology", [](const std::string& text) { return as_dict(hptk::run_cohomology(text)); },
        py::arg("document"), "Betti numbers, representatives and the induced product");
    m.def(
        "transfer",
        [](const std::string& text, int arity, const std::string& mode,
           const std::string& splitting) {
            return as_dict(hptk::run_transfer(text, arity, mode, splitting));
        },
        py::arg("document"), py::arg("arity") = 4, py::arg("mode") = "ainfty",
        py::arg("splitting") = "auto", "Transferred structure with verification certificate");
    m.def(
        "deform",
        [](const std::string& text, int word_bound, int sym_bound, const std::string& initiator) {
            return as_dict(hptk::run_deform(text, word_bound, sym_bound, initiator));
        },
        py::arg("document"), py::arg("word_bound") = 4, py::arg("sym_bound") = 2,
        py::arg("initiator") = "aL", "Deformation pipeline certificate");
    m.def(
        "massey",
        [](const std::string& text, const std::string& x, const std::string& y,
           const std::string& z) { return as_dict(hptk::run_massey(text, x, y, z)); },
        py::arg("document"), py::arg("x"), py::arg("y"), py::arg("z"),
        "Triple product m3(x, y, z) on cohomology class labels");

#ifdef HPTK_VERSION
    m.attr("__version__") = HPTK_VERSION;
#else
    m.attr("__version__") = "0.1.0";
#endif
}
