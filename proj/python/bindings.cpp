#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "strata/data.hpp"
#include "strata/ideal.hpp"
#include "strata/linear.hpp"
#include "strata/verify.hpp"

namespace py = pybind11;
using namespace strata;

namespace {

std::vector<std::string> coefficients(const DegreeScalar& s) {
    std::vector<std::string> out;
    for (auto& c : s.coeffs()) out.push_back(c.get_str());
    return out;
}

py::dict verify(const std::string& suite, int jobs) {
    VerifyReport rep;
    {
        py::gil_scoped_release release;
        rep = run_verify(Engine::instance(), suite, jobs);
    }
    py::list cases;
    for (auto& c : rep.cases) {
        py::dict item;
        item["suite"] = c.suite;
        item["name"] = c.name;
        item["passed"] = c.passed;
        item["expected"] = c.expected;
        item["actual"] = c.actual;
        item["detail"] = c.detail;
        item["known_deviation"] = c.known_deviation;
        cases.append(item);
    }
    py::dict out;
    out["ok"] = rep.ok();
    out["failures"] = rep.failures();
    out["unexplained_failures"] = rep.unexplained_failures();
    out["cases"] = cases;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    py::register_exception<UnknownType>(m, "UnknownType", PyExc_KeyError);
    py::register_exception<DegenError>(m, "DegenError", PyExc_RuntimeError);
    py::register_exception<EliminationError>(m, "EliminationError", PyExc_RuntimeError);

    m.def("types", [] {
        std::vector<std::string> names;
        for (auto& e : Engine::instance().types().entries()) names.push_back(e.name);
        return names;
    });
    m.def("normalize_type_name", &normalize_type_name);

    m.def(
        "degree",
        [](const std::string& type, std::optional<int> d) { return Engine::instance().degree(type, d).pretty(); },
        py::arg("type"), py::arg("d") = py::none(), "Degree of the stratum as a factored polynomial in d.");
    m.def(
        "degree_coefficients",
        [](const std::string& type, std::optional<int> d) {
            std::vector<py::int_> out;
            for (auto& c : coefficients(Engine::instance().degree(type, d)))
                out.push_back(py::int_(py::str(c)));
            return out;
        },
        py::arg("type"), py::arg("d") = py::none(), "Coefficients of d^0, d^1, ... as Python ints.");
    m.def(
        "multidegree",
        [](const std::string& type, std::optional<int> d) { return Engine::instance().multidegree(type, d).str(); },
        py::arg("type"), py::arg("d") = py::none());
    m.def(
        "multidegree_json",
        [](const std::string& type, std::optional<int> d) { return to_json(Engine::instance().multidegree(type, d)); },
        py::arg("type"), py::arg("d") = py::none());
    m.def("universality_bounds", [](const std::string& type) {
        auto u = universality_bounds(Engine::instance().describe(type));
        return std::make_pair(u.min_d_via_determinacy, u.min_d_via_codim);
    });
    m.def(
        "ideal",
        [](const std::string& type, std::optional<int> jet_order, std::optional<int> curve_degree,
           const std::string& saturate_by, int degree_guard) {
            StratumIdealOptions opt{jet_order, curve_degree, degree_guard};
            RatIdeal id;
            {
                py::gil_scoped_release release;
                id = stratum_ideal(Engine::instance().describe(type), opt);
                if (!saturate_by.empty()) id = saturate(id, Poly::var(saturate_by), degree_guard);
            }
            std::vector<std::string> gens;
            for (auto& g : id.generators) gens.push_back(g.str());
            return gens;
        },
        py::arg("type"), py::arg("jet_order") = py::none(), py::arg("curve_degree") = py::none(),
        py::arg("saturate_by") = "", py::arg("degree_guard") = 20);
    m.def("verify", &verify, py::arg("suite") = "all", py::arg("jobs") = 1);
}
