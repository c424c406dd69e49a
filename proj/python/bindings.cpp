#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "calabikit/calabi.hpp"
#include "calabikit/geometry.hpp"
#include "calabikit/immersions.hpp"
#include "calabikit/reports.hpp"
#include "calabikit/surfaces.hpp"

namespace py = pybind11;
using namespace calabikit;

namespace {

CVec to_point(const std::vector<Complex>& values) {
    CVec z(static_cast<Eigen::Index>(values.size()));
    for (size_t i = 0; i < values.size(); ++i) z(static_cast<Eigen::Index>(i)) = values[i];
    return z;
}

MultiIndex to_index(const std::vector<int>& e) { return MultiIndex(e); }

RunConfig config_from_kwargs(const std::string& surface, const std::string& deck, int samples, uint64_t seed,
                             double tol, int degree, int jmax) {
    RunConfig c;
    c.surface = surface;
    c.deck = deck;
    c.samples = samples;
    c.seed = seed;
    c.tol = tol;
    c.degree = degree;
    c.jmax = jmax;
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "verification toolkit for isometric immersions into Hopf manifolds";

    py::class_<BiSeries>(m, "BiSeries")
        .def(py::init<int, int>(), py::arg("nvars"), py::arg("max_bidegree"))
        .def_static("constant", &BiSeries::constant, py::arg("nvars"), py::arg("max_bidegree"), py::arg("value"))
        .def_static("variable", &BiSeries::variable, py::arg("nvars"), py::arg("max_bidegree"), py::arg("var"))
        .def_static("conj_variable", &BiSeries::conj_variable)
        .def_static("abs2_variable", &BiSeries::abs2_variable, py::arg("nvars"), py::arg("max_bidegree"),
                    py::arg("var"))
        .def_property_readonly("nvars", &BiSeries::nvars)
        .def_property_readonly("max_bidegree", &BiSeries::max_bidegree)
        .def_property_readonly("real_valued", &BiSeries::real_valued)
        .def("coeff", [](const BiSeries& s, const std::vector<int>& j,
                         const std::vector<int>& k) { return s.coeff(to_index(j), to_index(k)); })
        .def("set_coeff", [](BiSeries& s, const std::vector<int>& j, const std::vector<int>& k,
                             Complex v) { s.set_coeff(to_index(j), to_index(k), v); })
        .def("mark_real_valued", [](BiSeries& s) { s.mark_real_valued(); })
        .def("is_hermitian", &BiSeries::is_hermitian, py::arg("tol") = 0.0)
        .def("pure_part_removed", &BiSeries::pure_part_removed)
        .def("truncated", &BiSeries::truncated)
        .def("evaluate", [](const BiSeries& s, const std::vector<Complex>& z) { return s.evaluate(to_point(z)); })
        .def("evaluate_polarized", [](const BiSeries& s, const std::vector<Complex>& u,
                                      const std::vector<Complex>& v) {
            return s.evaluate_polarized(to_point(u), to_point(v));
        })
        .def("hessian", [](const BiSeries& s, const std::vector<Complex>& z) { return s.hessian(to_point(z)); })
        .def("to_json", [](const BiSeries& s) { return s.to_json().dump(); })
        .def("__add__", [](const BiSeries& a, const BiSeries& b) { return a + b; })
        .def("__sub__", [](const BiSeries& a, const BiSeries& b) { return a - b; })
        .def("__mul__", [](const BiSeries& a, const BiSeries& b) { return a * b; })
        .def("__rmul__", [](const BiSeries& a, Complex c) { return c * a; })
        .def("exp", [](const BiSeries& a) { return exp(a); })
        .def("pow", [](const BiSeries& a, double r) { return pow(a, r); });

    m.def("diastasis_from_potential", &diastasis_from_potential, py::arg("potential"));

    m.def(
        "calabi_matrix",
        [](const BiSeries& d0) {
            const CalabiMatrix matrix = calabi_matrix(d0);
            std::vector<std::string> labels;
            for (const MultiIndex& l : matrix.labels) labels.push_back(l.to_string());
            return py::make_tuple(labels, matrix.entries);
        },
        py::arg("diastasis"));

    m.def(
        "resolvability",
        [](const BiSeries& d0, double tol) {
            const CalabiMatrix matrix = calabi_matrix(d0);
            const ResolvabilityReport report = resolvability(matrix, tol);
            py::dict out;
            out["psd"] = report.psd;
            out["rank"] = report.rank;
            out["min_eigenvalue"] = report.min_eigenvalue;
            out["tolerance"] = report.tolerance;
            if (report.witness_index) out["witness_index"] = report.witness_index->to_string();
            return out;
        },
        py::arg("diastasis"), py::arg("tol") = 1e-9);

    m.def(
        "go_potential",
        [](double a, double b, Complex z1, Complex z2) {
            return go_potential(GOParams::from_exponents(a, b), make_point({z1, z2}));
        },
        py::arg("a"), py::arg("b"), py::arg("z1"), py::arg("z2"));
    m.def(
        "go_derivative_check",
        [](double a, double b, Complex s, int j) {
            const GODerivativeCheck c = go_derivative_check(GOParams::from_exponents(a, b), s, j);
            return py::make_tuple(c.closed_form, c.finite_difference);
        },
        py::arg("a"), py::arg("b"), py::arg("s"), py::arg("j"));
    m.def("go_negative_witness", &go_negative_witness, py::arg("a"), py::arg("b"), py::arg("jmax") = 40);
    m.def("go_eigenvalue_product", &go_eigenvalue_product, py::arg("a"), py::arg("b"), py::arg("j"));

    m.def(
        "character_rank",
        [](const std::vector<double>& factors, int bound) {
            const CharacterRankResult r = character_rank(factors, bound);
            py::dict out;
            out["rank"] = r.rank;
            out["heuristic"] = r.heuristic;
            out["label"] = r.label;
            return out;
        },
        py::arg("factors"), py::arg("denominator_bound") = 50);

    py::class_<Surface>(m, "Surface")
        .def_property_readonly("name", [](const Surface& s) { return s.name; })
        .def_property_readonly("notes", [](const Surface& s) { return s.notes; })
        .def_property_readonly("deck_names",
                               [](const Surface& s) {
                                   std::vector<std::string> names;
                                   for (const DeckMap& d : s.deck) names.push_back(d.name);
                                   return names;
                               })
        .def("potential",
             [](const Surface& s, const std::vector<Complex>& z) { return s.covering_potential.evaluate(to_point(z)); })
        .def("covering_metric",
             [](const Surface& s, const std::vector<Complex>& z) { return s.covering_metric.coeff(to_point(z)); })
        .def("lck_residual",
             [](const Surface& s, const std::vector<Complex>& z) { return lck_residual(s.lck_metric, to_point(z)); })
        .def("norm_squared",
             [](const Surface& s, const std::vector<Complex>& z) {
                 if (!s.immersion) throw std::invalid_argument("no covering immersion on record");
                 const ValueWithError v = norm_squared(*s.immersion, to_point(z));
                 return py::make_tuple(v.value, v.error);
             })
        .def("homothety", [](const Surface& s, const std::string& deck, int nsamples, uint64_t seed) {
            const std::optional<DeckMap> d = s.resolve_deck(deck, false);
            if (!d) throw std::invalid_argument("unknown deck selector");
            const std::vector<CVec> samples = surface_samples(s, nsamples, seed, false, &*d);
            const HomothetyResult h = homothety_factor(*d, s.covering_metric, samples);
            py::dict out;
            out["factor"] = h.factor;
            out["spread"] = h.spread;
            out["homothetic"] = h.homothetic;
            return out;
        }, py::arg("deck") = "", py::arg("samples") = 30, py::arg("seed") = 1);

    m.def("build_surface", [](const std::string& selector, int degree) {
        return build_surface(SurfaceSpec::parse(selector), degree);
    }, py::arg("selector"), py::arg("degree") = 6);

    const auto bind_command = [&m](const char* name, nlohmann::json (*fn)(const RunConfig&)) {
        m.def(
            name,
            [fn](const std::string& surface, const std::string& deck, int samples, uint64_t seed, double tol,
                 int degree, int jmax) {
                return fn(config_from_kwargs(surface, deck, samples, seed, tol, degree, jmax)).dump();
            },
            py::arg("surface"), py::arg("deck") = "", py::arg("samples") = 50, py::arg("seed") = 1,
            py::arg("tol") = 0.0, py::arg("d") = 6, py::arg("jmax") = 40);
    };
    bind_command("resolvability_report_json", &cmd_resolvability);
    bind_command("verify_report_json", &cmd_verify);
    bind_command("descent_report_json", &cmd_descent);
    bind_command("character_report_json", &cmd_character);
    bind_command("lck_report_json", &cmd_lck);
    m.def(
        "witness_report_json",
        [](double alpha_abs, double beta_abs, int jmax) {
            RunConfig c;
            c.jmax = jmax;
            return cmd_witness(alpha_abs, beta_abs, c).dump();
        },
        py::arg("alpha_abs"), py::arg("beta_abs"), py::arg("jmax") = 40);
}
