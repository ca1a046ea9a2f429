#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "struvint/report.hpp"
#include "struvint/struvint.hpp"

namespace py = pybind11;
using namespace struvint;

namespace {

SeriesControl series_control(double rel_tol, unsigned max_terms) {
    SeriesControl ctl;
    ctl.rel_tol = rel_tol;
    ctl.max_terms = max_terms;
    return ctl;
}

std::vector<WeightedParam> weighted(const std::vector<std::pair<Complex, double>>& pairs) {
    std::vector<WeightedParam> out;
    for (const auto& [v, w] : pairs) out.push_back({v, w});
    return out;
}

std::string report_json(const RunReport& report) {
    std::ostringstream os;
    write_json(os, report_to_json(report));
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_struvint, m) {
    m.doc() = "Generalized Struve, Fox-Wright and Lauricella series; integral identity checks";
    m.attr("__version__") = kVersion;

    auto base = py::register_exception<Error>(m, "StruvintError", PyExc_RuntimeError);
    auto domain = py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<DivergenceError>(m, "DivergenceError", domain.ptr());
    py::register_exception<PoleError>(m, "PoleError", domain.ptr());
    py::register_exception<RangeError>(m, "RangeError", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
    py::register_exception<NonIntegrableError>(m, "NonIntegrableError", base.ptr());

    py::class_<SeriesResult>(m, "SeriesResult")
        .def_readonly("value", &SeriesResult::value)
        .def_readonly("terms", &SeriesResult::terms)
        .def_readonly("tail_estimate", &SeriesResult::tail_estimate)
        .def("__repr__", [](const SeriesResult& r) {
            return "SeriesResult(value=" + format_value(r.value) +
                   ", terms=" + std::to_string(r.terms) + ")";
        });

    py::class_<LauricellaResult>(m, "LauricellaResult")
        .def_readonly("value", &LauricellaResult::value)
        .def_readonly("shells", &LauricellaResult::shells)
        .def_readonly("terms", &LauricellaResult::terms)
        .def_readonly("tail_estimate", &LauricellaResult::tail_estimate);

    py::class_<QuadResult>(m, "QuadResult")
        .def_readonly("value", &QuadResult::value)
        .def_readonly("error_estimate", &QuadResult::error_estimate)
        .def_readonly("panels_used", &QuadResult::panels_used)
        .def_readonly("cutoff_theta", &QuadResult::cutoff_theta)
        .def_readonly("evaluations", &QuadResult::evaluations)
        .def_readonly("converged", &QuadResult::converged)
        .def_readonly("status", &QuadResult::status);

    m.def("gamma", py::overload_cast<const Complex&>(&struvint::gamma), py::arg("z"));
    m.def("log_gamma", &struvint::log_gamma, py::arg("z"));
    m.def("pochhammer", py::overload_cast<const Complex&, double>(&pochhammer), py::arg("x"),
          py::arg("nu"));

    const double rt = SeriesControl{}.rel_tol;
    const unsigned mt = SeriesControl{}.max_terms;
    m.def(
        "struve_h",
        [](Complex nu, double z, double rel_tol, unsigned max_terms) {
            return struve_h_paper(nu, z, series_control(rel_tol, max_terms));
        },
        py::arg("nu"), py::arg("z"), py::arg("rel_tol") = rt, py::arg("max_terms") = mt);
    m.def(
        "struve_l",
        [](Complex nu, double z, double rel_tol, unsigned max_terms) {
            return struve_l_paper(nu, z, series_control(rel_tol, max_terms));
        },
        py::arg("nu"), py::arg("z"), py::arg("rel_tol") = rt, py::arg("max_terms") = mt);
    m.def(
        "struve_w",
        [](Complex p, Complex b, Complex c, double z, int derivative, double rel_tol,
           unsigned max_terms) {
            const StruveParams sp{p, b, c};
            const auto ctl = series_control(rel_tol, max_terms);
            return derivative == 0 ? struve_w(sp, z, ctl)
                                   : struve_w_derivative(sp, z, derivative, ctl);
        },
        py::arg("p"), py::arg("b"), py::arg("c"), py::arg("z"), py::arg("derivative") = 0,
        py::arg("rel_tol") = rt, py::arg("max_terms") = mt);
    m.def(
        "fox_wright",
        [](const std::vector<std::pair<Complex, double>>& upper,
           const std::vector<std::pair<Complex, double>>& lower, Complex z, double rel_tol,
           unsigned max_terms) {
            return fox_wright({weighted(upper), weighted(lower)}, z,
                              series_control(rel_tol, max_terms));
        },
        py::arg("upper"), py::arg("lower"), py::arg("z"), py::arg("rel_tol") = rt,
        py::arg("max_terms") = mt);
    m.def(
        "pfq",
        [](const std::vector<Complex>& upper, const std::vector<Complex>& lower, Complex z,
           double rel_tol, unsigned max_terms) {
            return pfq(upper, lower, z, series_control(rel_tol, max_terms));
        },
        py::arg("upper"), py::arg("lower"), py::arg("z"), py::arg("rel_tol") = rt,
        py::arg("max_terms") = mt);
    m.def(
        "lauricella",
        [](const std::vector<std::pair<Complex, std::vector<double>>>& global_upper,
           const std::vector<std::pair<Complex, std::vector<double>>>& global_lower,
           const std::vector<std::vector<std::pair<Complex, double>>>& per_var_upper,
           const std::vector<std::vector<std::pair<Complex, double>>>& per_var_lower,
           const std::vector<Complex>& z, double rel_tol, unsigned max_shells) {
            LauricellaSpec spec;
            spec.n = z.size();
            for (const auto& [v, w] : global_upper) spec.global_upper.push_back({v, w});
            for (const auto& [v, w] : global_lower) spec.global_lower.push_back({v, w});
            for (const auto& block : per_var_upper) spec.per_var_upper.push_back(weighted(block));
            for (const auto& block : per_var_lower) spec.per_var_lower.push_back(weighted(block));
            SeriesControl ctl;
            ctl.rel_tol = rel_tol;
            ctl.max_shells = max_shells;
            return lauricella_eval(spec, z, ctl);
        },
        py::arg("global_upper"), py::arg("global_lower"), py::arg("per_var_upper"),
        py::arg("per_var_lower"), py::arg("z"), py::arg("rel_tol") = rt,
        py::arg("max_shells") = SeriesControl{}.max_shells);

    m.def("oberhettinger", &oberhettinger_closed_form, py::arg("a"), py::arg("mu"),
          py::arg("lam"));
    m.def(
        "integrate_kernel",
        [](const std::function<Complex(double)>& g, double a, Complex mu, Complex lam,
           double rel_tol, unsigned max_panels) {
            QuadControl ctl;
            ctl.rel_tol = rel_tol;
            ctl.max_panels = max_panels;
            return integrate_kernel(g, a, mu, lam, ctl);
        },
        py::arg("g"), py::arg("a"), py::arg("mu"), py::arg("lam"),
        py::arg("rel_tol") = QuadControl{}.rel_tol,
        py::arg("max_panels") = QuadControl{}.max_panels);

    py::class_<IntegralCase>(m, "IntegralCase")
        .def(py::init([](const std::string& variant, double a, Complex mu, Complex lam,
                         Complex b, Complex c, std::vector<Complex> p, std::vector<double> y) {
                 IntegralCase k;
                 k.variant = variant_from_string(variant);
                 k.a = a;
                 k.mu = mu;
                 k.lambda = lam;
                 k.b = b;
                 k.c = c;
                 k.p = std::move(p);
                 k.y = std::move(y);
                 return k;
             }),
             py::arg("variant"), py::arg("a"), py::arg("mu"), py::arg("lam"), py::arg("b"),
             py::arg("c"), py::arg("p"), py::arg("y"))
        .def_property_readonly("variant", [](const IntegralCase& k) { return to_string(k.variant); })
        .def_readonly("a", &IntegralCase::a)
        .def_readonly("mu", &IntegralCase::mu)
        .def_readonly("lam", &IntegralCase::lambda)
        .def_readonly("b", &IntegralCase::b)
        .def_readonly("c", &IntegralCase::c)
        .def_readonly("p", &IntegralCase::p)
        .def_readonly("y", &IntegralCase::y)
        .def_property_readonly("n", &IntegralCase::n)
        .def("validate", &IntegralCase::validate);

    py::class_<VerificationReport>(m, "VerificationReport")
        .def_readonly("lhs", &VerificationReport::lhs)
        .def_readonly("rhs", &VerificationReport::rhs)
        .def_readonly("prefactor", &VerificationReport::prefactor)
        .def_readonly("quadrature", &VerificationReport::quadrature)
        .def_readonly("series", &VerificationReport::series)
        .def_readonly("abs_err", &VerificationReport::abs_err)
        .def_readonly("rel_err", &VerificationReport::rel_err)
        .def_readonly("tolerance", &VerificationReport::tolerance)
        .def_readonly("passed", &VerificationReport::pass)
        .def_readonly("reason", &VerificationReport::reason)
        .def_readonly("wall_seconds", &VerificationReport::wall_seconds);

    m.def("prefactor", &prefactor, py::arg("case"));
    m.def(
        "rhs_corollary",
        [](const IntegralCase& k, int which) { return rhs_corollary(k, which); },
        py::arg("case"), py::arg("which"));
    m.def(
        "verify_case",
        [](const IntegralCase& k, double tol, double quad_rel_tol) {
            QuadControl q;
            q.rel_tol = quad_rel_tol;
            py::gil_scoped_release release;
            return verify_case(k, q, {}, tol);
        },
        py::arg("case"), py::arg("tol") = 1e-6, py::arg("quad_rel_tol") = QuadControl{}.rel_tol);
    m.def(
        "verify_file_json",
        [](const std::string& path, unsigned jobs) {
            const CaseFile file = load_case_file(path);
            RunSettings settings;
            settings.jobs = jobs;
            RunReport report;
            {
                py::gil_scoped_release release;
                report = run_cases(file, apply_controls(settings, file.controls));
            }
            return report_json(report);
        },
        py::arg("path"), py::arg("jobs") = 1);
    m.def("parse_complex", &parse_complex, py::arg("text"));
    m.def("format_value", py::overload_cast<const Complex&>(&format_value), py::arg("z"));
}
