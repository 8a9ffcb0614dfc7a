#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ineq/analysis.hpp"
#include "ineq/bounds.hpp"
#include "ineq/corpus.hpp"
#include "ineq/error.hpp"
#include "ineq/expr.hpp"
#include "ineq/identity.hpp"
#include "ineq/means.hpp"
#include "ineq/report.hpp"

namespace py = pybind11;
using namespace ineq;

// Structured results cross the boundary as JSON text; the Python package decodes them.

namespace {

RuleForm make_form(std::optional<double> x, const std::string& rule) {
    if (rule == "point") {
        if (!x) throw Error(ErrorCode::ParamOutOfDomain, "rule 'point' needs x");
        return RuleForm::point(*x);
    }
    if (x) throw Error(ErrorCode::ParamOutOfDomain, "x is only meaningful with rule 'point'");
    if (rule == "midpoint") return RuleForm::midpoint();
    if (rule == "trapezoid") return RuleForm::trapezoid();
    throw Error(ErrorCode::ParamOutOfDomain, "unknown rule '" + rule + "'");
}

Family family_of(const std::string& s) {
    if (auto f = parse_family(s)) return *f;
    throw Error(ErrorCode::ParamOutOfDomain, "unknown family '" + s + "'");
}

Variant variant_of(const std::string& s) {
    if (auto v = parse_variant(s)) return *v;
    throw Error(ErrorCode::ParamOutOfDomain, "unknown variant '" + s + "'");
}

std::string verify(const std::string& expr, double a, double b, int n, std::optional<double> x,
                   const std::string& rule, double tol) {
    const auto fn = ExprFunction::parse(expr);
    const Interval iv(a, b);
    const RuleForm form = make_form(x, rule);
    form.validate(iv);
    return to_json(verify_identity(fn, n, iv, form, tol)).dump();
}

std::string bound(const std::string& family, const std::string& expr, double a, double b, int n,
                  std::optional<double> x, const std::string& rule, std::optional<double> p,
                  std::optional<double> q, const std::string& variant, double tol) {
    const auto fn = ExprFunction::parse(expr);
    const Interval iv(a, b);
    BoundRequest req;
    req.family = family_of(family);
    req.n = n;
    req.form = make_form(x, rule);
    if (p) req.p = *p;
    if (q) req.q = *q;
    req.variant = variant_of(variant);
    validate(req);
    req.form.validate(iv);
    EvalOptions opts;
    opts.numeric_tol = tol;
    Json out = Json::object();
    out["function"] = fn.source();
    out["request"] = to_json(req, iv);
    out["report"] = to_json(evaluate(req, fn, iv, opts));
    return out.dump();
}

SweepResult run_sweep(const std::string& expr, double a, double b, const std::vector<int>& ns, int x_grid,
                      const std::vector<std::string>& families, const std::vector<double>& qs,
                      const std::vector<double>& ps, const std::vector<std::string>& variants, bool midpoint,
                      bool trapezoid, unsigned threads) {
    SweepSpec spec(ExprFunction::parse(expr), Interval(a, b));
    spec.n_values = ns;
    spec.forms = SweepSpec::uniform_points(spec.iv, x_grid);
    if (midpoint) spec.forms.push_back(RuleForm::midpoint());
    if (trapezoid) spec.forms.push_back(RuleForm::trapezoid());
    for (const auto& f : families) spec.families.push_back(family_of(f));
    spec.q_values = qs;
    spec.p_values = ps;
    spec.variants.clear();
    for (const auto& v : variants) spec.variants.push_back(variant_of(v));
    py::gil_scoped_release release;
    return sweep(spec, threads);
}

const std::vector<std::string> kAllFamilies = {"classic", "convex-direct", "holder", "alt-holder", "power-mean"};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Ostrowski-type bounds for n-times differentiable functions";

    static py::exception<Error> error(m, "IneqError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(std::string(to_string(e.code())) + ": " + e.what());
            py::setattr(exc, "code", py::str(std::string(to_string(e.code()))));
            PyErr_SetObject(error.ptr(), exc.ptr());
        }
    });

    py::class_<ExprFunction>(m, "Expr")
        .def(py::init(&ExprFunction::parse), py::arg("text"))
        .def_property_readonly("source", &ExprFunction::source)
        .def("__call__", &ExprFunction::operator(), py::arg("t"))
        .def("deriv", &ExprFunction::deriv, py::arg("t"), py::arg("k"))
        .def(
            "taylor", [](const ExprFunction& f, double t0, int order) { return f.taylor(t0, order).coeffs; },
            py::arg("t0"), py::arg("order"))
        .def("__repr__", [](const ExprFunction& f) { return "Expr('" + f.source() + "')"; });

    m.def("verify_identity", &verify, py::arg("expr"), py::arg("a"), py::arg("b"), py::arg("n"),
          py::arg("x") = py::none(), py::arg("rule") = "point", py::arg("tol") = 1e-9);

    m.def("bound", &bound, py::arg("family"), py::arg("expr"), py::arg("a"), py::arg("b"), py::arg("n"),
          py::arg("x") = py::none(), py::arg("rule") = "point", py::arg("p") = py::none(),
          py::arg("q") = py::none(), py::arg("variant") = "corrected", py::arg("tol") = 1e-10);

    m.def(
        "sweep",
        [](const std::string& expr, double a, double b, const std::vector<int>& ns, int x_grid,
           const std::vector<std::string>& families, const std::vector<double>& qs, const std::vector<double>& ps,
           const std::vector<std::string>& variants, bool midpoint, bool trapezoid, unsigned threads) {
            const SweepResult r = run_sweep(expr, a, b, ns, x_grid, families, qs, ps, variants, midpoint,
                                            trapezoid, threads);
            Json out = Json::object();
            out["records"] = records_to_json(r.records);
            out["skips"] = skips_to_json(r.skips);
            out["best"] = best_to_json(best_bound(r.records));
            out["errata"] = findings_to_json(errata_report(r.records));
            return out.dump();
        },
        py::arg("expr"), py::arg("a"), py::arg("b"), py::arg("n") = std::vector<int>{1, 2, 3, 4},
        py::arg("x_grid") = 9, py::arg("families") = kAllFamilies,
        py::arg("q") = std::vector<double>{1, 1.5, 2, 3}, py::arg("p") = std::vector<double>{1.5, 2, 4},
        py::arg("variants") = std::vector<std::string>{"corrected"}, py::arg("midpoint") = false,
        py::arg("trapezoid") = false, py::arg("threads") = 1);

    m.def(
        "sweep_csv",
        [](const std::string& expr, double a, double b, const std::vector<int>& ns, int x_grid,
           const std::vector<std::string>& families, const std::vector<double>& qs, const std::vector<double>& ps,
           const std::vector<std::string>& variants, unsigned threads) {
            const SweepResult r = run_sweep(expr, a, b, ns, x_grid, families, qs, ps, variants, false, false,
                                            threads);
            std::ostringstream os;
            write_csv(os, r.records);
            return os.str();
        },
        py::arg("expr"), py::arg("a"), py::arg("b"), py::arg("n") = std::vector<int>{1, 2, 3, 4},
        py::arg("x_grid") = 9, py::arg("families") = kAllFamilies,
        py::arg("q") = std::vector<double>{1, 1.5, 2, 3}, py::arg("p") = std::vector<double>{1.5, 2, 4},
        py::arg("variants") = std::vector<std::string>{"corrected"}, py::arg("threads") = 1);

    m.def("arithmetic_mean", [](double x, double y) { return arithmetic_mean(MeanPair(x, y)); });
    m.def("logarithmic_mean", [](double x, double y) { return logarithmic_mean(MeanPair(x, y)); });
    m.def(
        "generalized_log_mean_pow",
        [](double x, double y, int n) { return generalized_log_mean_pow(MeanPair(x, y), n); }, py::arg("alpha"),
        py::arg("beta"), py::arg("n"));
    m.def(
        "proposition",
        [](int which, double alpha, double beta, int n, double x, double q, const std::string& variant) {
            return to_json(evaluate_proposition(which, MeanPair(alpha, beta), n, x, q, variant_of(variant))).dump();
        },
        py::arg("which"), py::arg("alpha"), py::arg("beta"), py::arg("n"), py::arg("x"), py::arg("q") = 1.0,
        py::arg("variant") = "corrected");

    m.def("corpus", [] {
        Json out = Json::array();
        for (const auto& e : corpus()) out.push_back(to_json(e));
        return out.dump();
    });
    m.def("load_corpus", [](const std::string& path) {
        Json out = Json::array();
        for (const auto& e : load_corpus_file(path)) out.push_back(to_json(e));
        return out.dump();
    });
}
