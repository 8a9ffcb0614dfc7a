#include "ineq/report.hpp"

#include <cmath>

namespace ineq {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json to_json(const IdentityReport& r) {
    return Json{
        {"integral", number_or_null(r.integral)},
        {"integral_err", number_or_null(r.integral_err)},
        {"taylor_sum", number_or_null(r.taylor_sum)},
        {"remainder_integral", number_or_null(r.remainder_integral)},
        {"remainder_err", number_or_null(r.remainder_err)},
        {"remainder_sign", r.remainder_sign},
        {"residual", number_or_null(r.residual)},
        {"passed", r.passed},
    };
}

Json to_json(const ConvexityVerdict& v) {
    return Json{
        {"convex", v.convex},
        {"worst_violation", number_or_null(v.worst_violation)},
        {"grid_size", v.grid_size},
        {"tolerance", number_or_null(v.tolerance)},
    };
}

Json to_json(const BoundRequest& req, const Interval& iv) {
    Json j{
        {"family", to_string(req.family)},
        {"variant", to_string(req.variant)},
        {"n", req.n},
        {"form", req.form.kind() == RuleForm::Kind::PointX ? "point" : req.form.label()},
        {"x", nullptr},
        {"p", number_or_null(req.p)},
        {"q", number_or_null(req.q)},
    };
    if (req.form.kind() == RuleForm::Kind::PointX) j["x"] = req.form.anchor(iv);
    return j;
}

Json to_json(const BoundReport& r) {
    return Json{
        {"integral", number_or_null(r.integral)},
        {"taylor_sum", number_or_null(r.taylor_sum)},
        {"lhs", number_or_null(r.lhs)},
        {"lhs_err", number_or_null(r.lhs_err)},
        {"rhs", number_or_null(r.rhs)},
        {"slack", number_or_null(r.slack)},
        {"magnitudes", {{"at_a", number_or_null(r.magnitudes.at_a)}, {"at_b", number_or_null(r.magnitudes.at_b)}}},
        {"convexity", to_json(r.convexity)},
        {"valid", r.valid},
    };
}

Json to_json(const PropositionReport& r) {
    return Json{
        {"lhs", number_or_null(r.lhs)},
        {"rhs", number_or_null(r.rhs)},
        {"slack", number_or_null(r.slack)},
        {"convexity", to_json(r.convexity)},
        {"valid", r.valid},
    };
}

Json to_json(const CorpusEntry& e) {
    Json statuses = Json::array();
    for (const ConvexityStatus& s : e.convexity) statuses.push_back({{"n", s.n}, {"q", s.q}, {"convex", s.convex}});
    return Json{
        {"name", e.name},
        {"expression", e.expression},
        {"a", e.interval.a()},
        {"b", e.interval.b()},
        {"max_n", e.max_n},
        {"control", e.control},
        {"closed_form_integral", e.closed_form_integral ? Json(*e.closed_form_integral) : Json(nullptr)},
        {"convexity", std::move(statuses)},
    };
}

Json to_json(const SweepRecord& r) {
    const BoundRequest& q = r.request;
    const BoundReport& rep = r.report;
    const bool ok = r.error.empty();
    const bool point = q.form.kind() == RuleForm::Kind::PointX;
    auto val = [ok](double v) { return ok ? number_or_null(v) : Json(nullptr); };
    return Json{
        {"function", r.function},
        {"a", r.a},
        {"b", r.b},
        {"n", q.n},
        {"form", point ? "point" : q.form.label()},
        {"x", point ? Json(q.form.anchor(Interval(r.a, r.b))) : Json(nullptr)},
        {"family", to_string(q.family)},
        {"variant", to_string(q.variant)},
        {"p", number_or_null(q.p)},
        {"q", number_or_null(q.q)},
        {"integral", val(rep.integral)},
        {"taylor_sum", val(rep.taylor_sum)},
        {"lhs", val(rep.lhs)},
        {"lhs_err", val(rep.lhs_err)},
        {"rhs", val(rep.rhs)},
        {"slack", val(rep.slack)},
        {"mag_a", val(rep.magnitudes.at_a)},
        {"mag_b", val(rep.magnitudes.at_b)},
        {"convex", rep.convexity.convex},
        {"worst_violation", number_or_null(rep.convexity.worst_violation)},
        {"convexity_grid", rep.convexity.grid_size},
        {"valid", rep.valid},
        {"error", r.error},
    };
}

Json records_to_json(std::span<const SweepRecord> records) {
    Json out = Json::array();
    for (const SweepRecord& r : records) out.push_back(to_json(r));
    return out;
}

Json skips_to_json(std::span<const SweepSkip> skips) {
    Json out = Json::array();
    for (const SweepSkip& s : skips) {
        out.push_back({
            {"function", s.function},
            {"family", to_string(s.request.family)},
            {"n", s.request.n},
            {"p", number_or_null(s.request.p)},
            {"q", number_or_null(s.request.q)},
            {"reason", s.reason},
        });
    }
    return out;
}

Json best_to_json(std::span<const BestBound> best) {
    Json out = Json::array();
    for (const BestBound& b : best) {
        out.push_back({
            {"function", b.group.function},
            {"a", b.group.a},
            {"b", b.group.b},
            {"n", b.group.n},
            {"form", b.group.form},
            {"winner", b.winner ? to_json(*b.winner) : Json(nullptr)},
        });
    }
    return out;
}

Json findings_to_json(std::span<const ErrataFinding> findings) {
    Json out = Json::array();
    for (const ErrataFinding& f : findings) {
        Json input = to_json(f.request, Interval(f.a, f.b));
        input.erase("variant");
        Json entry{
            {"function", f.function},
            {"a", f.a},
            {"b", f.b},
        };
        entry.update(input);
        out.push_back({
            {"input", std::move(entry)},
            {"variant_values", {{"lhs", number_or_null(f.lhs)},
                                {"corrected", number_or_null(f.corrected_rhs)},
                                {"paper", number_or_null(f.paper_rhs)}}},
            {"valid_flags", {{"corrected", f.corrected_valid}, {"paper", f.paper_valid}}},
            {"ratio", number_or_null(f.ratio)},
        });
    }
    return out;
}

}  // namespace ineq
