#include "ineq/means.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ineq/error.hpp"

namespace ineq {

namespace {

void require_nonzero_order(int n) {
    if (n == 0) throw Error(ErrorCode::UnsupportedOrder, "order n must satisfy |n| >= 1");
}

void require_rule_point(const MeanPair& pair, double x) {
    if (!(pair.lo() <= x && x <= pair.hi())) {
        throw Error(ErrorCode::Domain, "x = " + std::to_string(x) + " outside [" + std::to_string(pair.lo()) +
                                           ", " + std::to_string(pair.hi()) + "]");
    }
}

}  // namespace

MeanPair::MeanPair(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !(alpha > 0.0) || !(beta > 0.0)) {
        throw Error(ErrorCode::Domain, "means need positive finite arguments, got (" + std::to_string(alpha) +
                                           ", " + std::to_string(beta) + ")");
    }
    if (alpha == beta) {
        throw Error(ErrorCode::EqualArguments, "means need distinct arguments, got " + std::to_string(alpha) +
                                                   " twice");
    }
}

double arithmetic_mean(const MeanPair& pair) { return 0.5 * (pair.alpha() + pair.beta()); }

double logarithmic_mean(const MeanPair& pair) {
    return (pair.alpha() - pair.beta()) / (std::log(pair.alpha()) - std::log(pair.beta()));
}

double logarithmic_mean(double alpha, double beta) { return logarithmic_mean(MeanPair(alpha, beta)); }

double generalized_log_mean_pow(const MeanPair& pair, int n) {
    require_nonzero_order(n);
    if (n == -1) {
        throw Error(ErrorCode::UnsupportedOrder, "n = -1 is the logarithmic mean; use logarithmic_mean");
    }
    const double a = pair.lo();
    const double b = pair.hi();
    return (std::pow(b, n + 1) - std::pow(a, n + 1)) / ((n + 1.0) * (b - a));
}

double proposition_lhs(const MeanPair& pair, int n, double x) {
    require_rule_point(pair, x);
    return std::abs(generalized_log_mean_pow(pair, n) - std::pow(x, n));
}

double proposition1_bound(const MeanPair& pair, int n, double x) {
    require_nonzero_order(n);
    require_rule_point(pair, x);
    const double a = pair.lo();
    const double b = pair.hi();
    const double u = x - a;
    const double v = b - x;
    const double left = (u * u * (3.0 * b - a - 2.0 * x) + 2.0 * v * v * v) * std::pow(a, n - 1) / 6.0;
    const double right = (v * v * (b - 3.0 * a + 2.0 * x) + 2.0 * u * u * u) * std::pow(b, n - 1) / 6.0;
    return std::abs(n) / ((b - a) * (b - a)) * (left + right);
}

double proposition2_bound(const MeanPair& pair, int n, double x, double q, Variant variant) {
    require_nonzero_order(n);
    require_rule_point(pair, x);
    if (!std::isfinite(q) || !(q >= 1.0)) {
        throw Error(ErrorCode::ParamOutOfDomain, "q must be finite and >= 1, got " + std::to_string(q));
    }
    const double a = pair.lo();
    const double b = pair.hi();
    const double u = x - a;
    const double v = b - x;
    const double aq = std::pow(std::pow(a, n - 1), q);
    const double bq = std::pow(std::pow(b, n - 1), q);
    const double left = u * u * std::pow(((3.0 * b - 2.0 * x - a) * aq + 2.0 * u * bq) / 3.0, 1.0 / q);
    const double right = v * v * std::pow((2.0 * v * aq + (b + 2.0 * x - 3.0 * a) * bq) / 3.0, 1.0 / q);
    const double printed = std::abs(n) / (2.0 * std::pow(b - a, 1.0 / q)) * (left + right);
    return variant == Variant::Corrected ? printed / (b - a) : printed;
}

PropositionReport evaluate_proposition(int which, const MeanPair& pair, int n, double x, double q, Variant v,
                                       double numeric_tol) {
    if (which != 1 && which != 2) {
        throw Error(ErrorCode::ParamOutOfDomain, "proposition must be 1 or 2");
    }
    PropositionReport report;
    report.lhs = proposition_lhs(pair, n, x);
    report.rhs = which == 1 ? proposition1_bound(pair, n, x) : proposition2_bound(pair, n, x, q, v);
    report.slack = report.rhs - report.lhs;
    const double exponent = which == 1 ? 1.0 : q;
    report.convexity = check_convexity(
        [&](double t) { return std::pow(std::abs(n) * std::pow(t, n - 1), exponent); },
        Interval(pair.lo(), pair.hi()));
    const double scale = std::max(1.0, std::abs(report.lhs));
    report.valid = report.convexity.convex && report.slack >= -numeric_tol * scale;
    return report;
}

}  // namespace ineq
