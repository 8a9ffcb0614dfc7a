#include "ineq/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "ineq/error.hpp"

namespace ineq {

namespace {

using detail::factorial;
using detail::ipow;

// Base 0 is an exact 0 before any fractional power, so x = a and x = b never
// route through 0^0 or 0 * inf.
double zpow(double base, double e) {
    if (base == 0.0) return e == 0.0 ? 1.0 : 0.0;
    return std::pow(base, e);
}

struct Geometry {
    double u;  // x - a
    double v;  // b - x
    double len;
};

Geometry geometry(const Interval& iv, double x) {
    if (!iv.contains(x)) {
        throw Error(ErrorCode::Domain, "rule point x = " + std::to_string(x) + " outside [" +
                                           std::to_string(iv.a()) + ", " + std::to_string(iv.b()) + "]");
    }
    return {x - iv.a(), iv.b() - x, iv.length()};
}

void require_order(int n) {
    if (n < 1) throw Error(ErrorCode::ParamOutOfDomain, "order n must be >= 1, got " + std::to_string(n));
}

void require_holder_p(double p) {
    if (!std::isfinite(p) || !(p > 1.0)) {
        throw Error(ErrorCode::ParamOutOfDomain, "Hölder exponent p must be finite and > 1, got " +
                                                     std::to_string(p));
    }
}

void require_alt_holder(int n, double p) {
    require_holder_p(p);
    const double q = conjugate_exponent(p);
    if (!(n * q + q - p - 1.0 > 0.0)) {
        throw Error(ErrorCode::ParamOutOfDomain,
                    "AltHolder needs nq + q - p - 1 > 0 (p < " + std::to_string(alt_holder_p_limit(n)) +
                        " for n = " + std::to_string(n) + "), got p = " + std::to_string(p));
    }
}

void require_power_mean_q(double q) {
    if (!std::isfinite(q) || !(q >= 1.0)) {
        throw Error(ErrorCode::ParamOutOfDomain, "power-mean exponent q must be finite and >= 1, got " +
                                                     std::to_string(q));
    }
}

std::string lower(std::string_view text) {
    std::string out(text);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::erase(out, '_');
    std::erase(out, '-');
    return out;
}

// AltHolder constant ((q-1)/(nq+q-p-1))^{1-1/q}
double alt_holder_constant(int n, double p, double q) {
    return std::pow((q - 1.0) / (n * q + q - p - 1.0), 1.0 - 1.0 / q);
}

}  // namespace

std::string_view to_string(Family f) noexcept {
    switch (f) {
        case Family::ClassicOstrowski: return "classic";
        case Family::ConvexDirect: return "convex-direct";
        case Family::Holder: return "holder";
        case Family::AltHolder: return "alt-holder";
        case Family::PowerMean: return "power-mean";
    }
    return "";
}

std::string_view to_string(Variant v) noexcept {
    return v == Variant::Corrected ? "corrected" : "paper";
}

std::string_view to_string(Corollary c) noexcept {
    switch (c) {
        case Corollary::Midpoint: return "midpoint";
        case Corollary::Left: return "left";
        case Corollary::Right: return "right";
        case Corollary::Trapezoid: return "trapezoid";
    }
    return "";
}

std::optional<Family> parse_family(std::string_view text) {
    const std::string key = lower(text);
    if (key == "classic" || key == "classicostrowski" || key == "ostrowski") return Family::ClassicOstrowski;
    if (key == "convexdirect" || key == "convex") return Family::ConvexDirect;
    if (key == "holder") return Family::Holder;
    if (key == "altholder") return Family::AltHolder;
    if (key == "powermean") return Family::PowerMean;
    return std::nullopt;
}

std::optional<Variant> parse_variant(std::string_view text) {
    const std::string key = lower(text);
    if (key == "corrected") return Variant::Corrected;
    if (key == "paper" || key == "paperstated" || key == "printed") return Variant::PaperStated;
    return std::nullopt;
}

EndpointMagnitudes endpoint_magnitudes(const ExprFunction& fn, int n, const Interval& iv) {
    return {std::abs(fn.deriv(iv.a(), n)), std::abs(fn.deriv(iv.b(), n))};
}

double conjugate_exponent(double p) {
    require_holder_p(p);
    return p / (p - 1.0);
}

double alt_holder_p_limit(int n) {
    const double m = n + 1.0;
    return 0.5 * (m + std::sqrt(m * m + 4.0));
}

double convex_direct_rhs(int n, const Interval& iv, double x, EndpointMagnitudes m) {
    require_order(n);
    const auto [u, v, len] = geometry(iv, x);
    const double d1 = (n + 1.0) * (n + 2.0);
    const double coef_a = ipow(u, n + 1) * ((n + 2) * v + u) / d1 + ipow(v, n + 2) / (n + 2);
    const double coef_b = ipow(v, n + 1) * ((n + 2) * u + v) / d1 + ipow(u, n + 2) / (n + 2);
    return (m.at_a * coef_a + m.at_b * coef_b) / (factorial(n) * len);
}

double holder_rhs(int n, const Interval& iv, double x, EndpointMagnitudes m, double p, Variant variant) {
    require_order(n);
    const double q = conjugate_exponent(p);
    const auto [u, v, len] = geometry(iv, x);
    const double aq = std::pow(m.at_a, q);
    const double bq = std::pow(m.at_b, q);
    const double np1 = n * p + 1.0;
    if (variant == Variant::Corrected) {
        const double left = zpow(u, np1 / p) / std::pow(np1, 1.0 / p) *
                            zpow(u * (len + v) / (2.0 * len) * aq + u * u / (2.0 * len) * bq, 1.0 / q);
        const double right = zpow(v, np1 / p) / std::pow(np1, 1.0 / p) *
                             zpow(v * v / (2.0 * len) * aq + v * (len + u) / (2.0 * len) * bq, 1.0 / q);
        return (left + right) / factorial(n);
    }
    const double e = np1 + 1.0 / q;
    const double left = zpow(u, e) / np1 * zpow((len + v) / 2.0 * aq + u / 2.0 * bq, 1.0 / q);
    const double right = zpow(v, e) / np1 * zpow(v / 2.0 * aq + (len + u) / 2.0 * bq, 1.0 / q);
    return (left + right) / (factorial(n) * std::pow(len, 1.0 / q));
}

double alt_holder_rhs(int n, const Interval& iv, double x, EndpointMagnitudes m, double p, Variant variant) {
    require_order(n);
    require_alt_holder(n, p);
    const double q = conjugate_exponent(p);
    const auto [u, v, len] = geometry(iv, x);
    const double aq = std::pow(m.at_a, q);
    const double bq = std::pow(m.at_b, q);
    const double c = alt_holder_constant(n, p, q);
    const double pre = c / (factorial(n) * std::pow(len, 1.0 / q) * std::pow(p + 2.0, 1.0 / q));
    // Corrected carries (x-a)^1 where the printed bracket has (x-a)^{p+1}.
    const double ul = variant == Variant::Corrected ? u : zpow(u, p + 1.0);
    const double vl = variant == Variant::Corrected ? v : zpow(v, p + 1.0);
    const double left = ipow(u, n + 1) * zpow(((p + 2.0) * v + u) / (p + 1.0) * aq + ul * bq, 1.0 / q);
    const double right = ipow(v, n + 1) * zpow(vl * aq + ((p + 2.0) * u + v) / (p + 1.0) * bq, 1.0 / q);
    return pre * (left + right);
}

double power_mean_rhs(int n, const Interval& iv, double x, EndpointMagnitudes m, double q) {
    require_order(n);
    require_power_mean_q(q);
    const auto [u, v, len] = geometry(iv, x);
    const double aq = std::pow(m.at_a, q);
    const double bq = std::pow(m.at_b, q);
    const double pre = 1.0 / (factorial(n + 1) * std::pow(len, 1.0 / q) * std::pow(n + 2.0, 1.0 / q));
    const double left = ipow(u, n + 1) * zpow(((n + 2) * v + u) * aq + (n + 1) * u * bq, 1.0 / q);
    const double right = ipow(v, n + 1) * zpow((n + 1) * v * aq + ((n + 2) * u + v) * bq, 1.0 / q);
    return pre * (left + right);
}

double classic_rhs(const Interval& iv, double x, double sup_derivative) {
    const auto [u, v, len] = geometry(iv, x);
    const double offset = x - iv.midpoint();
    return len * sup_derivative * (0.25 + offset * offset / (len * len));
}

double corollary_rhs(Family family, int n, const Interval& iv, Corollary which, EndpointMagnitudes m,
                     BoundParams params, Variant variant) {
    require_order(n);
    const double len = iv.length();
    const double a = m.at_a;
    const double b = m.at_b;
    const double len_n1 = ipow(len, n + 1);

    switch (family) {
        case Family::ClassicOstrowski:
            throw Error(ErrorCode::ParamOutOfDomain,
                        "the classic bound depends on sup|f'|, not on endpoint magnitudes");

        case Family::ConvexDirect:
            switch (which) {
                case Corollary::Midpoint: return len_n1 / (ipow(2.0, n) * factorial(n + 1)) * (a + b) / 2.0;
                case Corollary::Left: return len_n1 / factorial(n + 2) * ((n + 1) * a + b);
                case Corollary::Right: return len_n1 / factorial(n + 2) * (a + (n + 1) * b);
                case Corollary::Trapezoid: return len_n1 / factorial(n + 1) * (a + b) / 2.0;
            }
            break;

        case Family::PowerMean: {
            const double q = params.q;
            require_power_mean_q(q);
            const double aq = std::pow(a, q);
            const double bq = std::pow(b, q);
            const double edge = len_n1 / (factorial(n + 1) * std::pow(n + 2.0, 1.0 / q));
            const double left = edge * zpow((n + 1) * aq + bq, 1.0 / q);
            const double right = edge * zpow(aq + (n + 1) * bq, 1.0 / q);
            switch (which) {
                case Corollary::Midpoint:
                    return len_n1 /
                           (factorial(n + 1) * std::pow(2.0, n + 1 + 1.0 / q) * std::pow(n + 2.0, 1.0 / q)) *
                           (zpow((n + 3) * aq + (n + 1) * bq, 1.0 / q) +
                            zpow((n + 1) * aq + (n + 3) * bq, 1.0 / q));
                case Corollary::Left: return left;
                case Corollary::Right: return right;
                case Corollary::Trapezoid:
                    return len_n1 / (2.0 * factorial(n + 1) * std::pow(n + 2.0, 1.0 / q)) *
                           (zpow((n + 1) * aq + bq, 1.0 / q) + zpow(aq + (n + 1) * bq, 1.0 / q));
            }
            break;
        }

        case Family::Holder: {
            const double p = params.p;
            const double q = conjugate_exponent(p);
            const double aq = std::pow(a, q);
            const double bq = std::pow(b, q);
            const double np1 = n * p + 1.0;
            const double avg = zpow((aq + bq) / 2.0, 1.0 / q);
            const double mid_sum = zpow((3.0 * aq + bq) / 4.0, 1.0 / q) + zpow((aq + 3.0 * bq) / 4.0, 1.0 / q);
            if (variant == Variant::Corrected) {
                const double scale = 1.0 / (factorial(n) * std::pow(np1, 1.0 / p));
                switch (which) {
                    case Corollary::Midpoint: return ipow(len / 2.0, n + 1) * scale * mid_sum;
                    case Corollary::Left:
                    case Corollary::Right:
                    case Corollary::Trapezoid: return len_n1 * scale * avg;
                }
                break;
            }
            switch (which) {
                case Corollary::Midpoint: return std::pow(len / 2.0, np1 + 1.0 / q) / (np1 * factorial(n)) * mid_sum;
                case Corollary::Left:
                case Corollary::Right: return std::pow(len, np1 + 1.0 / q) / (np1 * factorial(n)) * avg;
                // printed form carries no q and repeats the convex-direct trapezoid bound
                case Corollary::Trapezoid: return len_n1 / factorial(n + 1) * (a + b) / 2.0;
            }
            break;
        }

        case Family::AltHolder: {
            const double p = params.p;
            require_alt_holder(n, p);
            const double q = conjugate_exponent(p);
            const double aq = std::pow(a, q);
            const double bq = std::pow(b, q);
            const double c = alt_holder_constant(n, p, q);
            const double ratio = (p + 3.0) / (p + 1.0);
            const double edge = len_n1 / (factorial(n) * std::pow(p + 2.0, 1.0 / q)) * c;
            // Corrected replaces the printed (b-a)^p and ((b-a)/2)^p weights by 1.
            const double far_weight = variant == Variant::Corrected ? 1.0 : std::pow(len, p);
            const double mid_weight = variant == Variant::Corrected ? 1.0 : std::pow(len / 2.0, p);
            const double left = edge * zpow(far_weight * aq + bq / (p + 1.0), 1.0 / q);
            const double right = edge * zpow(aq / (p + 1.0) + far_weight * bq, 1.0 / q);
            switch (which) {
                case Corollary::Midpoint:
                    return len_n1 / (factorial(n) * std::pow(2.0, n + 1 + 1.0 / q) * std::pow(p + 2.0, 1.0 / q)) *
                           c *
                           (zpow(ratio * aq + mid_weight * bq, 1.0 / q) +
                            zpow(mid_weight * aq + ratio * bq, 1.0 / q));
                case Corollary::Left: return left;
                case Corollary::Right: return right;
                // printed form sums the two endpoint bounds without halving
                case Corollary::Trapezoid:
                    return variant == Variant::Corrected ? 0.5 * (left + right) : left + right;
            }
            break;
        }
    }
    throw Error(ErrorCode::ParamOutOfDomain, "unknown corollary");
}

double n1_convex_direct_normalized(const Interval& iv, double x, EndpointMagnitudes m) {
    const auto [u, v, len] = geometry(iv, x);
    const double coef_a = u * u * (3.0 * v + u) / 6.0 + v * v * v / 3.0;
    const double coef_b = v * v * (3.0 * u + v) / 6.0 + u * u * u / 3.0;
    return (coef_a * m.at_a + coef_b * m.at_b) / (len * len);
}

double n1_power_mean_normalized(const Interval& iv, double x, EndpointMagnitudes m, double q, Variant variant) {
    require_power_mean_q(q);
    const auto [u, v, len] = geometry(iv, x);
    const double aq = std::pow(m.at_a, q);
    const double bq = std::pow(m.at_b, q);
    const double left = u * u * zpow((3.0 * v + u) / 3.0 * aq + 2.0 * u / 3.0 * bq, 1.0 / q);
    const double right = v * v * zpow(2.0 * v / 3.0 * aq + (3.0 * u + v) / 3.0 * bq, 1.0 / q);
    const double printed = (left + right) / (2.0 * std::pow(len, 1.0 / q));
    return variant == Variant::Corrected ? printed / len : printed;
}

double grid_sup_abs_derivative(const ExprFunction& fn, int k, const Interval& iv, int grid_size) {
    double best = 0.0;
    const double h = iv.length() / (grid_size - 1);
    for (int i = 0; i < grid_size; ++i) {
        const double t = i + 1 == grid_size ? iv.b() : iv.a() + i * h;
        best = std::max(best, std::abs(fn.deriv(t, k)));
    }
    return best;
}

double bound_classic(const ExprFunction& fn, const Interval& iv, double x) {
    return classic_rhs(iv, x, grid_sup_abs_derivative(fn, 1, iv));
}

double bound_convex_direct(const ExprFunction& fn, int n, const Interval& iv, double x) {
    return convex_direct_rhs(n, iv, x, endpoint_magnitudes(fn, n, iv));
}

double bound_holder(const ExprFunction& fn, int n, const Interval& iv, double x, double p, Variant v) {
    return holder_rhs(n, iv, x, endpoint_magnitudes(fn, n, iv), p, v);
}

double bound_alt_holder(const ExprFunction& fn, int n, const Interval& iv, double x, double p, Variant v) {
    require_alt_holder(n, p);
    return alt_holder_rhs(n, iv, x, endpoint_magnitudes(fn, n, iv), p, v);
}

double bound_power_mean(const ExprFunction& fn, int n, const Interval& iv, double x, double q) {
    return power_mean_rhs(n, iv, x, endpoint_magnitudes(fn, n, iv), q);
}

double corollary_closed_form(Family family, const ExprFunction& fn, int n, const Interval& iv, Corollary which,
                             BoundParams params, Variant v) {
    if (family == Family::ClassicOstrowski) {
        if (n != 1) throw Error(ErrorCode::ParamOutOfDomain, "the classic bound applies to n = 1 only");
        const double sup = grid_sup_abs_derivative(fn, 1, iv);
        const double len = iv.length();
        switch (which) {
            case Corollary::Midpoint: return len * classic_rhs(iv, iv.midpoint(), sup);
            case Corollary::Left: return len * classic_rhs(iv, iv.a(), sup);
            case Corollary::Right: return len * classic_rhs(iv, iv.b(), sup);
            case Corollary::Trapezoid:
                return len * 0.5 * (classic_rhs(iv, iv.a(), sup) + classic_rhs(iv, iv.b(), sup));
        }
    }
    return corollary_rhs(family, n, iv, which, endpoint_magnitudes(fn, n, iv), params, v);
}

double BoundRequest::hypothesis_exponent() const {
    switch (family) {
        case Family::ClassicOstrowski:
        case Family::ConvexDirect: return 1.0;
        case Family::Holder:
        case Family::AltHolder: return conjugate_exponent(p);
        case Family::PowerMean: return q;
    }
    return 1.0;
}

void validate(const BoundRequest& req) {
    require_order(req.n);
    if (req.n > kDefaultOrderCap) {
        throw Error(ErrorCode::OrderOverflow, "order n exceeds cap " + std::to_string(kDefaultOrderCap));
    }
    switch (req.family) {
        case Family::ClassicOstrowski:
            if (req.n != 1) {
                throw Error(ErrorCode::ParamOutOfDomain, "the classic bound applies to n = 1 only");
            }
            break;
        case Family::ConvexDirect: break;
        case Family::Holder: require_holder_p(req.p); break;
        case Family::AltHolder: require_alt_holder(req.n, req.p); break;
        case Family::PowerMean: require_power_mean_q(req.q); break;
    }
}

double request_rhs(const BoundRequest& req, const ExprFunction& fn, const Interval& iv) {
    validate(req);
    req.form.validate(iv);
    const RuleForm::Kind kind = req.form.kind();

    if (req.family == Family::ClassicOstrowski) {
        const double sup = grid_sup_abs_derivative(fn, 1, iv);
        const double len = iv.length();
        if (kind == RuleForm::Kind::Trapezoid) {
            return len * 0.5 * (classic_rhs(iv, iv.a(), sup) + classic_rhs(iv, iv.b(), sup));
        }
        return len * classic_rhs(iv, req.form.anchor(iv), sup);
    }

    const EndpointMagnitudes m = endpoint_magnitudes(fn, req.n, iv);
    if (kind != RuleForm::Kind::PointX) {
        const Corollary which = kind == RuleForm::Kind::Midpoint ? Corollary::Midpoint : Corollary::Trapezoid;
        return corollary_rhs(req.family, req.n, iv, which, m, BoundParams{req.p, req.q}, req.variant);
    }
    const double x = req.form.anchor(iv);
    switch (req.family) {
        case Family::ConvexDirect: return convex_direct_rhs(req.n, iv, x, m);
        case Family::Holder: return holder_rhs(req.n, iv, x, m, req.p, req.variant);
        case Family::AltHolder: return alt_holder_rhs(req.n, iv, x, m, req.p, req.variant);
        case Family::PowerMean: return power_mean_rhs(req.n, iv, x, m, req.q);
        case Family::ClassicOstrowski: break;
    }
    return 0.0;
}

BoundReport evaluate(const BoundRequest& req, const ExprFunction& fn, const Interval& iv, const EvalOptions& opts) {
    validate(req);
    req.form.validate(iv);

    BoundReport report;
    const QuadResult whole = integrate([&](double t) { return fn(t); }, iv, opts.quad_tol);
    report.integral = whole.value;
    report.taylor_sum = taylor_sum(fn, req.n, iv, req.form);
    report.lhs = std::abs(report.integral - report.taylor_sum);
    report.lhs_err = whole.err_estimate + 32.0 * std::numeric_limits<double>::epsilon() *
                                              (std::abs(report.integral) + std::abs(report.taylor_sum));
    report.rhs = request_rhs(req, fn, iv);
    report.slack = report.rhs - report.lhs;

    if (req.family != Family::ClassicOstrowski) {
        report.magnitudes = endpoint_magnitudes(fn, req.n, iv);
        const double r = req.hypothesis_exponent();
        const int n = req.n;
        report.convexity = check_convexity([&](double t) { return std::pow(std::abs(fn.deriv(t, n)), r); }, iv);
    }
    report.valid = report.convexity.convex && report.slack >= -(report.lhs_err + opts.numeric_tol);
    return report;
}

}  // namespace ineq
