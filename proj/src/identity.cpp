#include "ineq/identity.hpp"

#include <cmath>
#include <cstdio>

#include "ineq/error.hpp"

namespace ineq {

namespace detail {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double ipow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace detail

namespace {

void require_order(int n) {
    if (n < 1) throw Error(ErrorCode::ParamOutOfDomain, "order n must be >= 1, got " + std::to_string(n));
    if (n > kDefaultOrderCap) {
        throw Error(ErrorCode::OrderOverflow, "order n exceeds cap " + std::to_string(kDefaultOrderCap));
    }
}

void require_inside(const Interval& iv, double v, const char* what) {
    if (!iv.contains(v)) {
        throw Error(ErrorCode::Domain, std::string(what) + " = " + std::to_string(v) + " outside [" +
                                           std::to_string(iv.a()) + ", " + std::to_string(iv.b()) + "]");
    }
}

}  // namespace

double RuleForm::anchor(const Interval& iv) const {
    switch (kind_) {
        case Kind::PointX: return x_;
        case Kind::Midpoint: return iv.midpoint();
        case Kind::Trapezoid: break;
    }
    throw Error(ErrorCode::Domain, "trapezoid form has no single anchor point");
}

void RuleForm::validate(const Interval& iv) const {
    if (kind_ == Kind::PointX) require_inside(iv, x_, "rule point x");
}

std::string RuleForm::label() const {
    switch (kind_) {
        case Kind::PointX: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "x=%.17g", x_);
            return buf;
        }
        case Kind::Midpoint: return "midpoint";
        case Kind::Trapezoid: return "trapezoid";
    }
    return "";
}

double kernel_K(int n, const Interval& iv, double x, double t) {
    require_order(n);
    require_inside(iv, x, "x");
    require_inside(iv, t, "t");
    const double base = t <= x ? t - iv.a() : t - iv.b();
    return detail::ipow(base, n) / detail::factorial(n);
}

double kernel_M(int n, const Interval& iv, double t) { return kernel_K(n, iv, iv.midpoint(), t); }

double kernel_T(int n, const Interval& iv, double t) {
    require_order(n);
    require_inside(iv, t, "t");
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    return (detail::ipow(iv.b() - t, n) + sign * detail::ipow(t - iv.a(), n)) /
           (2.0 * detail::factorial(n));
}

double taylor_sum(const ExprFunction& fn, int n, const Interval& iv, const RuleForm& form) {
    require_order(n);
    form.validate(iv);
    const double a = iv.a();
    const double b = iv.b();
    double sum = 0.0;
    if (form.kind() == RuleForm::Kind::Trapezoid) {
        const TaylorJet left = fn.taylor(a, n - 1);
        const TaylorJet right = fn.taylor(b, n - 1);
        double len_pow = 1.0;
        for (int k = 0; k < n; ++k) {
            len_pow *= iv.length();
            const double sign = k % 2 == 0 ? 1.0 : -1.0;
            // c_k = f^(k)/k!, so (b-a)^{k+1}/(k+1)! f^(k) = (b-a)^{k+1} c_k / (k+1)
            const auto idx = static_cast<std::size_t>(k);
            sum += len_pow / (k + 1) * 0.5 * (left.coeffs[idx] + sign * right.coeffs[idx]);
        }
        return sum;
    }
    const double x = form.anchor(iv);
    const TaylorJet jet = fn.taylor(x, n - 1);
    double right_pow = 1.0;
    double left_pow = 1.0;
    for (int k = 0; k < n; ++k) {
        right_pow *= b - x;
        left_pow *= x - a;
        const double sign = k % 2 == 0 ? 1.0 : -1.0;
        sum += (right_pow + sign * left_pow) / (k + 1) * jet.coeffs[static_cast<std::size_t>(k)];
    }
    return sum;
}

IdentityReport verify_identity(const ExprFunction& fn, int n, const Interval& iv, const RuleForm& form,
                               double tol, double quad_tol) {
    require_order(n);
    form.validate(iv);
    const double a = iv.a();
    const double b = iv.b();
    const double nfact = detail::factorial(n);
    auto nth = [&](double t) { return fn.deriv(t, n); };

    IdentityReport report;
    const QuadResult whole = integrate([&](double t) { return fn(t); }, iv, quad_tol);
    report.integral = whole.value;
    report.integral_err = whole.err_estimate;
    report.taylor_sum = taylor_sum(fn, n, iv, form);

    if (form.kind() == RuleForm::Kind::Trapezoid) {
        const QuadResult rem = integrate([&](double t) { return kernel_T(n, iv, t) * nth(t); }, iv, quad_tol);
        report.remainder_integral = rem.value;
        report.remainder_err = rem.err_estimate;
        report.remainder_sign = 1.0;
    } else {
        const double x = form.anchor(iv);
        if (x > a) {
            const QuadResult left = integrate(
                [&](double t) { return detail::ipow(t - a, n) / nfact * nth(t); }, Interval(a, x), quad_tol);
            report.remainder_integral += left.value;
            report.remainder_err += left.err_estimate;
        }
        if (x < b) {
            const QuadResult right = integrate(
                [&](double t) { return detail::ipow(t - b, n) / nfact * nth(t); }, Interval(x, b), quad_tol);
            report.remainder_integral += right.value;
            report.remainder_err += right.err_estimate;
        }
        report.remainder_sign = n % 2 == 0 ? 1.0 : -1.0;
    }
    report.residual = std::abs(report.integral - report.taylor_sum -
                               report.remainder_sign * report.remainder_integral);
    report.passed = report.residual <= tol + report.integral_err + report.remainder_err;
    return report;
}

}  // namespace ineq
