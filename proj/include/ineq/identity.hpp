#pragma once

#include <string>

#include "ineq/expr.hpp"
#include "ineq/quadrature.hpp"

namespace ineq {

/// Where the Taylor-type sum is anchored: an arbitrary point x, the midpoint,
/// or the average of both endpoints.
class RuleForm {
public:
    enum class Kind { PointX, Midpoint, Trapezoid };

    static RuleForm point(double x) { return RuleForm(Kind::PointX, x); }
    static RuleForm midpoint() { return RuleForm(Kind::Midpoint, 0.0); }
    static RuleForm trapezoid() { return RuleForm(Kind::Trapezoid, 0.0); }

    [[nodiscard]] Kind kind() const noexcept { return kind_; }

    /// x for PointX, (a+b)/2 for Midpoint. Trapezoid has no single anchor and throws.
    [[nodiscard]] double anchor(const Interval& iv) const;

    /// Throws Error(Domain) when a PointX anchor lies outside iv.
    void validate(const Interval& iv) const;

    /// "x=0.25", "midpoint" or "trapezoid"
    [[nodiscard]] std::string label() const;

    friend bool operator==(const RuleForm&, const RuleForm&) = default;

private:
    RuleForm(Kind kind, double x) : kind_(kind), x_(x) {}

    Kind kind_;
    double x_;
};

/// K_n(x, t): (t-a)^n/n! on [a, x], (t-b)^n/n! on (x, b].
double kernel_K(int n, const Interval& iv, double x, double t);

/// K_n anchored at the midpoint.
double kernel_M(int n, const Interval& iv, double t);

/// [(b-t)^n + (-1)^n (t-a)^n] / (2 n!)
double kernel_T(int n, const Interval& iv, double t);

/// The finite sum that the remainder integral corrects:
///   PointX:    sum_{k<n} [(b-x)^{k+1} + (-1)^k (x-a)^{k+1}] / (k+1)! f^(k)(x)
///   Midpoint:  PointX((a+b)/2), same arithmetic
///   Trapezoid: sum_{k<n} (b-a)^{k+1} / (k+1)! [f^(k)(a) + (-1)^k f^(k)(b)] / 2
double taylor_sum(const ExprFunction& fn, int n, const Interval& iv, const RuleForm& form);

struct IdentityReport {
    double integral = 0.0;
    double integral_err = 0.0;
    double taylor_sum = 0.0;
    double remainder_integral = 0.0;  // integral of kernel * f^(n), before the sign
    double remainder_err = 0.0;
    double remainder_sign = 1.0;      // (-1)^n for PointX/Midpoint, +1 for Trapezoid
    double residual = 0.0;
    bool passed = false;
};

inline constexpr double kIdentityQuadTol = 1e-12;

/// Evaluates both sides of the kernel identity with the quadrature oracle.
/// The remainder integral is split at the anchor where the kernel has a kink.
/// passed iff residual <= tol + both quadrature error estimates.
IdentityReport verify_identity(const ExprFunction& fn, int n, const Interval& iv, const RuleForm& form,
                               double tol, double quad_tol = kIdentityQuadTol);

namespace detail {
double factorial(int n);
double ipow(double base, int e);
}  // namespace detail

}  // namespace ineq
