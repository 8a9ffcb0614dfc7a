#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "ineq/expr.hpp"
#include "ineq/identity.hpp"
#include "ineq/quadrature.hpp"

namespace ineq {

/// Declaration order is the tie-break order used when ranking bounds.
enum class Family { ClassicOstrowski, ConvexDirect, Holder, AltHolder, PowerMean };

/// Corrected: completes the displayed proof steps. PaperStated: the printed
/// closed forms, which differ for the Holder and AltHolder families.
enum class Variant { Corrected, PaperStated };

enum class Corollary { Midpoint, Left, Right, Trapezoid };

std::string_view to_string(Family f) noexcept;
std::string_view to_string(Variant v) noexcept;
std::string_view to_string(Corollary c) noexcept;

/// Accepts the CLI spellings ("convex-direct", "alt-holder", ...) and the enum names.
std::optional<Family> parse_family(std::string_view text);
std::optional<Variant> parse_variant(std::string_view text);

/// |f^(n)(a)| and |f^(n)(b)|: the only data about f the convex bounds use.
struct EndpointMagnitudes {
    double at_a = 0.0;
    double at_b = 0.0;
};

EndpointMagnitudes endpoint_magnitudes(const ExprFunction& fn, int n, const Interval& iv);

/// Hölder conjugate p / (p - 1).
double conjugate_exponent(double p);

/// Largest p (exclusive) for which the AltHolder integrability condition
/// nq + q - p - 1 > 0 holds: ((n+1) + sqrt((n+1)^2 + 4)) / 2.
double alt_holder_p_limit(int n);

// ---------------------------------------------------------------------------
// Closed forms in terms of endpoint magnitudes. All of them bound the
// unnormalized remainder |∫f - taylor_sum| at rule point x.
// ---------------------------------------------------------------------------

double convex_direct_rhs(int n, const Interval& iv, double x, EndpointMagnitudes m);
double holder_rhs(int n, const Interval& iv, double x, EndpointMagnitudes m, double p, Variant v);
double alt_holder_rhs(int n, const Interval& iv, double x, EndpointMagnitudes m, double p, Variant v);
double power_mean_rhs(int n, const Interval& iv, double x, EndpointMagnitudes m, double q);

/// Ostrowski's original bound on |f(x) - (1/(b-a)) ∫f| given sup|f'| <= M.
double classic_rhs(const Interval& iv, double x, double sup_derivative);

struct BoundParams {
    double p = std::numeric_limits<double>::quiet_NaN();
    double q = std::numeric_limits<double>::quiet_NaN();
};

/// Printed corollary closed forms for x = (a+b)/2, x = a, x = b and the
/// trapezoid average. For Holder/AltHolder the PaperStated variant evaluates
/// the printed display; Corrected specializes the corrected general formula
/// (the trapezoid entry is the average of the left and right ones).
/// ClassicOstrowski values are returned on the unnormalized scale.
double corollary_rhs(Family family, int n, const Interval& iv, Corollary which, EndpointMagnitudes m,
                     BoundParams params, Variant v = Variant::Corrected);

/// n = 1 displays on the normalized scale |f(x) - (1/(b-a)) ∫f|.
double n1_convex_direct_normalized(const Interval& iv, double x, EndpointMagnitudes m);

/// Corrected divides the power-mean n = 1 general bound by (b - a); the
/// printed display carries 1/(2 (b-a)^{1/q}) instead of 1/(2 (b-a)^{1+1/q}).
double n1_power_mean_normalized(const Interval& iv, double x, EndpointMagnitudes m, double q,
                                Variant v = Variant::Corrected);

// ---------------------------------------------------------------------------
// Wrappers reading the endpoint data from an expression.
// ---------------------------------------------------------------------------

/// max |f'| over the convexity grid; a lower estimate of the true supremum.
double grid_sup_abs_derivative(const ExprFunction& fn, int k, const Interval& iv,
                               int grid_size = kConvexityGrid);

/// Normalized classic bound with M estimated on the grid.
double bound_classic(const ExprFunction& fn, const Interval& iv, double x);
double bound_convex_direct(const ExprFunction& fn, int n, const Interval& iv, double x);
double bound_holder(const ExprFunction& fn, int n, const Interval& iv, double x, double p,
                    Variant v = Variant::Corrected);
double bound_alt_holder(const ExprFunction& fn, int n, const Interval& iv, double x, double p,
                        Variant v = Variant::Corrected);
double bound_power_mean(const ExprFunction& fn, int n, const Interval& iv, double x, double q);
double corollary_closed_form(Family family, const ExprFunction& fn, int n, const Interval& iv,
                             Corollary which, BoundParams params, Variant v = Variant::Corrected);

// ---------------------------------------------------------------------------
// Requests and reports
// ---------------------------------------------------------------------------

struct BoundRequest {
    Family family = Family::ConvexDirect;
    int n = 1;
    RuleForm form = RuleForm::midpoint();
    double p = std::numeric_limits<double>::quiet_NaN();  // Holder, AltHolder
    double q = std::numeric_limits<double>::quiet_NaN();  // PowerMean
    Variant variant = Variant::Corrected;

    /// The exponent the convexity hypothesis is stated for: 1 for
    /// ConvexDirect, p/(p-1) for the Hölder families, q for PowerMean.
    [[nodiscard]] double hypothesis_exponent() const;
};

/// Throws Error(ParamOutOfDomain) for n < 1, p <= 1, q < 1, the AltHolder
/// integrability condition, or ClassicOstrowski with n != 1.
void validate(const BoundRequest& req);

struct BoundReport {
    double integral = 0.0;
    double taylor_sum = 0.0;
    double lhs = 0.0;
    double lhs_err = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    EndpointMagnitudes magnitudes;
    ConvexityVerdict convexity;
    bool valid = false;
};

struct EvalOptions {
    double quad_tol = kIdentityQuadTol;
    double numeric_tol = 1e-10;
};

/// rhs for a validated request (no quadrature, no convexity check).
double request_rhs(const BoundRequest& req, const ExprFunction& fn, const Interval& iv);

/// Full evaluation: lhs from the quadrature oracle, rhs from the family,
/// and the convexity gate on |f^(n)|^r with r the hypothesis exponent.
/// valid = convex && slack >= -(lhs_err + numeric_tol).
BoundReport evaluate(const BoundRequest& req, const ExprFunction& fn, const Interval& iv,
                     const EvalOptions& opts = {});

}  // namespace ineq
