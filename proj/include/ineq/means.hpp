#pragma once

#include "ineq/bounds.hpp"

namespace ineq {

/// Two positive, distinct reals.
class MeanPair {
public:
    /// Throws Error(Domain) for non-positive values, Error(EqualArguments) when equal.
    MeanPair(double alpha, double beta);

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double beta() const noexcept { return beta_; }
    [[nodiscard]] double lo() const noexcept { return alpha_ < beta_ ? alpha_ : beta_; }
    [[nodiscard]] double hi() const noexcept { return alpha_ < beta_ ? beta_ : alpha_; }

private:
    double alpha_;
    double beta_;
};

double arithmetic_mean(const MeanPair& pair);

/// (alpha - beta) / (ln alpha - ln beta)
double logarithmic_mean(const MeanPair& pair);
double logarithmic_mean(double alpha, double beta);

/// L_n^n(a, b): the mean value of t^n over [a, b],
/// (b^{n+1} - a^{n+1}) / ((n+1)(b-a)). n = 0 and n = -1 raise UnsupportedOrder.
double generalized_log_mean_pow(const MeanPair& pair, int n);

/// |L_n^n(a, b) - x^n|
double proposition_lhs(const MeanPair& pair, int n, double x);

/// Bound on |L_n^n - x^n| from the convex n = 1 corollary applied to t^n.
double proposition1_bound(const MeanPair& pair, int n, double x);

/// Power-mean counterpart. PaperStated keeps the printed 1/(2(b-a)^{1/q})
/// prefactor; Corrected divides it by (b - a). They agree when b - a = 1.
double proposition2_bound(const MeanPair& pair, int n, double x, double q, Variant v = Variant::Corrected);

struct PropositionReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    ConvexityVerdict convexity;  // on |n| t^{n-1} raised to q (q = 1 for proposition1_bound)
    bool valid = false;
};

/// which = 1 or 2. Runs the convexity guard on |f'|^q for f(t) = t^n.
PropositionReport evaluate_proposition(int which, const MeanPair& pair, int n, double x, double q = 1.0,
                                       Variant v = Variant::Corrected, double numeric_tol = 1e-12);

}  // namespace ineq
