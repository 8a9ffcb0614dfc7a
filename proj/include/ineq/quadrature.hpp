#pragma once

#include <functional>

namespace ineq {

/// Closed interval [a, b] with a < b, both finite.
class Interval {
public:
    /// Throws Error(Domain) unless a < b and both are finite.
    Interval(double a, double b);

    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double b() const noexcept { return b_; }
    [[nodiscard]] double length() const noexcept { return b_ - a_; }
    [[nodiscard]] double midpoint() const noexcept { return 0.5 * (a_ + b_); }
    [[nodiscard]] bool contains(double x) const noexcept { return a_ <= x && x <= b_; }

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double a_;
    double b_;
};

using RealFunction = std::function<double(double)>;

inline constexpr double kDefaultQuadTol = 1e-11;
inline constexpr int kDefaultMaxSubdivisions = 4000;
inline constexpr int kConvexityGrid = 513;

struct QuadResult {
    double value = 0.0;
    double err_estimate = 0.0;
    int subdivisions = 0;
};

/// Globally adaptive Gauss-Kronrod 15/7 integration. The error of each
/// panel is the raw difference between the two embedded rules. Iteration stops
/// once the summed error is at most tol * max(1, integral of |g|).
///
/// Throws Error(MaxSubdivisions) when the tolerance cannot be met and
/// Error(NonFiniteSample) if g returns NaN or infinity.
QuadResult integrate(const RealFunction& g, const Interval& iv, double tol = kDefaultQuadTol,
                     int max_subdivisions = kDefaultMaxSubdivisions);

struct ConvexityVerdict {
    bool convex = true;
    double worst_violation = 0.0;  // magnitude of the most negative second difference
    int grid_size = 0;             // 0 when no check was required
    double tolerance = 0.0;
};

/// Second differences of g on a uniform grid; negative ones beyond
/// max(1e-9, 1e-9 * max|g|) are violations.
ConvexityVerdict check_convexity(const RealFunction& g, const Interval& iv,
                                 int grid_size = kConvexityGrid);

}  // namespace ineq
