#include "ineq/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "ineq/error.hpp"

namespace ineq {

Interval::Interval(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw Error(ErrorCode::Domain,
                    "invalid interval [" + std::to_string(a) + ", " + std::to_string(b) + "]: need a < b");
    }
}

namespace {

// Kronrod abscissae on [0, 1]; odd indices are shared with the 7-point Gauss rule.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
    double lo = 0.0;
    double hi = 0.0;
    double value = 0.0;
    double abs_value = 0.0;
    double err = 0.0;
};

double sample(const RealFunction& g, double t) {
    const double v = g(t);
    if (!std::isfinite(v)) {
        throw Error(ErrorCode::NonFiniteSample, "integrand is not finite at t = " + std::to_string(t));
    }
    return v;
}

Panel gauss_kronrod(const RealFunction& g, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = sample(g, center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    double abs_sum = std::abs(fc) * kKronrodWeights[7];
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        const double f1 = sample(g, center - dx);
        const double f2 = sample(g, center + dx);
        kronrod += kKronrodWeights[i] * (f1 + f2);
        abs_sum += kKronrodWeights[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * (f1 + f2);
    }
    Panel p;
    p.lo = lo;
    p.hi = hi;
    p.value = kronrod * half;
    p.abs_value = abs_sum * std::abs(half);
    const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * p.abs_value;
    p.err = std::max(std::abs((kronrod - gauss) * half), roundoff);
    return p;
}

struct LargerError {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.err != y.err) return x.err < y.err;
        return x.lo > y.lo;
    }
};

}  // namespace

QuadResult integrate(const RealFunction& g, const Interval& iv, double tol, int max_subdivisions) {
    if (!(tol > 0.0)) throw Error(ErrorCode::ParamOutOfDomain, "quadrature tolerance must be positive");

    std::priority_queue<Panel, std::vector<Panel>, LargerError> queue;
    std::vector<Panel> finished;  // panels too narrow to split further
    Panel first = gauss_kronrod(g, iv.a(), iv.b());
    double total_err = first.err;
    double total_abs = first.abs_value;
    queue.push(first);
    int subdivisions = 1;

    auto target = [&] { return tol * std::max(1.0, total_abs); };

    while (total_err > target() && !queue.empty()) {
        if (subdivisions >= max_subdivisions) {
            throw Error(ErrorCode::MaxSubdivisions,
                        "tolerance " + std::to_string(tol) + " not reached after " +
                            std::to_string(subdivisions) + " panels (error estimate " +
                            std::to_string(total_err) + ")");
        }
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(worst.lo < mid && mid < worst.hi)) {
            finished.push_back(worst);
            continue;
        }
        Panel left = gauss_kronrod(g, worst.lo, mid);
        Panel right = gauss_kronrod(g, mid, worst.hi);
        total_err += left.err + right.err - worst.err;
        total_abs += left.abs_value + right.abs_value - worst.abs_value;
        queue.push(left);
        queue.push(right);
        ++subdivisions;
    }
    if (total_err > target()) {
        throw Error(ErrorCode::MaxSubdivisions, "tolerance unreachable at floating-point resolution");
    }

    while (!queue.empty()) {
        finished.push_back(queue.top());
        queue.pop();
    }
    std::sort(finished.begin(), finished.end(),
              [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
    QuadResult result;
    for (const Panel& p : finished) {
        result.value += p.value;
        result.err_estimate += p.err;
    }
    result.subdivisions = subdivisions;
    return result;
}

ConvexityVerdict check_convexity(const RealFunction& g, const Interval& iv, int grid_size) {
    if (grid_size < 3) throw Error(ErrorCode::ParamOutOfDomain, "convexity grid needs at least 3 points");
    const auto n = static_cast<std::size_t>(grid_size);
    std::vector<double> values(n);
    const double h = iv.length() / static_cast<double>(n - 1);
    double max_abs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (i + 1 == n) ? iv.b() : iv.a() + static_cast<double>(i) * h;
        values[i] = sample(g, t);
        max_abs = std::max(max_abs, std::abs(values[i]));
    }
    double most_negative = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        most_negative = std::min(most_negative, values[i - 1] - 2.0 * values[i] + values[i + 1]);
    }
    ConvexityVerdict verdict;
    verdict.grid_size = grid_size;
    verdict.tolerance = std::max(1e-9, 1e-9 * max_abs);
    verdict.worst_violation = most_negative < 0.0 ? -most_negative : 0.0;
    verdict.convex = verdict.worst_violation <= verdict.tolerance;
    return verdict;
}

}  // namespace ineq
