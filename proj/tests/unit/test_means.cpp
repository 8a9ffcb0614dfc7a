#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ineq/means.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ineq;

TEST_CASE("mean pair validation") {
    CHECK(code_of([] { MeanPair(2, 2); }) == ErrorCode::EqualArguments);
    CHECK(code_of([] { MeanPair(0, 2); }) == ErrorCode::Domain);
    CHECK(code_of([] { MeanPair(-1, 2); }) == ErrorCode::Domain);
    const MeanPair p(3, 1);
    CHECK(p.lo() == 1);
    CHECK(p.hi() == 3);
}

TEST_CASE("arithmetic and logarithmic means") {
    CHECK(arithmetic_mean(MeanPair(1, 3)) == 2.0);
    CHECK(arithmetic_mean(MeanPair(0.5, 2)) == 1.25);
    CHECK(arithmetic_mean(MeanPair(4, 4.002)) == doctest::Approx(4.001));
    CHECK(logarithmic_mean(MeanPair(1, std::numbers::e)) == doctest::Approx(std::numbers::e - 1.0));
    CHECK(logarithmic_mean(1, 2) == doctest::Approx(1.0 / std::numbers::ln2));
    CHECK(code_of([] { (void)logarithmic_mean(2, 2); }) == ErrorCode::EqualArguments);
    CHECK(logarithmic_mean(2, 5) == logarithmic_mean(5, 2));
    // G <= L <= A
    CHECK(logarithmic_mean(2, 5) < arithmetic_mean(MeanPair(2, 5)));
    CHECK(logarithmic_mean(2, 5) > std::sqrt(10.0));
}

TEST_CASE("generalized logarithmic mean") {
    const MeanPair p(1, 2);
    CHECK(std::abs(generalized_log_mean_pow(p, 2) - 7.0 / 3.0) <= 1e-13);
    CHECK(generalized_log_mean_pow(p, 1) == doctest::Approx(arithmetic_mean(p)));
    CHECK(generalized_log_mean_pow(p, -2) == doctest::Approx(0.5));
    CHECK(code_of([&] { (void)generalized_log_mean_pow(p, 0); }) == ErrorCode::UnsupportedOrder);
    CHECK(code_of([&] { (void)generalized_log_mean_pow(p, -1); }) == ErrorCode::UnsupportedOrder);
    // mean value of t^n on [a, b]
    for (int n : {-4, -2, 2, 3, 5}) {
        const MeanPair q(0.7, 2.3);
        const double ref = oracle::integrate([n](double t) { return std::pow(t, n); }, 0.7, 2.3) / 1.6;
        CHECK(generalized_log_mean_pow(q, n) == doctest::Approx(ref).epsilon(1e-13));
    }
}

TEST_CASE("first mean inequality") {
    const MeanPair p(1, 2);
    CHECK(std::abs(proposition_lhs(p, 2, 1.5) - 1.0 / 12.0) <= 1e-12);
    CHECK(std::abs(proposition1_bound(p, 2, 1.5) - 0.75) <= 1e-12);
    // x = a: the bound is attained
    CHECK(proposition1_bound(p, 2, 1.0) == doctest::Approx(4.0 / 3.0));
    CHECK(proposition_lhs(p, 2, 1.0) == doctest::Approx(4.0 / 3.0));
    CHECK(proposition_lhs(MeanPair(2, 6), 1, 4.0) == doctest::Approx(0.0));
    CHECK(code_of([&] { (void)proposition1_bound(p, 2, 2.5); }) == ErrorCode::Domain);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.1, 4.0);
    std::uniform_real_distribution<double> s(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double a = u(rng);
        const double b = a + u(rng);
        const double x = a + s(rng) * (b - a);
        const int n = 2 + i % 4;
        const MeanPair pair(a, b);
        const Interval iv(a, b);
        const auto fn = ExprFunction::parse("t^" + std::to_string(n));
        CHECK(proposition1_bound(pair, n, x) ==
              doctest::Approx(bound_convex_direct(fn, 1, iv, x) / (b - a)).epsilon(1e-12));
        CHECK(proposition_lhs(pair, n, x) <= proposition1_bound(pair, n, x) * (1 + 1e-12));
    }
}

TEST_CASE("second mean inequality") {
    const MeanPair p(1, 2);
    CHECK(proposition2_bound(p, 2, 1.5, 1.0) == doctest::Approx(0.75));
    CHECK(proposition2_bound(p, 2, 1.5, 1.0, Variant::PaperStated) == doctest::Approx(0.75));
    // the printed display evaluated at q = 2: 0.25 (sqrt 2 + sqrt 3)
    CHECK(proposition2_bound(p, 2, 1.5, 2.0, Variant::PaperStated) ==
          doctest::Approx(0.25 * (std::sqrt(2.0) + std::sqrt(3.0))).epsilon(1e-14));
    CHECK(proposition2_bound(p, 2, 1.5, 2.0) == doctest::Approx(0.786566092485493).epsilon(1e-13));
    // continuity in q at 1
    CHECK(proposition2_bound(p, 3, 1.2, 1.0 + 1e-9) == doctest::Approx(proposition2_bound(p, 3, 1.2, 1.0)).epsilon(1e-7));
    // corrected form is the power-mean n = 1 bound for t^n, normalized
    const MeanPair w(0.5, 3.0);
    const auto cube = ExprFunction::parse("t^3");
    for (double q : {1.0, 1.5, 2.0, 3.0}) {
        CHECK(proposition2_bound(w, 3, 1.1, q) ==
              doctest::Approx(bound_power_mean(cube, 1, Interval(0.5, 3.0), 1.1, q) / 2.5).epsilon(1e-12));
        CHECK(proposition2_bound(w, 3, 1.1, q, Variant::PaperStated) ==
              doctest::Approx(2.5 * proposition2_bound(w, 3, 1.1, q)).epsilon(1e-12));
    }
}

TEST_CASE("proposition reports") {
    const MeanPair p(1, 2);
    const auto r1 = evaluate_proposition(1, p, 2, 1.5);
    CHECK(r1.valid);
    CHECK(r1.slack == doctest::Approx(0.75 - 1.0 / 12.0));
    const auto r2 = evaluate_proposition(2, p, 2, 1.5, 2.0);
    CHECK(r2.valid);
    CHECK(r2.convexity.convex);
    const auto negative = evaluate_proposition(2, MeanPair(1, 4), -2, 2.0, 3.0);
    CHECK(negative.convexity.convex);
    CHECK(negative.valid);
    CHECK(code_of([&] { (void)evaluate_proposition(3, p, 2, 1.5); }) == ErrorCode::ParamOutOfDomain);
}
