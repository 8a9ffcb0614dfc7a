#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ineq/identity.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ineq;

TEST_CASE("rule forms") {
    const Interval iv(1.0, 3.0);
    CHECK(RuleForm::point(1.5).anchor(iv) == 1.5);
    CHECK(RuleForm::midpoint().anchor(iv) == 2.0);
    CHECK(code_of([&] { (void)RuleForm::trapezoid().anchor(iv); }) != ErrorCode::Io);
    CHECK(code_of([&] { RuleForm::point(3.5).validate(iv); }) == ErrorCode::Domain);
    CHECK_NOTHROW(RuleForm::point(3.0).validate(iv));
    CHECK(RuleForm::point(0.25).label() == "x=0.25");
    CHECK(RuleForm::midpoint().label() == "midpoint");
    CHECK(RuleForm::trapezoid().label() == "trapezoid");
    CHECK(RuleForm::point(0.5) == RuleForm::point(0.5));
    CHECK_FALSE(RuleForm::point(0.5) == RuleForm::midpoint());
}

TEST_CASE("kernels") {
    const Interval u(0.0, 1.0);
    CHECK(kernel_K(1, u, 0.5, 0.25) == doctest::Approx(0.25));
    CHECK(kernel_K(3, u, 0.5, 0.0) == 0.0);
    CHECK(kernel_K(2, u, 0.5, 0.75) == doctest::Approx(0.03125));
    CHECK(kernel_M(2, u, 0.75) == doctest::Approx(0.03125));
    CHECK(kernel_T(1, u, 0.5) == doctest::Approx(0.0));
    CHECK(kernel_T(2, u, 0.0) == doctest::Approx(0.25));
    CHECK(kernel_T(2, u, 1.0) == doctest::Approx(0.25));
    for (double t : {0.1, 0.4, 0.9}) {
        CHECK(kernel_T(3, u, t) == doctest::Approx(-kernel_T(3, u, 1.0 - t)));
        CHECK(kernel_T(2, u, t) == doctest::Approx(0.5 * (kernel_K(2, u, 1.0, t) + kernel_K(2, u, 0.0, t))));
    }
}

TEST_CASE("taylor sums") {
    const Interval u(0.0, 1.0);
    const auto sq = ExprFunction::parse("t^2");
    CHECK(taylor_sum(sq, 2, u, RuleForm::point(0.5)) == doctest::Approx(0.25));
    CHECK(taylor_sum(sq, 2, u, RuleForm::midpoint()) == doctest::Approx(0.25));
    CHECK(taylor_sum(sq, 2, u, RuleForm::trapezoid()) == doctest::Approx(0.0));
    const auto c = ExprFunction::parse("7");
    for (int n = 1; n <= 4; ++n) {
        CHECK(taylor_sum(c, n, Interval(-1, 2), RuleForm::point(0.3)) == doctest::Approx(21.0));
        CHECK(taylor_sum(c, n, Interval(-1, 2), RuleForm::trapezoid()) == doctest::Approx(21.0));
    }
}

TEST_CASE("identity on the spec examples") {
    const Interval u(0.0, 1.0);
    const auto e = verify_identity(ExprFunction::parse("exp(t)"), 3, u, RuleForm::point(0.3), 1e-9);
    CHECK(e.passed);
    CHECK(e.residual <= 1e-9);
    CHECK(std::abs(e.integral - (std::numbers::e - 1.0)) <= 1e-12);

    const auto sq = verify_identity(ExprFunction::parse("t^2"), 2, u, RuleForm::point(0.5), 1e-11);
    CHECK(sq.integral == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(sq.taylor_sum == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(sq.remainder_sign * sq.remainder_integral == doctest::Approx(1.0 / 12.0).epsilon(1e-13));
    CHECK(sq.residual <= 1e-11);

    const auto low = verify_identity(ExprFunction::parse("3*t^2 - t + 4"), 3, u, RuleForm::point(0.8), 1e-12);
    CHECK(low.remainder_integral == 0.0);
    CHECK(low.residual <= 1e-12);
}

TEST_CASE("identity across forms and orders") {
    const Interval iv(-0.5, 1.5);
    for (const char* text : {"exp(t)", "sin(t)*t", "1/(2+t)", "cosh(t)^2"}) {
        const auto fn = ExprFunction::parse(text);
        for (int n = 1; n <= 6; ++n) {
            for (const RuleForm& form : {RuleForm::point(-0.5), RuleForm::point(0.1), RuleForm::point(1.5),
                                         RuleForm::midpoint(), RuleForm::trapezoid()}) {
                CAPTURE(text);
                CAPTURE(n);
                CAPTURE(form.label());
                const auto r = verify_identity(fn, n, iv, form, 1e-9);
                CHECK(r.passed);
                CHECK(r.residual <= 1e-9);
            }
        }
    }
}

TEST_CASE("remainder matches the kernel integral oracle") {
    const auto fn = ExprFunction::parse("exp(t)");
    const Interval iv(0.0, 2.0);
    for (int n = 1; n <= 4; ++n) {
        const auto r = verify_identity(fn, n, iv, RuleForm::point(0.7), 1e-9);
        const double ref = oracle::remainder(n, 0.0, 2.0, 0.7, [](double t) { return std::exp(t); });
        CHECK(std::abs(r.remainder_integral) == doctest::Approx(ref).epsilon(1e-11));
        CHECK(r.remainder_sign == (n % 2 == 0 ? 1.0 : -1.0));
    }
}

TEST_CASE("midpoint form equals point form at the midpoint") {
    const auto fn = ExprFunction::parse("ln(1+t)");
    const Interval iv(0.0, 3.0);
    for (int n = 1; n <= 5; ++n) {
        CHECK(taylor_sum(fn, n, iv, RuleForm::midpoint()) == taylor_sum(fn, n, iv, RuleForm::point(1.5)));
    }
}

TEST_CASE("trapezoid is the average of the endpoint forms") {
    const auto fn = ExprFunction::parse("exp(t)*cos(t)");
    const Interval iv(0.0, 1.0);
    for (int n = 1; n <= 5; ++n) {
        const double avg =
            0.5 * (taylor_sum(fn, n, iv, RuleForm::point(0.0)) + taylor_sum(fn, n, iv, RuleForm::point(1.0)));
        CHECK(taylor_sum(fn, n, iv, RuleForm::trapezoid()) == doctest::Approx(avg).epsilon(1e-14));
    }
}
