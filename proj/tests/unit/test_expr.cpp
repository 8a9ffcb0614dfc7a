#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "ineq/error.hpp"
#include "ineq/expr.hpp"
#include "oracles.hpp"
#include "support.hpp"

using ineq::ErrorCode;
using ineq::ExprFunction;


TEST_CASE("parse and evaluate") {
    CHECK(ExprFunction::parse("exp(t)")(0.0) == doctest::Approx(1.0));
    CHECK(ExprFunction::parse("t^2")(3.0) == 9.0);
    CHECK(ExprFunction::parse("2*t+1")(3.0) == 7.0);
    CHECK(ExprFunction::parse("-t^2")(2.0) == -4.0);
    CHECK(ExprFunction::parse("1/(1+t)")(1.0) == 0.5);
    CHECK(ExprFunction::parse("t^(-2)")(2.0) == 0.25);
    CHECK(ExprFunction::parse("t^-2")(2.0) == 0.25);
    CHECK(ExprFunction::parse("t^0.5")(4.0) == doctest::Approx(2.0));
    CHECK(ExprFunction::parse(" sqrt( t ) * 2 ")(9.0) == doctest::Approx(6.0));
    CHECK(ExprFunction::parse("1.5e1 - t")(5.0) == 10.0);
    CHECK(ExprFunction::parse("t*ln(t)")(std::numbers::e) == doctest::Approx(std::numbers::e));
    CHECK(ExprFunction::parse("sinh(t)+cosh(t)")(0.7) == doctest::Approx(std::exp(0.7)));
    CHECK(ExprFunction::parse("sin(t)^2 + cos(t)^2")(1.234) == doctest::Approx(1.0));
    CHECK(ExprFunction::parse("exp(t)").source() == "exp(t)");
    CHECK(ExprFunction::parse("5").is_constant());
    CHECK_FALSE(ExprFunction::parse("5*t").is_constant());
}

TEST_CASE("syntax errors carry the offset") {
    try {
        (void)ExprFunction::parse("t +");
        FAIL("no error");
    } catch (const ineq::SyntaxError& e) {
        CHECK(e.offset() == 3);
        CHECK(e.code() == ErrorCode::Syntax);
        CHECK(std::string(e.what()).find("offset 3") != std::string::npos);
    }
    for (const char* bad : {"", "t^", "(t", "t)", "foo(t)", "exp t", "2**t", "t^t", "x", "1..2"}) {
        CAPTURE(bad);
        CHECK(code_of([&] { (void)ExprFunction::parse(bad); }) == ErrorCode::Syntax);
    }
}

TEST_CASE("domain errors at evaluation") {
    CHECK(code_of([] { (void)ExprFunction::parse("ln(t)")(0.0); }) == ErrorCode::Domain);
    CHECK(code_of([] { (void)ExprFunction::parse("sqrt(t)")(-1.0); }) == ErrorCode::Domain);
    CHECK(code_of([] { (void)ExprFunction::parse("1/t")(0.0); }) == ErrorCode::Domain);
    CHECK(code_of([] { (void)ExprFunction::parse("t^0.5")(-1.0); }) == ErrorCode::Domain);
    CHECK(code_of([] { (void)ExprFunction::parse("t^(-1)")(0.0); }) == ErrorCode::Domain);
    CHECK(code_of([] { (void)ExprFunction::parse("ln(t)").taylor(-1.0, 2); }) == ErrorCode::Domain);
    CHECK(ExprFunction::parse("t^3")(-2.0) == -8.0);
}

TEST_CASE("taylor coefficients") {
    const auto e = ExprFunction::parse("exp(t)").taylor(0.0, 3);
    REQUIRE(e.coeffs.size() == 4);
    CHECK(e.coeffs[0] == doctest::Approx(1.0));
    CHECK(e.coeffs[1] == doctest::Approx(1.0));
    CHECK(e.coeffs[2] == doctest::Approx(0.5));
    CHECK(e.coeffs[3] == doctest::Approx(1.0 / 6.0));

    const auto p = ExprFunction::parse("t^2").taylor(1.0, 2);
    CHECK(p.coeffs == std::vector<double>{1.0, 2.0, 1.0});

    const auto s = ExprFunction::parse("sin(t)").taylor(0.0, 3);
    CHECK(s.coeffs[0] == doctest::Approx(0.0));
    CHECK(s.coeffs[1] == doctest::Approx(1.0));
    CHECK(s.coeffs[2] == doctest::Approx(0.0));
    CHECK(s.coeffs[3] == doctest::Approx(-1.0 / 6.0));

    const auto c = ExprFunction::parse("5").taylor(0.3, 6);
    CHECK(c.order() == 6);
    CHECK(c.coeffs[0] == 5.0);
    for (int k = 1; k <= 6; ++k) CHECK(c.coeffs[static_cast<std::size_t>(k)] == 0.0);
}

TEST_CASE("derivatives") {
    CHECK(ExprFunction::parse("t^4").deriv(1.0, 2) == doctest::Approx(12.0));
    CHECK(ExprFunction::parse("5").deriv(0.7, 1) == 0.0);
    CHECK(ExprFunction::parse("exp(t)").deriv(1.0, 3) == doctest::Approx(std::numbers::e).epsilon(1e-14));
    CHECK(ExprFunction::parse("t^5").deriv(2.0, 5) == doctest::Approx(120.0));
    CHECK(ExprFunction::parse("t^5").deriv(2.0, 6) == 0.0);
    CHECK(ExprFunction::parse("t^(-2)").deriv(1.0, 3) == doctest::Approx(-24.0));
    CHECK(ExprFunction::parse("1/(1+t)").deriv(0.0, 4) == doctest::Approx(24.0));
    CHECK(ExprFunction::parse("cosh(t)").deriv(0.5, 3) == doctest::Approx(std::sinh(0.5)));
    CHECK(ExprFunction::parse("t*ln(t)").deriv(2.0, 2) == doctest::Approx(0.5));
    CHECK(code_of([] { (void)ExprFunction::parse("t").taylor(0.0, 40); }) == ErrorCode::OrderOverflow);
}

TEST_CASE("hand-derived derivative formulas") {
    struct Case {
        const char* text;
        std::function<double(double, int)> exact;
        double t;
    };
    const std::vector<Case> cases = {
        {"exp(2*t)", [](double t, int k) { return std::pow(2.0, k) * std::exp(2 * t); }, 0.3},
        {"sin(t)", [](double t, int k) { return std::sin(t + k * std::numbers::pi / 2); }, 1.1},
        {"cos(t)", [](double t, int k) { return std::cos(t + k * std::numbers::pi / 2); }, 2.2},
        {"ln(t)",
         [](double t, int k) {
             return k == 0 ? std::log(t) : std::pow(-1.0, k - 1) * oracle::fact(k - 1) / std::pow(t, k);
         },
         1.7},
        {"sqrt(t)",
         [](double t, int k) {
             double c = 1.0;
             for (int j = 0; j < k; ++j) c *= 0.5 - j;
             return c * std::pow(t, 0.5 - k);
         },
         0.8},
        {"t^2.5",
         [](double t, int k) {
             double c = 1.0;
             for (int j = 0; j < k; ++j) c *= 2.5 - j;
             return c * std::pow(t, 2.5 - k);
         },
         1.3},
    };
    for (const auto& c : cases) {
        const auto fn = ExprFunction::parse(c.text);
        for (int k = 0; k <= 6; ++k) {
            CAPTURE(c.text);
            CAPTURE(k);
            CHECK(oracle::rel_diff(fn.deriv(c.t, k), c.exact(c.t, k)) < 1e-12);
        }
    }
}

TEST_CASE("derivatives agree with finite differences") {
    for (const char* text : {"exp(t)*sin(t)", "t^3/(1+t^2)", "sqrt(1+t)*cosh(t)", "ln(2+t)^2", "sinh(t)/exp(t)"}) {
        const auto fn = ExprFunction::parse(text);
        const oracle::Fn f = [&](double t) { return fn(t); };
        for (double t : {0.2, 0.9}) {
            for (int k = 1; k <= 3; ++k) {
                CAPTURE(text);
                CAPTURE(k);
                CHECK(fn.deriv(t, k) == doctest::Approx(oracle::derivative(f, t, k)).epsilon(1e-5));
            }
        }
    }
}

TEST_CASE("linearity and Leibniz rule") {
    const auto f = ExprFunction::parse("exp(t)");
    const auto g = ExprFunction::parse("sin(t)");
    const auto sum = ExprFunction::parse("3*exp(t) - 2*sin(t)");
    const auto prod = ExprFunction::parse("exp(t)*sin(t)");
    const double t = 0.4;
    for (int k = 0; k <= 8; ++k) {
        CHECK(sum.deriv(t, k) == doctest::Approx(3 * f.deriv(t, k) - 2 * g.deriv(t, k)).epsilon(1e-13));
        double leibniz = 0.0;
        for (int j = 0; j <= k; ++j) {
            const double binom = oracle::fact(k) / (oracle::fact(j) * oracle::fact(k - j));
            leibniz += binom * f.deriv(t, j) * g.deriv(t, k - j);
        }
        CHECK(prod.deriv(t, k) == doctest::Approx(leibniz).epsilon(1e-12));
    }
}

TEST_CASE("copies are usable from several threads") {
    const auto fn = ExprFunction::parse("exp(t)*cos(t)");
    std::vector<double> out(8);
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < out.size(); ++i) {
        pool.emplace_back([fn, &out, i] { out[i] = fn.deriv(0.1 * static_cast<double>(i), 4); });
    }
    for (auto& th : pool) th.join();
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == fn.deriv(0.1 * static_cast<double>(i), 4));
}
