#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slantsurf/error.hpp"
#include "slantsurf/expr.hpp"

using namespace slantsurf;

TEST_CASE("arithmetic and precedence") {
    const Expr e = Expr::parse("1 + 2*3 - 4/8", "u");
    CHECK(e(0.0) == doctest::Approx(6.5));
    const Expr f = Expr::parse("-(u + 1) * (u - 2)", "u");
    CHECK(f(3.0) == doctest::Approx(-4.0));
    const Expr g = Expr::parse("2*pi", "u");
    CHECK(g(0.0) == doctest::Approx(6.283185307179586));
}

TEST_CASE("functions evaluate and differentiate") {
    const Expr e = Expr::parse("sin(u)*cosh(u) + pow(u, 3) - sqrt(abs(u*u - 4))", "u");
    const double x = 0.7;
    const Jet j = e.eval(Jet::variable(x));
    const double expect =
        std::sin(x) * std::cosh(x) + x * x * x - std::sqrt(std::fabs(x * x - 4.0));
    CHECK(j.value() == doctest::Approx(expect));
    // first derivative by hand
    const double d1 = std::cos(x) * std::cosh(x) + std::sin(x) * std::sinh(x) +
                      3.0 * x * x - (-2.0 * x) / (2.0 * std::sqrt(4.0 - x * x)) * 1.0;
    // abs(u*u-4) = 4-u^2 here, d/du sqrt(4-u^2) = -u / sqrt(4-u^2)
    const double expect_d1 = std::cos(x) * std::cosh(x) + std::sin(x) * std::sinh(x) +
                             3.0 * x * x + x / std::sqrt(4.0 - x * x);
    (void)d1;
    CHECK(j.deriv(1) == doctest::Approx(expect_d1).epsilon(1e-12));
}

TEST_CASE("variable name is configurable") {
    const Expr e = Expr::parse("s*s", "s");
    CHECK(e(3.0) == doctest::Approx(9.0));
    CHECK_THROWS_AS(Expr::parse("u*u", "s"), Error);
}

TEST_CASE("parse errors carry a column") {
    try {
        Expr::parse("1 + * 2", "u");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ParseError);
        CHECK(std::string(e.what()).find("col") != std::string::npos);
    }
    CHECK_THROWS_AS(Expr::parse("sin(u", "u"), Error);
    CHECK_THROWS_AS(Expr::parse("pow(u)", "u"), Error);
    CHECK_THROWS_AS(Expr::parse("frob(u)", "u"), Error);
    CHECK_THROWS_AS(Expr::parse("1 2", "u"), Error);
    CHECK_THROWS_AS(Expr::parse("", "u"), Error);
}
