#include <doctest.h>

#include <cmath>

#include "isoperim/quadrature.hpp"
#include "isoperim/rootfind.hpp"

using namespace isoperim;

TEST_CASE("brent finds bracketed roots") {
    double r = num::brent_root([](double x) { return std::sin(x); }, 3.0, 4.0);
    CHECK(r == doctest::Approx(M_PI).epsilon(1e-12));

    r = num::brent_root([](double x) { return x * x * x - 2.0; }, 0.0, 2.0);
    CHECK(r == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));

    CHECK_THROWS(num::brent_root([](double x) { return x * x + 1.0; }, -1.0, 1.0));
}

TEST_CASE("golden section minimization") {
    auto [x, f] = num::golden_min([](double v) { return (v - 1.5) * (v - 1.5); }, -10.0, 10.0);
    CHECK(x == doctest::Approx(1.5).epsilon(1e-7));
    CHECK(f < 1e-12);
}

TEST_CASE("bracket expansion walks to a distant minimum") {
    auto obj = [](double v) { return std::cosh(v - 40.0); };
    auto [a, b] = num::expand_min_bracket(obj, 0.0, 1.0, -1e6, 1e6);
    CHECK(a < 40.0);
    CHECK(b > 40.0);
    auto [x, f] = num::golden_min(obj, a, b);
    CHECK(x == doctest::Approx(40.0).epsilon(1e-7));
}

TEST_CASE("adaptive quadrature on smooth integrands") {
    double v = num::integrate([](double x) { return std::sin(x); }, 0.0, M_PI);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-13));

    v = num::integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
    CHECK(v == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));

    // moderately peaked
    v = num::integrate([](double x) { return std::exp(50.0 * x); }, 0.0, 1.0);
    CHECK(v == doctest::Approx(std::expm1(50.0) / 50.0).epsilon(1e-11));
}
