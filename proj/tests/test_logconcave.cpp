#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "isoperim/logconcave.hpp"
#include "isoperim/needle.hpp"

using namespace isoperim;
using namespace isoperim::logconcave;

// Frozen 40-digit reference values (independent arbitrary-precision
// evaluation of the defining formulas).
namespace {
constexpr double kX1 = 0.33869688733846589;        // x(1) = 1/(e-1)^2
constexpr double kX20 = 3.9161918992018415e-08;    // x(20)
constexpr double kG5 = 6.2394896623384555;         // G(5) = 25e^5/(4e^5+1)
constexpr double kGamma025 = 1.6323065927174806;   // gamma with x = 0.25
}  // namespace

TEST_CASE("x_of_gamma frozen points") {
    CHECK(x_of_gamma(1.0) == doctest::Approx(kX1).epsilon(1e-14));
    CHECK(x_of_gamma(20.0) == doctest::Approx(kX20).epsilon(1e-13));
    // leading order (gamma-1) e^{-gamma} agrees to 3 significant figures
    CHECK(x_of_gamma(20.0) == doctest::Approx(19.0 * std::exp(-20.0)).epsilon(5e-3));
    // gamma -> 0+ tends to 1/2
    CHECK(x_of_gamma(1e-10) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(x_of_gamma(1e-10) < 0.5);
}

TEST_CASE("x_of_gamma rejects bad input") {
    CHECK_THROWS_AS(x_of_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(x_of_gamma(-1.0), std::domain_error);
    CHECK_THROWS_AS(x_of_gamma(std::nan("")), std::domain_error);
    CHECK_THROWS_AS(g_of_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_of_x(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_of_x(0.6), std::domain_error);
    CHECK_THROWS_AS(profile_g(-0.1), std::domain_error);
}

TEST_CASE("g_of_gamma frozen points") {
    CHECK(g_of_gamma(1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    CHECK(g_of_gamma(5.0) == doctest::Approx(kG5).epsilon(1e-14));
    CHECK(g_of_gamma(1e-10) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("series and direct branches meet smoothly") {
    // branch switch points at gamma = 1e-2 and 30
    for (double g : {0.00999, 0.01001, 29.99, 30.01}) {
        double lo = x_of_gamma(g * (1.0 - 1e-12));
        double hi = x_of_gamma(g * (1.0 + 1e-12));
        CHECK(lo / hi == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(g_of_gamma(g * (1.0 - 1e-12)) /
              g_of_gamma(g * (1.0 + 1e-12)) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("gamma_of_x inverts the bijection") {
    CHECK(gamma_of_x(0.5) == 0.0);
    CHECK(gamma_of_x(kX1) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(gamma_of_x(0.25) == doctest::Approx(kGamma025).epsilon(1e-11));
    // round trip at x = 0.25
    CHECK(x_of_gamma(gamma_of_x(0.25)) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("bijection round trip on a log grid") {
    const int pts = 220;
    for (int i = 0; i < pts; ++i) {
        double lg = std::log(1e-6) + (std::log(50.0) - std::log(1e-6)) * i / (pts - 1);
        double gamma = std::exp(lg);
        double back = gamma_of_x(x_of_gamma(gamma));
        CHECK(back == doctest::Approx(gamma).epsilon(1e-9));
    }
}

TEST_CASE("monotonicity of the profile maps") {
    double prev_x = x_of_gamma(1e-6), prev_g = g_of_gamma(1e-6);
    for (int i = 1; i <= 400; ++i) {
        double gamma = 1e-6 * std::pow(5e7, i / 400.0);
        double x = x_of_gamma(gamma), g = g_of_gamma(gamma);
        CHECK(x < prev_x);
        CHECK(g > prev_g);
        prev_x = x;
        prev_g = g;
    }
}

TEST_CASE("profile endpoint and monotone conditions") {
    CHECK(profile_g(0.5).g == 2.0);
    CHECK(profile_g(kX1).g == doctest::Approx(std::exp(1.0)).epsilon(1e-12));

    // G(1/x) non-increasing and x G(1/x) non-decreasing on a 10^4 grid
    const int pts = 10000;
    double prev_g = INFINITY, prev_xg = 0.0;
    for (int i = 0; i < pts; ++i) {
        double x = std::exp(std::log(1e-6) + (std::log(0.5) - std::log(1e-6)) * i / (pts - 1));
        auto p = profile_g(x);
        CHECK(p.g <= prev_g * (1.0 + 1e-13));
        CHECK(x * p.g >= prev_xg * (1.0 - 1e-13));
        prev_g = p.g;
        prev_xg = x * p.g;
    }
}

TEST_CASE("slope identity against central finite differences") {
    CHECK(xg_slope(kX1) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(xg_slope(0.5 - 1e-9) < 1e-6);
    CHECK_THROWS_AS(xg_slope(0.5), std::domain_error);

    const double h = 1e-6;
    for (double x : {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.49}) {
        double fd = ((x + h) * profile_g(x + h).g - (x - h) * profile_g(x - h).g) / (2.0 * h);
        CHECK(xg_slope(x) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("oracle equivalence with the exponential needle family") {
    for (double x : {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.49}) {
        double oracle = needle::minimize_exp_family(x);
        CHECK(std::fabs(oracle - x * profile_g(x).g) <= 1e-8);
    }
}

TEST_CASE("logarithmic limit from above") {
    double x = 1e-8;
    double ratio = profile_g(x).g / std::log(1.0 / x);
    CHECK(ratio > 1.0);
    CHECK(ratio < 1.3);

    double prev = INFINITY;
    for (int k = 2; k <= 8; ++k) {
        double xi = std::pow(10.0, -k);
        double r = profile_g(xi).g / std::log(1.0 / xi);
        CHECK(r < prev);
        CHECK(r > 1.0);
        prev = r;
    }
}
