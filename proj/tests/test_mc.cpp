#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <cstdlib>
#include <vector>

#include "isoperim/mc.hpp"

using namespace isoperim;
using namespace isoperim::mc;

namespace {
constexpr uint64_t kSeed = 91101;

std::vector<double> first_coordinates(const BodySpec& body, uint64_t n, uint64_t seed) {
    std::vector<double> out(n);
    uint64_t attempts = 0;
    for (uint64_t i = 0; i < n; ++i) out[i] = sample_point(body, seed, i, attempts)[0];
    return out;
}

double ks_statistic_uniform(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    double d = 0.0;
    const double n = static_cast<double>(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        d = std::fmax(d, std::fabs((i + 1) / n - v[i]));
        d = std::fmax(d, std::fabs(v[i] - i / n));
    }
    return d;
}
}  // namespace

TEST_CASE("cube marginals pass a KS test") {
    const uint64_t n = 20000;
    auto body = make_body(Shape::UnitCube, 3, Norm::Linf);
    double d = ks_statistic_uniform(first_coordinates(body, n, kSeed));
    // alpha = 0.001 critical value
    CHECK(d < 1.949 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("ball samples have the right radial law") {
    const uint64_t n = 50000;
    const int dim = 3;
    auto body = make_body(Shape::UnitBall, dim, Norm::L2);
    uint64_t attempts = 0;
    double sum = 0.0;
    for (uint64_t i = 0; i < n; ++i) {
        auto x = sample_point(body, kSeed + 1, i, attempts);
        double r2 = 0.0;
        for (double c : x) r2 += c * c;
        CHECK(r2 <= 1.0 + 1e-12);
        sum += r2;
    }
    // E r^2 = n/(n+2), Var r^2 = n/(n+4) - (n/(n+2))^2
    double mean = sum / n;
    double ev = dim / (dim + 2.0);
    double var = dim / (dim + 4.0) - ev * ev;
    CHECK(std::fabs(mean - ev) < 4.0 * std::sqrt(var / n));
}

TEST_CASE("simplex samples stay inside and fill the corner") {
    const uint64_t n = 50000;
    auto body = make_body(Shape::StandardSimplex, 3, Norm::L1);
    uint64_t attempts = 0;
    uint64_t corner = 0;
    for (uint64_t i = 0; i < n; ++i) {
        auto x = sample_point(body, kSeed + 2, i, attempts);
        double s = 0.0;
        for (double c : x) {
            CHECK(c >= 0.0);
            s += c;
        }
        CHECK(s <= 1.0 + 1e-12);
        if (s <= 0.5) ++corner;
    }
    // mu(sum <= 1/2) = (1/2)^3
    double p = static_cast<double>(corner) / n;
    CHECK(std::fabs(p - 0.125) < 4.0 * std::sqrt(0.125 * 0.875 / n));
}

TEST_CASE("zero tilt reproduces the uniform stream") {
    auto flat = make_body(Shape::UnitCube, 4, Norm::L2);
    auto tilted = make_tilted_body(Shape::UnitCube, 4, Norm::L2, {1.0, 0.0, 0.0, 0.0}, 0.0);
    uint64_t a1 = 0, a2 = 0;
    for (uint64_t i = 0; i < 50; ++i) {
        CHECK(sample_point(flat, kSeed, i, a1) == sample_point(tilted, kSeed, i, a2));
    }
    CHECK(a1 == a2);
}

TEST_CASE("tilted sampling matches the closed-form split on the cube") {
    // density e^{gamma x1}: mu(x1 <= c) = (e^{gamma c} - 1)/(e^{gamma} - 1)
    const double gamma = 1.0, c = 0.3;
    auto body = make_tilted_body(Shape::UnitCube, 2, Norm::Linf, {1.0, 0.0}, gamma);
    auto cut = CutSpec::halfspace({1.0, 0.0}, c);
    auto est = estimate_measure(body, cut, 200000, kSeed + 3);
    double exact = std::expm1(gamma * c) / std::expm1(gamma);
    CHECK(std::fabs(est.value - exact) < 4.0 * est.std_err);
}

TEST_CASE("estimates are reproducible across thread counts") {
    auto body = make_body(Shape::UnitCube, 3, Norm::L2);
    auto cut = CutSpec::corner_subcube(0.5);
    setenv("ISOPERIM_THREADS", "1", 1);
    auto one = estimate_measure(body, cut, 300000, kSeed + 4);
    setenv("ISOPERIM_THREADS", "4", 1);
    auto four = estimate_measure(body, cut, 300000, kSeed + 4);
    unsetenv("ISOPERIM_THREADS");
    CHECK(one.value == four.value);
    CHECK(one.std_err == four.std_err);

    // corner subcube closed form 0.5^3
    CHECK(std::fabs(one.value - 0.125) < 4.0 * one.std_err);
}

TEST_CASE("standard error shrinks like 1/sqrt(samples)") {
    auto body = make_body(Shape::UnitCube, 2, Norm::L2);
    auto cut = CutSpec::halfspace({1.0, 0.0}, 0.5);
    auto small = estimate_measure(body, cut, 100000, kSeed + 5);
    auto big = estimate_measure(body, cut, 400000, kSeed + 5);
    CHECK(big.std_err / small.std_err == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("minkowski content of a slab boundary is exact in expectation") {
    // cube, x1 <= 0.5, Linf norm: mu(S_h \ S) = h, so content = 1
    auto body = make_body(Shape::UnitCube, 2, Norm::Linf);
    auto cut = CutSpec::halfspace({1.0, 0.0}, 0.5);
    auto est = estimate_minkowski(body, cut, Norm::Linf, 400000, kSeed + 6);
    CHECK(est.extrapolation_monotone);
    CHECK(std::fabs(est.value - 1.0) < 4.0 * est.std_err);
}

TEST_CASE("input validation") {
    auto cube = make_body(Shape::UnitCube, 2, Norm::L2);
    auto ball = make_body(Shape::UnitBall, 2, Norm::L2);
    auto cut = CutSpec::halfspace({1.0, 0.0}, 0.5);
    CHECK_THROWS_AS(estimate_measure(cube, cut, 0, kSeed), std::invalid_argument);
    CHECK_THROWS_AS(estimate_measure(ball, CutSpec::corner_subcube(0.5), 1000, kSeed),
                    std::invalid_argument);
    CHECK_THROWS_AS(estimate_minkowski(cube, cut, Norm::L2, 1000, kSeed, {0.01, 0.02, 0.03}),
                    std::invalid_argument);
    CHECK_THROWS_AS(estimate_minkowski(cube, cut, Norm::L2, 1000, kSeed, {0.02, 0.01}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_body(Shape::UnitCube, 1, Norm::L2), std::domain_error);
    CHECK_THROWS_AS(make_tilted_body(Shape::UnitCube, 2, Norm::L2, {0.0, 0.0}, 1.0),
                    std::domain_error);
}

TEST_CASE("distance oracles") {
    auto hs = CutSpec::halfspace({1.0, 1.0}, 1.0);
    std::vector<double> p{1.0, 1.0};
    CHECK(cut_distance(hs, p, Norm::L2) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(cut_distance(hs, p, Norm::L1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cut_distance(hs, p, Norm::Linf) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(cut_distance(hs, {0.2, 0.2}, Norm::L2) == 0.0);

    auto box = CutSpec::corner_subcube(0.5);
    CHECK(cut_distance(box, {0.7, 0.9}, Norm::L2) ==
          doctest::Approx(std::sqrt(0.04 + 0.16)).epsilon(1e-14));
    CHECK(cut_distance(box, {0.7, 0.9}, Norm::Linf) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(cut_distance(box, {0.3, 0.2}, Norm::L1) == 0.0);

    auto slab = CutSpec::kdim_subcube(1, 0.35);
    CHECK(cut_distance(slab, {0.5, 0.99}, Norm::L2) == doctest::Approx(0.15).epsilon(1e-14));
}

TEST_CASE("diameters") {
    CHECK(body_diameter(make_body(Shape::UnitCube, 4, Norm::L1), Norm::L1) == 4.0);
    CHECK(body_diameter(make_body(Shape::UnitCube, 4, Norm::L2), Norm::L2) == 2.0);
    CHECK(body_diameter(make_body(Shape::UnitCube, 4, Norm::Linf), Norm::Linf) == 1.0);
    CHECK(body_diameter(make_body(Shape::UnitBall, 9, Norm::L1), Norm::L1) == 6.0);
    CHECK(body_diameter(make_body(Shape::UnitBall, 9, Norm::L2), Norm::L2) == 2.0);
    CHECK(body_diameter(make_body(Shape::UnitBall, 9, Norm::Linf), Norm::Linf) == 2.0);
    CHECK(body_diameter(make_body(Shape::StandardSimplex, 3, Norm::L1), Norm::L1) == 2.0);
    CHECK(body_diameter(make_body(Shape::StandardSimplex, 3, Norm::L2), Norm::L2) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(body_diameter(make_body(Shape::StandardSimplex, 3, Norm::Linf), Norm::Linf) == 1.0);
}

TEST_CASE("theorem check passes on representative cells") {
    const uint64_t samples = 200000;
    {
        auto body = make_body(Shape::UnitCube, 2, Norm::Linf);
        auto r = run_theorem_check(body, CutSpec::halfspace({1.0, 0.0}, 0.5), Norm::Linf,
                                   samples, kSeed + 7);
        CHECK(r.pass);
        CHECK(r.rhs == doctest::Approx(1.0).epsilon(1e-3));
    }
    {
        auto body = make_body(Shape::UnitBall, 3, Norm::L2);
        auto r = run_theorem_check(body, CutSpec::halfspace({1.0, 0.0, 0.0}, 0.0), Norm::L2,
                                   samples, kSeed + 8);
        CHECK(r.pass);
    }
    {
        auto body = make_tilted_body(Shape::StandardSimplex, 2, Norm::L1, {1.0, 0.0}, 1.0);
        auto r = run_theorem_check(body, CutSpec::halfspace({1.0, 1.0}, 0.5), Norm::L1,
                                   samples, kSeed + 9);
        CHECK(r.pass);
    }
}

TEST_CASE("matrix enumerates the advertised cells") {
    auto cells = default_matrix();
    CHECK(cells.size() == 3u * 3u * 3u * 2u * 5u);
}
