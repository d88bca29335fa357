#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <random>

#include "extraction/value.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace extraction;
using float50 = boost::multiprecision::cpp_bin_float_50;

namespace {

// Literal re-evaluation of the three value branches in 50-digit arithmetic,
// sharing no code with the production implementation (no expm1 rewriting).
double value_mp(const BarrierSolution& sol, double x, double y) {
    const float50 a = sol.params.alpha, c = sol.params.c, b = sol.bstar, X = x, Y = y;
    float50 v = 0;
    if (x < sol.bstar) {
        for (std::size_t j = 0; j < sol.K.size(); ++j) {
            const float50 K = sol.K[j], r = sol.roots.pos[j];
            v += K / (a * r) * (1 - exp(-a * r * Y)) * exp(r * (X - b));
        }
    } else if (X < a * Y + b) {
        for (std::size_t j = 0; j < sol.K.size(); ++j) {
            const float50 K = sol.K[j], r = sol.roots.pos[j];
            v += K / (a * r) * (1 - exp(-r * (a * Y - (X - b))));
        }
        v += ((X - c) * (X - c) - (b - c) * (b - c)) / (2 * a);
    } else {
        v = (X - c) * Y - a * Y * Y / 2;
    }
    return v.convert_to<double>();
}

}  // namespace

TEST_CASE("no-jump fixture value anchor") {
    const BarrierSolution sol = solve(fixtures::p0());
    const double expect = (1.0 - std::exp(-2.0)) * std::exp(-1.0);
    CHECK(value(sol, {1.0, 2.0}) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(directional_u(sol, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(directional_u(sol, 2.5) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(classify(sol, {1.0, 2.0}) == Region::Waiting);
    CHECK(classify(sol, {2.0, 2.0}) == Region::PartialSell);
    CHECK(classify(sol, {4.0, 2.0}) == Region::FullSell);
    CHECK_THROWS_AS(classify(sol, {1.0, -0.5}), ValidationError);
}

TEST_CASE("value matches 50-digit re-evaluation") {
    std::mt19937_64 g(404);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const BarrierSolution sol = solve(validate(oracles::random_params(g)));
        for (int k = 0; k < 12; ++k) {
            const double y = 0.05 + 3.0 * u(g);
            const double x = sol.bstar - 3.0 + (4.0 + sol.params.alpha * y) * u(g);
            const double v = value(sol, {x, y});
            CHECK(v == doctest::Approx(value_mp(sol, x, y)).epsilon(1e-11));
            CHECK(v >= 0.0);
        }
    }
}

TEST_CASE("smooth fit at both free boundaries") {
    std::mt19937_64 g(808);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    const double h = 1e-7;
    for (int trial = 0; trial < 50; ++trial) {
        const BarrierSolution sol = solve(validate(oracles::random_params(g)));
        for (int k = 0; k < 20; ++k) {
            const double y = u(g);
            const double b = sol.bstar, s2 = b + sol.params.alpha * y;
            const double scale = 1.0 + std::abs(value(sol, {b, y}));
            // v, v_x, v_xx continuous at x = bstar.
            CHECK(std::abs(value(sol, {b - h, y}) - value(sol, {b + h, y})) <= 1e-6 * scale);
            CHECK(std::abs(dVdx(sol, {b - h, y}) - dVdx(sol, {b + h, y})) <= 1e-6 * scale);
            CHECK(std::abs(d2Vdx2(sol, {b - h, y}) - d2Vdx2(sol, {b + h, y})) <=
                  1e-5 * scale);
            // v_x and v_y continuous at x = alpha y + bstar.
            CHECK(std::abs(dVdx(sol, {s2 - h, y}) - dVdx(sol, {s2 + h, y})) <= 1e-6 * scale);
            CHECK(std::abs(dVdy(sol, {s2 - h, y}) - dVdy(sol, {s2 + h, y})) <= 1e-6 * scale);
        }
    }
}

TEST_CASE("closed-form derivatives match finite differences") {
    std::mt19937_64 g(111);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const BarrierSolution sol = solve(validate(oracles::random_params(g)));
        const double y = 0.3 + 2.0 * u(g);
        for (int k = 0; k < 30; ++k) {
            double x;
            switch (k % 3) {  // keep the 1e-5 stencil inside one region
                case 0: x = sol.bstar - 2.5 + 2.4 * u(g); break;
                case 1: x = sol.bstar + (0.1 + 0.8 * u(g)) * sol.params.alpha * y; break;
                default: x = sol.bstar + sol.params.alpha * y + 0.1 + 2.0 * u(g);
            }
            auto fx = [&](double xx) { return value(sol, {xx, y}); };
            auto fy = [&](double yy) { return value(sol, {x, yy}); };
            CHECK(std::abs(dVdx(sol, {x, y}) - oracles::central_diff(fx, x)) <= 1e-6);
            CHECK(std::abs(dVdy(sol, {x, y}) - oracles::central_diff(fy, y)) <= 1e-6);
            // wider stencil: 1e-5 would put f''-roundoff (eps/h^2) near 1e-4
            CHECK(std::abs(d2Vdx2(sol, {x, y}) - oracles::central_diff2(fx, x, 1e-4)) <=
                  1e-4);
        }
    }
}

TEST_CASE("u'' jumps at the barrier by Rn") {
    const BarrierSolution sol = solve(fixtures::p1());
    auto f = [&](double x) { return directional_u(sol, x); };
    const double left = oracles::central_diff2(f, sol.bstar - 1e-3, 1e-4);
    double expect = 0.0;
    for (std::size_t j = 0; j < sol.K.size(); ++j) {
        const double r = sol.roots.pos[j];
        expect += sol.K[j] * r * r * std::exp(r * (-1e-3));
    }
    CHECK(left == doctest::Approx(expect).epsilon(1e-4));
    CHECK(oracles::central_diff2(f, sol.bstar + 1e-3, 1e-4) ==
          doctest::Approx(0.0).epsilon(1e-6));
    CHECK(expect == doctest::Approx(sol.Rn).epsilon(1e-2));  // e^{r dx} ~ 1
}

TEST_CASE("growth bound and positivity") {
    std::mt19937_64 g(246);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const BarrierSolution sol = solve(validate(oracles::random_params(g)));
        std::vector<StatePoint> grid;
        for (int k = 0; k < 200; ++k)
            grid.push_back({sol.bstar - 4.0 + 10.0 * u(g), 0.05 + 4.0 * u(g)});
        const GrowthCheck gc = growth_bound_check(sol, grid);
        CHECK(gc.min_value >= 0.0);
        CHECK(gc.max_ratio <= gc.bound * (1.0 + 1e-12));
    }
}

TEST_CASE("alpha limits") {
    // Small alpha: value approaches y * u(x).
    ModelParams p = fixtures::p1();
    p.alpha = 1e-3;
    const BarrierSolution sol_small = solve(p);
    const StatePoint pt{1.5, 1.0};
    const double lim = limit_alpha_zero(sol_small, pt);
    CHECK(std::abs(value(sol_small, pt) - lim) <= 1e-2 * std::abs(lim));
    // Huge alpha: selling is ruinous, value collapses.
    p.alpha = 1e6;
    CHECK(value(solve(p), pt) < 1e-5);
}
