#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "extraction/model.hpp"
#include "extraction/rng.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace extraction;

TEST_CASE("validate accepts the fixtures and round-trips them") {
    CHECK_NOTHROW(validate(fixtures::p0()));
    CHECK_NOTHROW(validate(fixtures::p1()));
}

TEST_CASE("validate rejects bad scalars") {
    auto expect_kind = [](ModelParams p, const std::string& kind) {
        try {
            validate(p);
            FAIL_CHECK("expected a ValidationError");
        } catch (const ValidationError& e) {
            CHECK(e.kind() == kind);
        }
    };
    ModelParams p = fixtures::p1();
    p.sigma = 0.0;
    expect_kind(p, "NonPositive");
    p = fixtures::p1();
    p.rho = -0.1;
    expect_kind(p, "NonPositive");
    p = fixtures::p1();
    p.alpha = 0.0;
    expect_kind(p, "NonPositive");
    p = fixtures::p1();
    p.c = 0.0;
    expect_kind(p, "NonPositive");
}

TEST_CASE("validate rejects inconsistent mixtures") {
    auto expect_bad = [](ModelParams p) {
        CHECK_THROWS_AS(validate(p), ValidationError);
    };
    ModelParams p = fixtures::p1();
    p.mix_n.weights = {0.5, 0.5 + 1e-6};  // weights off by > 1e-12
    p.mix_n.rates = {1.0, 2.0};
    expect_bad(p);
    p = fixtures::p1();
    p.mix_n.rates = {2.0, 2.0};  // not strictly increasing
    p.mix_n.weights = {0.5, 0.5};
    expect_bad(p);
    p = fixtures::p1();
    p.lambda_n = 0.5;
    p.mix_n = {};  // intensity without a mixture
    expect_bad(p);
    p = fixtures::p1();
    p.lambda_n = 0.0;  // mixture without intensity
    expect_bad(p);
    p = fixtures::p1();
    p.mix_n.weights = {-0.2, 1.2};
    p.mix_n.rates = {1.0, 2.0};
    expect_bad(p);
}

TEST_CASE("mixture moments") {
    JumpMix mix;
    mix.weights = {0.3, 0.7};
    mix.rates = {1.0, 5.0};
    CHECK(mix.mean() == doctest::Approx(0.3 + 0.7 / 5.0).epsilon(1e-14));
    CHECK(mix.second_moment() ==
          doctest::Approx(2 * 0.3 + 2 * 0.7 / 25.0).epsilon(1e-14));
    CHECK(mix.cdf(0.0) == doctest::Approx(0.0));
    CHECK(mix.cdf(1.0) ==
          doctest::Approx(1.0 - 0.3 * std::exp(-1.0) - 0.7 * std::exp(-5.0))
              .epsilon(1e-14));
}

TEST_CASE("sample_jump pinned examples") {
    JumpMix one;
    one.weights = {1.0};
    one.rates = {2.0};
    CHECK(sample_jump(one, 0.5, std::exp(-2.0)) == doctest::Approx(1.0).epsilon(1e-14));

    JumpMix two;
    two.weights = {0.3, 0.7};
    two.rates = {1.0, 5.0};
    // u1 = 0.2 < 0.3 selects the first component (rate 1).
    CHECK(sample_jump(two, 0.2, std::exp(-3.0)) == doctest::Approx(3.0).epsilon(1e-13));
    // u1 = 0.9 selects the second (rate 5).
    CHECK(sample_jump(two, 0.9, std::exp(-3.0)) == doctest::Approx(0.6).epsilon(1e-13));

    CHECK_THROWS_AS(sample_jump(JumpMix{}, 0.5, 0.5), ValidationError);
}

TEST_CASE("sampled mean matches sum w/beta within 3 stderr") {
    JumpMix mix;
    mix.weights = {0.3, 0.7};
    mix.rates = {1.0, 5.0};
    Rng rng(42);
    const long n = 1000000;
    double sum = 0.0, ss = 0.0;
    for (long i = 0; i < n; ++i) {
        const double z = sample_jump(mix, rng.uniform(), rng.uniform());
        sum += z;
        ss += z * z;
    }
    const double mean = sum / n;
    const double sd = std::sqrt((ss / n - mean * mean) / (n - 1.0));
    CHECK(std::abs(mean - 0.44) <= 3.0 * sd);
}

TEST_CASE("empirical CDF passes a 1% Kolmogorov-Smirnov test") {
    JumpMix mix;
    mix.weights = {0.3, 0.7};
    mix.rates = {1.0, 5.0};
    Rng rng(7);
    const long n = 100000;
    std::vector<double> z(n);
    for (double& x : z) x = sample_jump(mix, rng.uniform(), rng.uniform());
    std::sort(z.begin(), z.end());
    double ks = 0.0;
    for (long i = 0; i < n; ++i) {
        const double F = mix.cdf(z[i]);
        ks = std::max(ks, std::max(F - static_cast<double>(i) / n,
                                   static_cast<double>(i + 1) / n - F));
    }
    CHECK(ks < 1.628 / std::sqrt(static_cast<double>(n)));  // 1% critical value
}

TEST_CASE("random instance generator always validates") {
    std::mt19937_64 g(1234);
    for (int i = 0; i < 200; ++i) CHECK_NOTHROW(validate(oracles::random_params(g)));
}
