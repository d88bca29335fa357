#pragma once

#include <cstddef>
#include <vector>

#include "extraction/errors.hpp"

namespace extraction {

// One hyper-exponential jump-size mixture: density sum_k w[k]*beta[k]*exp(-beta[k]*z)
// on z > 0. An empty mixture (m = 0) means "no jumps on that side" and is only
// admissible together with a zero intensity.
struct JumpMix {
    std::vector<double> weights;  // w_1..w_m, each > 0, summing to 1
    std::vector<double> rates;    // beta_1..beta_m, strictly increasing

    std::size_t order() const noexcept { return rates.size(); }
    bool empty() const noexcept { return rates.empty(); }

    // E[Z] = sum w_k / beta_k
    double mean() const;
    // F(z) = 1 - sum w_k exp(-beta_k z)
    double cdf(double z) const;
    // E[Z^2] = sum 2 w_k / beta_k^2
    double second_moment() const;
};

struct ModelParams {
    double mu = 0.0;      // price drift
    double sigma = 0.0;   // diffusion volatility, > 0
    double rho = 0.0;     // discount rate, > 0
    double alpha = 0.0;   // price impact per unit sold, > 0
    double c = 0.0;       // transaction cost, > 0
    double lambda_n = 0.0;  // negative-jump intensity, >= 0
    double lambda_p = 0.0;  // positive-jump intensity, >= 0
    JumpMix mix_n;
    JumpMix mix_p;
};

// Throws ValidationError (kind "NonPositive" or "BadMixture") unless every
// invariant holds; returns the params unchanged otherwise. Weights must sum to
// 1 within 1e-12 -- off weights are rejected, never renormalized.
const ModelParams& validate(const ModelParams& params);

// Inverse-CDF sampling of one jump size from explicit uniforms: u1 selects the
// mixture component against the cumulative weights, u2 feeds the exponential.
// Throws ValidationError("EmptyMixture") when the mixture has order 0.
double sample_jump(const JumpMix& mix, double u1, double u2);

}  // namespace extraction
