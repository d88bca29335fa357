#include "extraction/model.hpp"

#include <cmath>
#include <string>

namespace extraction {

namespace {

constexpr double kWeightSumTol = 1e-12;

void check_mixture(const JumpMix& mix, double lambda, const char* side) {
    const std::string tag(side);
    if (mix.weights.size() != mix.rates.size())
        throw ValidationError("BadMixture", "mix_" + tag + ": weights/rates size mismatch");
    if (mix.order() == 0) {
        if (lambda != 0.0)
            throw ValidationError("BadMixture",
                                  "lambda_" + tag + " > 0 requires a nonempty mixture");
        return;
    }
    if (lambda == 0.0)
        throw ValidationError("BadMixture",
                              "mix_" + tag + " nonempty but lambda_" + tag + " = 0");
    double sum = 0.0;
    for (double w : mix.weights) {
        if (!(w > 0.0))
            throw ValidationError("BadMixture", "mix_" + tag + ": weight not positive");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kWeightSumTol)
        throw ValidationError("BadMixture",
                              "mix_" + tag + ": weights sum to " + std::to_string(sum));
    double prev = 0.0;
    for (double b : mix.rates) {
        if (!(b > prev))
            throw ValidationError("BadMixture",
                                  "mix_" + tag + ": rates not strictly increasing");
        prev = b;
    }
}

}  // namespace

double JumpMix::mean() const {
    double s = 0.0;
    for (std::size_t k = 0; k < rates.size(); ++k) s += weights[k] / rates[k];
    return s;
}

double JumpMix::cdf(double z) const {
    if (z <= 0.0) return 0.0;
    double tail = 0.0;
    for (std::size_t k = 0; k < rates.size(); ++k) tail += weights[k] * std::exp(-rates[k] * z);
    return 1.0 - tail;
}

double JumpMix::second_moment() const {
    double s = 0.0;
    for (std::size_t k = 0; k < rates.size(); ++k)
        s += 2.0 * weights[k] / (rates[k] * rates[k]);
    return s;
}

const ModelParams& validate(const ModelParams& p) {
    if (!(p.sigma > 0.0)) throw ValidationError("NonPositive", "sigma must be > 0");
    if (!(p.rho > 0.0)) throw ValidationError("NonPositive", "rho must be > 0");
    if (!(p.alpha > 0.0)) throw ValidationError("NonPositive", "alpha must be > 0");
    if (!(p.c > 0.0)) throw ValidationError("NonPositive", "c must be > 0");
    if (!(p.lambda_n >= 0.0)) throw ValidationError("NonPositive", "lambda_n must be >= 0");
    if (!(p.lambda_p >= 0.0)) throw ValidationError("NonPositive", "lambda_p must be >= 0");
    check_mixture(p.mix_n, p.lambda_n, "n");
    check_mixture(p.mix_p, p.lambda_p, "p");
    return p;
}

double sample_jump(const JumpMix& mix, double u1, double u2) {
    if (mix.empty()) throw ValidationError("EmptyMixture", "cannot sample from empty mixture");
    std::size_t k = 0;
    double cum = mix.weights[0];
    while (k + 1 < mix.weights.size() && u1 >= cum) {
        ++k;
        cum += mix.weights[k];
    }
    return -std::log(u2) / mix.rates[k];
}

}  // namespace extraction
