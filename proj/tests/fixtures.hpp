// The two hand-checkable parameter sets used across the test suite.
#pragma once

#include <cmath>

#include "extraction/model.hpp"

namespace fixtures {

// No jumps, unit everything: p(r) = r^2 - 1, roots +-1, bstar = 2, K = {1},
// v(1,2) = (1 - e^{-2}) e^{-1}.
inline extraction::ModelParams p0() {
    extraction::ModelParams p;
    p.mu = 0.0;
    p.sigma = std::sqrt(2.0);
    p.rho = 1.0;
    p.alpha = 1.0;
    p.c = 1.0;
    return p;
}

// One jump component on each side.
inline extraction::ModelParams p1() {
    extraction::ModelParams p;
    p.mu = 0.05;
    p.sigma = 0.4;
    p.rho = 0.1;
    p.alpha = 0.5;
    p.c = 1.0;
    p.lambda_n = 0.8;
    p.mix_n.weights = {1.0};
    p.mix_n.rates = {2.0};
    p.lambda_p = 0.6;
    p.mix_p.weights = {1.0};
    p.mix_p.rates = {3.0};
    return p;
}

}  // namespace fixtures
