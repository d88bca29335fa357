#pragma once

#include <cstdint>
#include <vector>

#include "extraction/model.hpp"

namespace extraction {

struct PathConfig {
    double dt = 0.0;       // time step; default 1e-3 / rho
    double horizon = 0.0;  // default ln(1e9)/rho so e^{-rho T} = 1e-9
    std::uint64_t seed = 0;
    long paths = 200000;
    int threads = 1;
};

// Fills dt/horizon defaults from rho; leaves explicit settings untouched.
PathConfig default_config(const ModelParams& p, std::uint64_t seed, long paths);

struct SimEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;  // sample std / sqrt(paths)
    long paths = 0;
    double truncated_fraction = 0.0;  // paths reaching the horizon unfinished
    PathConfig config;
};

// One uncontrolled path of X^0 for inspection/tests: grid samples plus exact
// jump times and signed sizes. Deterministic in (seed, path_index).
struct PathRecord {
    std::vector<double> times;
    std::vector<double> values;       // X^0 at each time
    std::vector<double> jump_times;   // subset of times where a jump landed
    std::vector<double> jump_sizes;   // signed: >0 upward, <0 downward
};
PathRecord simulate_path(const ModelParams& p, double x0, const PathConfig& cfg,
                         std::uint64_t path_index);

// Barrier-strategy evaluation target: start at (x0, y0), sell against level b.
struct ValueProbe {
    double x0 = 0.0;
    double y0 = 0.0;
    double b = 0.0;
};

// Monte Carlo mean of the discounted profit functional for each probe. All
// probes share the same per-path random streams (common random numbers), so
// barrier comparisons see correlated noise. Estimates are bit-deterministic in
// (seed, config) regardless of thread count: per-path results are stored by
// path index and reduced sequentially.
std::vector<SimEstimate> mc_value_multi(const ModelParams& p,
                                        const std::vector<ValueProbe>& probes,
                                        const PathConfig& cfg);
SimEstimate mc_value(const ModelParams& p, double x0, double y0, double b,
                     const PathConfig& cfg);

// First passage of X^0 to [bstar, inf): discounted payoff e^{-rho tau}(X_tau - c),
// zero if the horizon is reached first. overshoot_fraction counts stops caused
// by an upward jump carrying X strictly past the threshold.
struct StopEstimate {
    SimEstimate est;
    double overshoot_fraction = 0.0;
};
std::vector<StopEstimate> mc_stopping_multi(const ModelParams& p,
                                            const std::vector<double>& x0s, double bstar,
                                            const PathConfig& cfg);
StopEstimate mc_stopping(const ModelParams& p, double x0, double bstar,
                         const PathConfig& cfg);

}  // namespace extraction
