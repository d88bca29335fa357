#pragma once

#include <string>
#include <vector>

#include "extraction/value.hpp"

namespace extraction {

// Returns a copy of base with the named scalar parameter replaced; names are
// the JSON keys (mu, sigma, rho, alpha, c, lambda_n, lambda_p).
ModelParams with_param(const ModelParams& base, const std::string& name, double v);

enum class Trend { Increasing, Decreasing, Constant, Mixed };
const char* trend_name(Trend t);

// Strict comparisons with slack 1e-10 * |value| to absorb solver noise.
Trend classify_sequence(const std::vector<double>& v);

struct SweepReport {
    std::string parameter;
    std::vector<double> grid;
    std::vector<double> bstar;                // per grid value
    std::vector<std::vector<double>> values;  // [probe][grid], for value sweeps
    std::vector<StatePoint> probes;
    Trend bstar_trend = Trend::Mixed;
    std::vector<Trend> value_trends;  // per probe
    bool asserted = false;     // proven claim (assert) vs conjecture (report only)
    bool trend_holds = false;  // verdict for the expected trend, asserted or not
    std::string note;          // e.g. the conjecture flag for lambda_p
};

// b* across the grid. Asserts increasing in sigma and mu, decreasing in
// lambda_n, constant in alpha; the lambda_p trend is reported only (flagged as
// a conjecture).
SweepReport sweep_bstar(const ModelParams& base, const std::string& parameter,
                        const std::vector<double>& grid);

// Value function at each probe across the grid. Nondecreasing in mu, sigma,
// lambda_p; nonincreasing in lambda_n.
SweepReport sweep_value(const ModelParams& base, const std::string& parameter,
                        const std::vector<double>& grid,
                        const std::vector<StatePoint>& probes);

struct RootSweepReport {
    std::string parameter;
    std::vector<double> grid;
    std::vector<std::vector<double>> pos;  // [grid][root index]
    std::vector<std::vector<double>> neg;
    std::vector<Trend> pos_trends;  // per root index
    std::vector<Trend> neg_trends;
    bool asserted_ok = false;  // the unconditionally monotone claims
    int split_index = -1;      // observed split for the mixed lambda cases
    std::string note;
};

// Per-root trends across the grid. Unconditional claims (asserted): sigma —
// positive roots decrease, negative roots increase; mu — all roots decrease;
// lambda_n — positive roots increase; lambda_p — negative roots decrease. The
// split behavior of lambda_p on positive roots (and lambda_n on negative
// roots) is reported with the observed split index, never asserted.
RootSweepReport sweep_roots(const ModelParams& base, const std::string& parameter,
                            const std::vector<double>& grid);

}  // namespace extraction
