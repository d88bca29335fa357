#include "extraction/value.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace extraction {

namespace {

// 1 - e^{-z} without cancellation for small z.
double one_minus_exp(double z) { return -std::expm1(-z); }

}  // namespace

const char* region_name(Region r) {
    switch (r) {
        case Region::Waiting: return "waiting";
        case Region::PartialSell: return "partial_sell";
        case Region::FullSell: return "full_sell";
    }
    return "?";
}

Region classify(const BarrierSolution& sol, const StatePoint& pt) {
    if (pt.y < 0.0) throw ValidationError("NegativeInventory", "y must be >= 0");
    if (pt.x < sol.bstar) return Region::Waiting;
    if (pt.x >= sol.params.alpha * pt.y + sol.bstar) return Region::FullSell;
    return Region::PartialSell;
}

double value(const BarrierSolution& sol, const StatePoint& pt) {
    const double a = sol.params.alpha;
    const double b = sol.bstar;
    const double c = sol.params.c;
    switch (classify(sol, pt)) {
        case Region::Waiting: {
            double v = 0.0;
            for (std::size_t j = 0; j < sol.K.size(); ++j) {
                const double r = sol.roots.pos[j];
                v += sol.K[j] / (a * r) * one_minus_exp(a * r * pt.y) *
                     std::exp(r * (pt.x - b));
            }
            return v;
        }
        case Region::PartialSell: {
            double v = ((pt.x - c) * (pt.x - c) - (b - c) * (b - c)) / (2.0 * a);
            for (std::size_t j = 0; j < sol.K.size(); ++j) {
                const double r = sol.roots.pos[j];
                v += sol.K[j] / (a * r) * one_minus_exp(r * (a * pt.y - (pt.x - b)));
            }
            return v;
        }
        case Region::FullSell:
            return (pt.x - c) * pt.y - 0.5 * a * pt.y * pt.y;
    }
    return 0.0;
}

double dVdx(const BarrierSolution& sol, const StatePoint& pt) {
    const double a = sol.params.alpha;
    const double b = sol.bstar;
    switch (classify(sol, pt)) {
        case Region::Waiting: {
            double v = 0.0;
            for (std::size_t j = 0; j < sol.K.size(); ++j) {
                const double r = sol.roots.pos[j];
                v += sol.K[j] / a * one_minus_exp(a * r * pt.y) * std::exp(r * (pt.x - b));
            }
            return v;
        }
        case Region::PartialSell: {
            double v = (pt.x - sol.params.c) / a;
            for (std::size_t j = 0; j < sol.K.size(); ++j) {
                const double r = sol.roots.pos[j];
                v -= sol.K[j] / a * std::exp(r * (pt.x - b - a * pt.y));
            }
            return v;
        }
        case Region::FullSell:
            return pt.y;
    }
    return 0.0;
}

double d2Vdx2(const BarrierSolution& sol, const StatePoint& pt) {
    const double a = sol.params.alpha;
    const double b = sol.bstar;
    switch (classify(sol, pt)) {
        case Region::Waiting: {
            double v = 0.0;
            for (std::size_t j = 0; j < sol.K.size(); ++j) {
                const double r = sol.roots.pos[j];
                v += sol.K[j] * r / a * one_minus_exp(a * r * pt.y) *
                     std::exp(r * (pt.x - b));
            }
            return v;
        }
        case Region::PartialSell: {
            double v = 0.0;
            for (std::size_t j = 0; j < sol.K.size(); ++j) {
                const double r = sol.roots.pos[j];
                v += sol.K[j] * r / a * one_minus_exp(-r * (pt.x - b - a * pt.y));
            }
            return v;
        }
        case Region::FullSell:
            return 0.0;
    }
    return 0.0;
}

double dVdy(const BarrierSolution& sol, const StatePoint& pt) {
    switch (classify(sol, pt)) {
        case Region::Waiting:
        case Region::PartialSell: {
            double v = 0.0;
            for (std::size_t j = 0; j < sol.K.size(); ++j) {
                const double r = sol.roots.pos[j];
                v += sol.K[j] * std::exp(r * (pt.x - sol.bstar - sol.params.alpha * pt.y));
            }
            return v;
        }
        case Region::FullSell:
            return pt.x - sol.params.alpha * pt.y - sol.params.c;
    }
    return 0.0;
}

double directional_u(const BarrierSolution& sol, double x) {
    if (x >= sol.bstar) return x - sol.params.c;
    double v = 0.0;
    for (std::size_t j = 0; j < sol.K.size(); ++j)
        v += sol.K[j] * std::exp(sol.roots.pos[j] * (x - sol.bstar));
    return v;
}

double directional_u_prime(const BarrierSolution& sol, double x) {
    if (x >= sol.bstar) return 1.0;
    double v = 0.0;
    for (std::size_t j = 0; j < sol.K.size(); ++j)
        v += sol.K[j] * sol.roots.pos[j] * std::exp(sol.roots.pos[j] * (x - sol.bstar));
    return v;
}

GrowthCheck growth_bound_check(const BarrierSolution& sol,
                               const std::vector<StatePoint>& grid) {
    GrowthCheck gc;
    const double k1 = sol.bstar - sol.params.c;
    // The 1 covers the full-sell region for c < 1, where (x-c)y can approach
    // y(1+|x|) as x grows; the per-region constants alone are not enough there.
    gc.bound = std::max({k1, 0.5 * sol.params.alpha, sol.params.c, 1.0});
    gc.min_value = std::numeric_limits<double>::infinity();
    for (const StatePoint& pt : grid) {
        const double v = value(sol, pt);
        gc.min_value = std::min(gc.min_value, v);
        if (pt.y > 0.0)
            gc.max_ratio = std::max(
                gc.max_ratio, v / (pt.y * (1.0 + pt.y) * (1.0 + std::abs(pt.x))));
    }
    return gc;
}

double limit_alpha_zero(const BarrierSolution& sol, const StatePoint& pt) {
    return pt.y * directional_u(sol, pt.x);
}

}  // namespace extraction
