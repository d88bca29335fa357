#pragma once

#include <vector>

#include "extraction/solver.hpp"

namespace extraction {

struct StatePoint {
    double x = 0.0;  // price
    double y = 0.0;  // inventory, >= 0
};

// Half-open convention: x = bstar belongs to PartialSell, x = alpha*y + bstar
// to FullSell, so classification is total and deterministic. The value itself
// is branch-independent at the boundaries (smooth fit).
enum class Region { Waiting, PartialSell, FullSell };

const char* region_name(Region r);

Region classify(const BarrierSolution& sol, const StatePoint& pt);

// Piecewise closed-form expected optimal profit. 1 - e^{-z} terms go through
// expm1 so the small-alpha*r*y regime keeps full precision.
double value(const BarrierSolution& sol, const StatePoint& pt);

double dVdx(const BarrierSolution& sol, const StatePoint& pt);
double d2Vdx2(const BarrierSolution& sol, const StatePoint& pt);
double dVdy(const BarrierSolution& sol, const StatePoint& pt);

// u(x) = alpha*dVdx + dVdy collapses to a function of x alone:
// sum K e^{r(x-b)} below the barrier, x - c above. Marginal value of a unit of
// inventory; also the optimal-stopping value.
double directional_u(const BarrierSolution& sol, double x);
double directional_u_prime(const BarrierSolution& sol, double x);

// Max of v / (y (1+y)(1+|x|)) over the grid; the growth bound asserts this
// stays below max{bstar-c, alpha/2, c}. Also checks v >= 0 pointwise.
struct GrowthCheck {
    double max_ratio = 0.0;
    double bound = 0.0;
    double min_value = 0.0;
};
GrowthCheck growth_bound_check(const BarrierSolution& sol,
                               const std::vector<StatePoint>& grid);

// Pointwise limit of the value as alpha -> 0 (bstar and K are alpha-free):
// y * sum K e^{r(x-b)} below the barrier, (x-c) y above.
double limit_alpha_zero(const BarrierSolution& sol, const StatePoint& pt);

}  // namespace extraction
