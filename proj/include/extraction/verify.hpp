#pragma once

#include <functional>

#include "extraction/value.hpp"

namespace extraction {

// Gradient constraint -alpha*v_x - v_y + x - c: identically 0 on the selling
// regions, strictly negative on the waiting region.
double residual_T(const BarrierSolution& sol, const StatePoint& pt);

// Analytic generator value on the partial-sell strip (depends on x only).
double residual_H1(const BarrierSolution& sol, double x);
double residual_H1_prime(const BarrierSolution& sol, double x);

// Analytic generator value on the full-sell region. The two variants differ in
// one diffusion term (sigma^2/2 vs sigma/2); run_verification quadrature-tests
// both and only the matching one feeds assertions.
double residual_H2(const BarrierSolution& sol, const StatePoint& pt,
                   bool sigma_squared_variant);

// Analytic Gamma u: 0 below the barrier (each exponential carries a
// characteristic-equation factor), the displayed decreasing negative form above.
double residual_gamma_u(const BarrierSolution& sol, double x);

// Generator of f at x via adaptive Simpson quadrature of the two jump
// integrals, with derivative terms supplied by the caller. Splits at the given
// breakpoints of f, truncates where the exponential weight drops below 1e-16,
// throws QuadratureError("QuadratureNonConvergence") past 1e6 evaluations.
double generator_quadrature(const ModelParams& p, const std::function<double(double)>& f,
                            double f1, double f2, double x,
                            const std::vector<double>& f_breakpoints);

// Convenience wrappers: D v(., y) and Gamma u at x.
double generator_value_quadrature(const BarrierSolution& sol, const StatePoint& pt);
double generator_u_quadrature(const BarrierSolution& sol, double x);

struct HjbReport {
    double max_Tv_waiting = 0.0;       // should be < 0 (strict slackness)
    double max_abs_Tv_selling = 0.0;   // should be ~0
    double h1_at_bstar = 0.0;          // should be ~0
    double max_H1 = 0.0;               // over x > bstar, should be < 0
    double max_H2 = 0.0;               // over the full-sell grid, should be < 0
    double max_abs_Dv_waiting = 0.0;   // quadrature, should be ~0
    double max_abs_gamma_u_below = 0.0;  // quadrature, should be ~0
    double gamma_u_at_bstar = 0.0;     // should equal -sigma^2 Rn / 2
    double max_quad_mismatch = 0.0;    // analytic vs quadrature, above barrier
    bool h2_sigma_squared = true;      // which H2 variant matched quadrature
    double h2_variant_mismatch = 0.0;  // quadrature gap of the matching variant
};

// Full grid sweep: geometric spacing bstar +/- 2^-k (k=1..20) plus a uniform
// far field, at several inventory levels.
HjbReport run_verification(const BarrierSolution& sol);

// Pinned pass/fail gate on one report: signs strict, near-zero quantities
// within 1e-7 (quadrature-backed) or 1e-9 relative (analytic).
bool verification_passes(const HjbReport& rep, const BarrierSolution& sol);

}  // namespace extraction
