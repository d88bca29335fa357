#include "extraction/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace extraction {

namespace {

constexpr long kMaxEvals = 1000000;

double simpson(double h, double fa, double fm, double fb) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& g, double a, double b, double fa,
             double fm, double fb, double whole, double tol, int depth, long& evals) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    evals += 2;
    if (evals > kMaxEvals)
        throw QuadratureError("QuadratureNonConvergence",
                              "adaptive refinement exceeded evaluation budget");
    const double flm = g(lm);
    const double frm = g(rm);
    const double left = simpson(m - a, fa, flm, fm);
    const double right = simpson(b - m, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, evals) +
           adapt(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, evals);
}

double integrate(const std::function<double(double)>& g, double a, double b, double tol,
                 long& evals) {
    if (b <= a) return 0.0;
    const double m = 0.5 * (a + b);
    evals += 3;
    const double fa = g(a), fm = g(m), fb = g(b);
    return adapt(g, a, b, fa, fm, fb, simpson(b - a, fa, fm, fb), tol, 48, evals);
}

// One-sided jump expectation: sum_k w_k int_0^zmax f(x -+ z) beta_k e^{-beta z} dz,
// split at the supplied z-breakpoints (branch kinks of f).
double jump_integral(const JumpMix& mix, const std::function<double(double)>& f,
                     double x, int sign, const std::vector<double>& x_breaks,
                     long& evals) {
    double total = 0.0;
    for (std::size_t k = 0; k < mix.order(); ++k) {
        const double beta = mix.rates[k];
        const double zmax = std::log(1e16) / beta;
        std::vector<double> cuts{0.0, zmax};
        for (double xb : x_breaks) {
            const double z = sign > 0 ? xb - x : x - xb;
            if (z > 0.0 && z < zmax) cuts.push_back(z);
        }
        std::sort(cuts.begin(), cuts.end());
        auto g = [&](double z) {
            return f(x + sign * z) * beta * std::exp(-beta * z);
        };
        double part = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            part += integrate(g, cuts[i], cuts[i + 1], 1e-12, evals);
        total += mix.weights[k] * part;
    }
    return total;
}

}  // namespace

double residual_T(const BarrierSolution& sol, const StatePoint& pt) {
    return -sol.params.alpha * dVdx(sol, pt) - dVdy(sol, pt) + pt.x - sol.params.c;
}

double residual_H1(const BarrierSolution& sol, double x) {
    const ModelParams& p = sol.params;
    const double bc = sol.bstar - p.c;
    double s = 0.5 * p.sigma * p.sigma;
    double drift = p.mu;
    for (std::size_t k = 0; k < p.mix_n.order(); ++k) {
        s += p.lambda_n * p.mix_n.weights[k] / (p.mix_n.rates[k] * p.mix_n.rates[k]);
        drift -= p.lambda_n * p.mix_n.weights[k] / p.mix_n.rates[k];
    }
    for (std::size_t k = 0; k < p.mix_p.order(); ++k) {
        s += p.lambda_p * p.mix_p.weights[k] / (p.mix_p.rates[k] * p.mix_p.rates[k]);
        drift += p.lambda_p * p.mix_p.weights[k] / p.mix_p.rates[k];
    }
    s += (x - p.c) * drift;
    double sumKr = 0.0;
    for (std::size_t j = 0; j < sol.K.size(); ++j) sumKr += sol.K[j] / sol.roots.pos[j];
    s -= p.rho * (sumKr + 0.5 * ((x - p.c) * (x - p.c) - bc * bc));
    for (std::size_t k = 0; k < p.mix_n.order(); ++k) {
        const double beta = p.mix_n.rates[k];
        s -= p.lambda_n * p.mix_n.weights[k] * sol.Xi_n[k] / beta *
             std::exp(-beta * (x - sol.bstar));
    }
    return s / p.alpha;
}

double residual_H1_prime(const BarrierSolution& sol, double x) {
    const ModelParams& p = sol.params;
    double s = p.rho * (x - sol.bstar) + 0.5 * p.sigma * p.sigma * sol.Rn;
    for (std::size_t k = 0; k < p.mix_n.order(); ++k) {
        const double beta = p.mix_n.rates[k];
        s += p.lambda_n * p.mix_n.weights[k] * sol.Xi_n[k] *
             (-std::expm1(-beta * (x - sol.bstar)));
    }
    return -s / p.alpha;
}

double residual_H2(const BarrierSolution& sol, const StatePoint& pt,
                   bool sigma_squared_variant) {
    const ModelParams& p = sol.params;
    const double y = pt.y;
    const double diff_term = sigma_squared_variant ? 0.5 * p.sigma * p.sigma : 0.5 * p.sigma;
    double s = -p.rho * y * (pt.x - sol.bstar - 0.5 * p.alpha * y) - y * sol.Rn * diff_term;
    for (std::size_t k = 0; k < p.mix_n.order(); ++k) {
        const double beta = p.mix_n.rates[k];
        // (e^{alpha beta y} - 1) e^{-beta(x-b)} written as a difference of
        // decaying exponentials; x - b - alpha y >= 0 here, so no overflow.
        const double expo = std::exp(-beta * (pt.x - sol.bstar - p.alpha * y)) -
                            std::exp(-beta * (pt.x - sol.bstar));
        s -= p.lambda_n * p.mix_n.weights[k] * sol.Xi_n[k] *
             (y - expo / (p.alpha * beta));
    }
    return s;
}

double residual_gamma_u(const BarrierSolution& sol, double x) {
    if (x < sol.bstar) return 0.0;  // each exponential term carries p(r_j) = 0
    const ModelParams& p = sol.params;
    double s = p.mu - p.rho * (x - p.c);
    for (std::size_t k = 0; k < p.mix_n.order(); ++k)
        s -= p.lambda_n * p.mix_n.weights[k] / p.mix_n.rates[k];
    for (std::size_t k = 0; k < p.mix_p.order(); ++k)
        s += p.lambda_p * p.mix_p.weights[k] / p.mix_p.rates[k];
    for (std::size_t k = 0; k < p.mix_n.order(); ++k)
        s += p.lambda_n * p.mix_n.weights[k] * sol.Xi_n[k] *
             std::exp(-p.mix_n.rates[k] * (x - sol.bstar));
    return s;
}

double generator_quadrature(const ModelParams& p, const std::function<double(double)>& f,
                            double f1, double f2, double x,
                            const std::vector<double>& f_breakpoints) {
    long evals = 0;
    double s = 0.5 * p.sigma * p.sigma * f2 + p.mu * f1 -
               (p.rho + p.lambda_n + p.lambda_p) * f(x);
    if (p.lambda_n > 0.0)
        s += p.lambda_n * jump_integral(p.mix_n, f, x, -1, f_breakpoints, evals);
    if (p.lambda_p > 0.0)
        s += p.lambda_p * jump_integral(p.mix_p, f, x, +1, f_breakpoints, evals);
    return s;
}

double generator_value_quadrature(const BarrierSolution& sol, const StatePoint& pt) {
    auto f = [&](double x) { return value(sol, {x, pt.y}); };
    return generator_quadrature(
        sol.params, f, dVdx(sol, pt), d2Vdx2(sol, pt), pt.x,
        {sol.bstar, sol.bstar + sol.params.alpha * pt.y});
}

double generator_u_quadrature(const BarrierSolution& sol, double x) {
    auto f = [&](double xx) { return directional_u(sol, xx); };
    const double f2 = x < sol.bstar ? [&] {
        double s = 0.0;
        for (std::size_t j = 0; j < sol.K.size(); ++j) {
            const double r = sol.roots.pos[j];
            s += sol.K[j] * r * r * std::exp(r * (x - sol.bstar));
        }
        return s;
    }()
                                    : 0.0;
    return generator_quadrature(sol.params, f, directional_u_prime(sol, x), f2, x,
                                {sol.bstar});
}

HjbReport run_verification(const BarrierSolution& sol) {
    HjbReport rep;
    const double b = sol.bstar;
    const double span = std::max(1.0, b - sol.params.c);

    std::vector<double> offsets;  // distances from a boundary
    for (int k = 1; k <= 20; ++k) offsets.push_back(std::ldexp(1.0, -k));
    for (int j = 1; j <= 10; ++j) offsets.push_back(j * span);
    std::sort(offsets.begin(), offsets.end());  // ascending, for monotonic sweeps

    const std::vector<double> ys{0.5, 1.0, 2.0};

    rep.max_Tv_waiting = -std::numeric_limits<double>::infinity();
    rep.max_H1 = -std::numeric_limits<double>::infinity();
    rep.max_H2 = -std::numeric_limits<double>::infinity();

    // Waiting region: gradient constraint strictly slack, generator ~0.
    for (double d : offsets)
        for (double y : ys)
            rep.max_Tv_waiting = std::max(rep.max_Tv_waiting, residual_T(sol, {b - d, y}));
    for (int k : {1, 3, 6, 10, 16})
        rep.max_abs_Dv_waiting =
            std::max(rep.max_abs_Dv_waiting,
                     std::abs(generator_value_quadrature(sol, {b - std::ldexp(1.0, -k), 1.0})));
    for (double d : {0.5 * span, 2.0 * span, 5.0 * span})
        rep.max_abs_Dv_waiting = std::max(
            rep.max_abs_Dv_waiting, std::abs(generator_value_quadrature(sol, {b - d, 1.0})));

    // Selling regions: gradient constraint exactly active.
    for (double y : ys) {
        for (double t : {0.1, 0.5, 0.9})
            rep.max_abs_Tv_selling =
                std::max(rep.max_abs_Tv_selling,
                         std::abs(residual_T(sol, {b + t * sol.params.alpha * y, y})));
        for (double d : offsets)
            rep.max_abs_Tv_selling = std::max(
                rep.max_abs_Tv_selling,
                std::abs(residual_T(sol, {b + sol.params.alpha * y + d, y})));
    }

    // Partial-sell strip: analytic H1 vs quadrature, sign, monotonicity.
    rep.h1_at_bstar = residual_H1(sol, b);
    double prev = 0.0;
    bool first = true;
    for (double d : offsets) {
        const double h = residual_H1(sol, b + d);
        rep.max_H1 = std::max(rep.max_H1, h);
        if (!first && h >= prev) rep.max_H1 = std::max(rep.max_H1, 0.0);  // not decreasing
        prev = h;
        first = false;
    }
    for (double y : ys)
        for (double t : {0.25, 0.75}) {
            const StatePoint pt{b + t * sol.params.alpha * y, y};
            rep.max_quad_mismatch =
                std::max(rep.max_quad_mismatch,
                         std::abs(residual_H1(sol, pt.x) - generator_value_quadrature(sol, pt)));
        }

    // Full-sell region: both H2 variants vs quadrature; keep the matching one.
    double mis_sq = 0.0, mis_lin = 0.0;
    for (double y : ys)
        for (double d : {0.25 * span, span, 3.0 * span}) {
            const StatePoint pt{b + sol.params.alpha * y + d, y};
            const double q = generator_value_quadrature(sol, pt);
            mis_sq = std::max(mis_sq, std::abs(residual_H2(sol, pt, true) - q));
            mis_lin = std::max(mis_lin, std::abs(residual_H2(sol, pt, false) - q));
        }
    rep.h2_sigma_squared = mis_sq <= mis_lin;
    rep.h2_variant_mismatch = std::min(mis_sq, mis_lin);
    rep.max_quad_mismatch = std::max(rep.max_quad_mismatch, rep.h2_variant_mismatch);
    for (double y : ys)
        for (double d : offsets)
            rep.max_H2 = std::max(
                rep.max_H2, residual_H2(sol, {b + sol.params.alpha * y + d, y},
                                        rep.h2_sigma_squared));

    // Stopping-problem generator: ~0 below the barrier, displayed form above.
    for (double d : {0.1 * span, 0.5 * span, span, 3.0 * span})
        rep.max_abs_gamma_u_below =
            std::max(rep.max_abs_gamma_u_below, std::abs(generator_u_quadrature(sol, b - d)));
    rep.gamma_u_at_bstar = residual_gamma_u(sol, b);
    for (double d : {0.25 * span, span, 3.0 * span})
        rep.max_quad_mismatch = std::max(
            rep.max_quad_mismatch,
            std::abs(residual_gamma_u(sol, b + d) - generator_u_quadrature(sol, b + d)));

    return rep;
}

bool verification_passes(const HjbReport& rep, const BarrierSolution& sol) {
    const double target = -0.5 * sol.params.sigma * sol.params.sigma * sol.Rn;
    const double scale = 1.0 + std::abs(sol.bstar) + std::abs(target);
    return rep.max_Tv_waiting < 0.0 && rep.max_abs_Tv_selling <= 1e-9 * scale &&
           std::abs(rep.h1_at_bstar) <= 1e-9 * scale && rep.max_H1 < 0.0 &&
           rep.max_H2 < 0.0 && rep.max_abs_Dv_waiting <= 1e-7 * scale &&
           rep.max_abs_gamma_u_below <= 1e-7 * scale &&
           std::abs(rep.gamma_u_at_bstar - target) <= 1e-9 * scale &&
           rep.max_quad_mismatch <= 1e-7 * scale;
}

}  // namespace extraction
