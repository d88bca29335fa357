#include "extraction/roots.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace extraction {

namespace {

constexpr int kMaxDoublings = 64;
constexpr int kMaxNewton = 50;

double bisect_then_polish(const ModelParams& p, double lo, double hi) {
    double flo = char_eval_poly(p, lo);
    double fhi = char_eval_poly(p, hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw SolverError("BracketFailure",
                          "no sign change on [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
    const double target = 1e-13 * (hi - lo);
    while (hi - lo > target) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // hit floating-point resolution
        const double fm = char_eval_poly(p, mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    const double mid = 0.5 * (lo + hi);

    // Newton sharpening on Q with a central-difference slope; the bracket
    // already pins the root, so any misstep falls back to the midpoint.
    double r = mid;
    for (int it = 0; it < kMaxNewton; ++it) {
        const double h = 1e-7 * (1.0 + std::abs(r));
        const double d = (char_eval_poly(p, r + h) - char_eval_poly(p, r - h)) / (2.0 * h);
        if (d == 0.0) break;
        const double step = char_eval_poly(p, r) / d;
        const double next = r - step;
        if (next < lo || next > hi) return mid;
        r = next;
        if (std::abs(step) <= 1e-14 * (1.0 + std::abs(r))) return r;
    }
    return std::abs(char_eval_poly(p, r)) <= std::abs(char_eval_poly(p, mid)) ? r : mid;
}

// One root per bounded gap between consecutive poles plus one beyond the last
// pole; `mirror` = false scans the positive axis, true the negative axis
// (where we work with s = -r and poles at beta^n_j).
std::vector<double> solve_side(const ModelParams& p, const std::vector<double>& poles,
                               bool mirror) {
    auto eval_at = [&](double s) { return mirror ? -s : s; };
    std::vector<double> out;
    double lo = 0.0;
    for (double b : poles) {
        out.push_back(bisect_then_polish(p, std::min(eval_at(lo), eval_at(b)),
                                         std::max(eval_at(lo), eval_at(b))));
        lo = b;
    }
    // Unbounded bracket: double out from just past the last pole.
    double a = lo;
    double hi = lo + 1.0;
    const double fa = char_eval_poly(p, eval_at(a));
    int n = 0;
    while ((char_eval_poly(p, eval_at(hi)) > 0.0) == (fa > 0.0)) {
        hi *= 2.0;
        if (++n > kMaxDoublings)
            throw SolverError("BracketFailure", "unbounded bracket: no sign change found");
    }
    out.push_back(bisect_then_polish(p, std::min(eval_at(a), eval_at(hi)),
                                     std::max(eval_at(a), eval_at(hi))));
    std::sort(out.begin(), out.end());
    if (mirror) std::reverse(out.begin(), out.end());  // neg[0] closest to zero
    return out;
}

}  // namespace

double char_scale(const ModelParams& p) {
    return p.rho + p.lambda_n + p.lambda_p + p.sigma * p.sigma;
}

double char_eval(const ModelParams& p, double r) {
    double v = 0.5 * p.sigma * p.sigma * r * r + p.mu * r - (p.rho + p.lambda_n + p.lambda_p);
    for (std::size_t i = 0; i < p.mix_p.order(); ++i) {
        const double b = p.mix_p.rates[i];
        if (std::abs(b - r) < 1e-14 * b)
            throw SolverError("PoleHit", "r at positive-mixture pole " + std::to_string(b));
        v += p.lambda_p * p.mix_p.weights[i] * b / (b - r);
    }
    for (std::size_t j = 0; j < p.mix_n.order(); ++j) {
        const double b = p.mix_n.rates[j];
        if (std::abs(b + r) < 1e-14 * b)
            throw SolverError("PoleHit", "r at negative-mixture pole " + std::to_string(-b));
        v += p.lambda_n * p.mix_n.weights[j] * b / (r + b);
    }
    return v;
}

double char_eval_poly(const ModelParams& p, double r) {
    double prod_p = 1.0;
    for (double b : p.mix_p.rates) prod_p *= b - r;
    double prod_n = 1.0;
    for (double b : p.mix_n.rates) prod_n *= b + r;

    double v = (0.5 * p.sigma * p.sigma * r * r + p.mu * r -
                (p.rho + p.lambda_n + p.lambda_p)) *
               prod_p * prod_n;
    for (std::size_t i = 0; i < p.mix_p.order(); ++i) {
        double t = p.lambda_p * p.mix_p.weights[i] * p.mix_p.rates[i] * prod_n;
        for (std::size_t k = 0; k < p.mix_p.order(); ++k)
            if (k != i) t *= p.mix_p.rates[k] - r;
        v += t;
    }
    for (std::size_t j = 0; j < p.mix_n.order(); ++j) {
        double t = p.lambda_n * p.mix_n.weights[j] * p.mix_n.rates[j] * prod_p;
        for (std::size_t k = 0; k < p.mix_n.order(); ++k)
            if (k != j) t *= p.mix_n.rates[k] + r;
        v += t;
    }
    return v;
}

RootSet solve_roots(const ModelParams& p) {
    RootSet rs;
    rs.pos = solve_side(p, p.mix_p.rates, false);
    rs.neg = solve_side(p, p.mix_n.rates, true);
    for (double r : rs.pos) rs.pos_residual.push_back(std::abs(char_eval(p, r)));
    for (double r : rs.neg) rs.neg_residual.push_back(std::abs(char_eval(p, r)));
    return rs;
}

}  // namespace extraction
