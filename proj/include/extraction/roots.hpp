#pragma once

#include <vector>

#include "extraction/model.hpp"

namespace extraction {

// Real roots of the characteristic equation p(r) = 0, interlaced with the
// mixture rates:
//   rn[m_n] < -beta^n_{m_n} < ... < rn[1] < -beta^n_1 < rn[0] < 0
//     < pos[0] < beta^p_1 < pos[1] < ... < beta^p_{m_p} < pos[m_p]
struct RootSet {
    std::vector<double> pos;  // m_p + 1 roots, increasing
    std::vector<double> neg;  // m_n + 1 roots, neg[0] closest to zero
    std::vector<double> pos_residual;  // |p(r)| at each positive root
    std::vector<double> neg_residual;
};

// Characteristic-function scale, used to normalize residuals.
double char_scale(const ModelParams& p);

// p(r) = sigma^2 r^2/2 + mu r - (rho+ln+lp)
//        + lp sum w b/(b - r) + ln sum w b/(r + b).
// Rational form: throws SolverError("PoleHit") within 1e-14 relative of a pole.
double char_eval(const ModelParams& p, double r);

// Q(r) = p(r) * prod_i (beta^p_i - r) * prod_j (beta^n_j + r), evaluated
// term-by-term so no pole cancellation occurs. Same roots as p away from the
// poles; degree m_p + m_n + 2.
double char_eval_poly(const ModelParams& p, double r);

// Brackets every root between consecutive poles (plus one unbounded bracket on
// each side, closed by doubling until Q changes sign), bisects to relative
// width 1e-13, then Newton-polishes on Q. Throws SolverError("BracketFailure")
// if a guaranteed sign change cannot be located.
RootSet solve_roots(const ModelParams& p);

}  // namespace extraction
