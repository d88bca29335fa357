#pragma once

#include <vector>

#include <Eigen/Dense>

#include "extraction/model.hpp"
#include "extraction/roots.hpp"

namespace extraction {

// Relative residuals of the closed-form identities linking the barrier, the
// coefficients K, and the roots. Each residual is |lhs - rhs| divided by the
// sum of the magnitudes of the contributing terms (plus 1e-300).
struct IdentityResiduals {
    double cond1K = 0.0;   // sum K = bstar - c
    double cond2K = 0.0;   // sum r K = 1
    double cond3K = 0.0;   // max over k: sum_j beta K/(beta - r) = bstar - c + 1/beta
    double equ1 = 0.0;     // barrier characterization at x = bstar+
    double equ2 = 0.0;     // companion identity from the smooth-fit system
    double equ3 = 0.0;     // max over k: the two displayed forms of Xi^n agree
    double sum_r2K = 0.0;  // sum r^2 K = Rn

    double max() const;
};

struct BarrierSolution {
    ModelParams params;
    RootSet roots;
    double bstar = 0.0;
    std::vector<double> K;     // one entry per positive root
    double Rn = 0.0;           // prod(pos roots) / prod(beta^p)
    std::vector<double> Mn;    // size m_p, product-form minors ratio
    std::vector<double> Xi_n;  // size m_n, overshoot coefficients
    IdentityResiduals residuals;
};

// bstar = c + sum 1/r_j - sum 1/beta^p_i; strictly above c by interlacing.
double compute_bstar(const RootSet& roots, const JumpMix& mix_p, double c);

// (m_p+1)x(m_p+1): first row all ones, then rows beta_i/(beta_i - r_j).
Eigen::MatrixXd build_matrix_A(const std::vector<double>& pos_roots,
                               const std::vector<double>& rates);

// Production route: solve A K = (b-c, b-c+1/beta_1, ...) by partial-pivot LU.
// Throws SolverError("SingularMatrix") if |det A| < 1e-13 * ||A||.
std::vector<double> compute_K_linear(const RootSet& roots, double bstar, double c,
                                     const JumpMix& mix_p);

// Cramer-style route via first-row cofactors; kept as a cross-check.
std::vector<double> compute_K_cofactor(const RootSet& roots, const JumpMix& mix_p);

// Max relative residual of each determinant/cofactor identity, evaluated on an
// arbitrary interlaced configuration 0 < r_0 < beta_1 < r_1 < ... < r_n
// (n = rates.size() <= 8). Determinants are computed numerically and compared
// against the closed-form product expressions.
struct CofactorReport {
    double cof1 = 0.0;  // Cof_{1,j}/det as an eta/gamma product ratio
    double cof2 = 0.0;  // sum_k beta Cof_{1,k}/(beta - r_k) = 0
    double cof3 = 0.0;  // det of A with column j replaced by ones
    double Cof2 = 0.0;  // Cof_{i,j} via the Mn product form
    double Rn = 0.0;    // Rn = r_j [1 + sum Mn/(beta - r_j)]
    double Cof5 = 0.0;  // (1/Rn)[1 + sum Mn/beta] = sum 1/r - sum 1/beta

    double max() const;
};
CofactorReport cofactor_identity_suite(const std::vector<double>& roots,
                                       const std::vector<double>& rates);

// Product-form quantities reused by the value/verify modules.
double compute_Rn(const std::vector<double>& pos_roots, const std::vector<double>& rates);
std::vector<double> compute_Mn(const std::vector<double>& pos_roots,
                               const std::vector<double>& rates);

// Full pipeline: validate, solve roots, bstar, K (linear route), derived
// quantities, and the identity-residual ledger.
BarrierSolution solve(const ModelParams& params);

}  // namespace extraction
