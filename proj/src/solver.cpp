#include "extraction/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace extraction {

namespace {

constexpr double kTiny = 1e-300;

double rel(double lhs, double rhs, double scale) {
    return std::abs(lhs - rhs) / (scale + kTiny);
}

// Numeric (i,j) cofactor, 1-based indices, via the minor determinant.
double cofactor(const Eigen::MatrixXd& A, int i, int j) {
    const int n = static_cast<int>(A.rows());
    Eigen::MatrixXd M(n - 1, n - 1);
    for (int r = 0, rr = 0; r < n; ++r) {
        if (r == i - 1) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
            if (c == j - 1) continue;
            M(rr, cc++) = A(r, c);
        }
        ++rr;
    }
    const double d = (n == 1) ? 1.0 : M.fullPivLu().determinant();
    return (((i + j) % 2) == 0) ? d : -d;
}

}  // namespace

double IdentityResiduals::max() const {
    return std::max({cond1K, cond2K, cond3K, equ1, equ2, equ3, sum_r2K});
}

double CofactorReport::max() const {
    return std::max({cof1, cof2, cof3, Cof2, Rn, Cof5});
}

double compute_bstar(const RootSet& roots, const JumpMix& mix_p, double c) {
    double b = c;
    for (double r : roots.pos) b += 1.0 / r;
    for (double beta : mix_p.rates) b -= 1.0 / beta;
    return b;
}

Eigen::MatrixXd build_matrix_A(const std::vector<double>& pos_roots,
                               const std::vector<double>& rates) {
    const std::size_t n1 = pos_roots.size();
    Eigen::MatrixXd A(n1, n1);
    for (std::size_t j = 0; j < n1; ++j) A(0, j) = 1.0;
    for (std::size_t i = 0; i < rates.size(); ++i)
        for (std::size_t j = 0; j < n1; ++j)
            A(i + 1, j) = rates[i] / (rates[i] - pos_roots[j]);
    return A;
}

std::vector<double> compute_K_cofactor(const RootSet& roots, const JumpMix& mix_p) {
    const Eigen::MatrixXd A = build_matrix_A(roots.pos, mix_p.rates);
    const double det = A.fullPivLu().determinant();
    if (std::abs(det) < 1e-13 * A.norm())
        throw SolverError("SingularMatrix", "coefficient matrix nearly singular");
    const double Rn = compute_Rn(roots.pos, mix_p.rates);
    std::vector<double> K(roots.pos.size());
    for (std::size_t j = 0; j < K.size(); ++j) {
        const double r = roots.pos[j];
        K[j] = Rn * cofactor(A, 1, static_cast<int>(j) + 1) / (r * r * det);
    }
    return K;
}

double compute_Rn(const std::vector<double>& pos_roots, const std::vector<double>& rates) {
    double v = 1.0;
    for (double r : pos_roots) v *= r;
    for (double b : rates) v /= b;
    return v;
}

std::vector<double> compute_Mn(const std::vector<double>& pos_roots,
                               const std::vector<double>& rates) {
    const std::size_t n = rates.size();
    std::vector<double> Mn(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double b = rates[t];
        double num = 1.0;
        for (std::size_t k = 0; k <= t; ++k) num *= b - pos_roots[k];
        for (std::size_t k = t + 1; k < pos_roots.size(); ++k) num *= pos_roots[k] - b;
        double den = b;
        for (std::size_t k = 0; k < t; ++k) den *= b - rates[k];
        for (std::size_t k = t + 1; k < n; ++k) den *= rates[k] - b;
        Mn[t] = num / den;
    }
    return Mn;
}

CofactorReport cofactor_identity_suite(const std::vector<double>& roots,
                                       const std::vector<double>& rates) {
    const std::size_t n = rates.size();
    const std::size_t n1 = roots.size();  // n + 1
    const Eigen::MatrixXd A = build_matrix_A(roots, rates);
    const double det = A.fullPivLu().determinant();
    const double Rn = compute_Rn(roots, rates);
    const std::vector<double> Mn = compute_Mn(roots, rates);

    std::vector<double> cof1j(n1);  // numeric Cof_{1,j}
    for (std::size_t j = 0; j < n1; ++j)
        cof1j[j] = cofactor(A, 1, static_cast<int>(j) + 1);

    CofactorReport rep;

    // cof1: Cof_{1,j}/det equals the eta/gamma product ratio.
    for (std::size_t j = 0; j < n1; ++j) {
        double eta_hi = 1.0, eta_lo = 1.0, gam_hi = 1.0, gam_lo = 1.0;
        for (std::size_t k = 0; k < j; ++k) eta_hi *= roots[j] - rates[k];
        for (std::size_t k = j; k < n; ++k) eta_lo *= rates[k] - roots[j];
        for (std::size_t k = 0; k < j; ++k) gam_hi *= roots[j] - roots[k];
        for (std::size_t k = j + 1; k < n1; ++k) gam_lo *= roots[k] - roots[j];
        const double lhs = cof1j[j] / det;
        const double rhs = eta_hi * eta_lo / (gam_hi * gam_lo);
        rep.cof1 = std::max(rep.cof1, rel(lhs, rhs, std::abs(lhs) + std::abs(rhs)));
    }

    // cof2: sum_k beta Cof_{1,k}/(beta - r_{k-1}) vanishes for every rate.
    for (std::size_t t = 0; t < n; ++t) {
        const double b = rates[t];
        double sum = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < n1; ++k) {
            const double term = b * cof1j[k] / (b - roots[k]);
            sum += term;
            scale += std::abs(term);
        }
        rep.cof2 = std::max(rep.cof2, std::abs(sum) / (scale + kTiny));
    }

    // cof3: replacing column j of A by ones gives (Rn/r_{j-1}) Cof_{1,j}.
    for (std::size_t j = 0; j < n1; ++j) {
        Eigen::MatrixXd Aj = A;
        for (std::size_t i = 0; i < n1; ++i) Aj(i, j) = 1.0;
        const double lhs = Aj.fullPivLu().determinant();
        const double rhs = Rn / roots[j] * cof1j[j];
        rep.cof3 = std::max(rep.cof3, rel(lhs, rhs, std::abs(lhs) + std::abs(rhs)));
    }

    // Cof2: interior cofactors through the Mn product form.
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t j = 0; j < n1; ++j) {
            const double lhs = cofactor(A, static_cast<int>(t) + 2, static_cast<int>(j) + 1);
            const double rhs = Mn[t] * cof1j[j] / (rates[t] - roots[j]);
            rep.Cof2 = std::max(rep.Cof2, rel(lhs, rhs, std::abs(lhs) + std::abs(rhs)));
        }

    // Rn: Rn = r_{j-1} [1 + sum Mn/(beta - r_{j-1})] for every j.
    for (std::size_t j = 0; j < n1; ++j) {
        double sum = 1.0, scale = 1.0;
        for (std::size_t t = 0; t < n; ++t) {
            const double term = Mn[t] / (rates[t] - roots[j]);
            sum += term;
            scale += std::abs(term);
        }
        const double rhs = roots[j] * sum;
        rep.Rn = std::max(rep.Rn, rel(Rn, rhs, std::abs(Rn) + roots[j] * scale));
    }

    // Cof5: (1/Rn)[1 + sum Mn/beta] = sum 1/r - sum 1/beta.
    {
        double sum = 1.0;
        for (std::size_t t = 0; t < n; ++t) sum += Mn[t] / rates[t];
        const double lhs = sum / Rn;
        double rhs = 0.0, scale = 0.0;
        for (double r : roots) {
            rhs += 1.0 / r;
            scale += 1.0 / r;
        }
        for (double b : rates) {
            rhs -= 1.0 / b;
            scale += 1.0 / b;
        }
        rep.Cof5 = rel(lhs, rhs, std::abs(lhs) + scale);
    }

    return rep;
}

namespace {

std::vector<double> solve_K_linear_impl(const RootSet& roots, double bstar, double c,
                                        const JumpMix& mix_p) {
    const Eigen::MatrixXd A = build_matrix_A(roots.pos, mix_p.rates);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    if (std::abs(lu.determinant()) < 1e-13 * A.norm())
        throw SolverError("SingularMatrix", "coefficient matrix nearly singular");
    Eigen::VectorXd C(A.rows());
    C(0) = bstar - c;
    for (std::size_t i = 0; i < mix_p.rates.size(); ++i)
        C(static_cast<Eigen::Index>(i) + 1) = bstar - c + 1.0 / mix_p.rates[i];
    const Eigen::VectorXd K = lu.solve(C);
    return std::vector<double>(K.data(), K.data() + K.size());
}

}  // namespace

std::vector<double> compute_K_linear(const RootSet& roots, double bstar, double c,
                                     const JumpMix& mix_p) {
    return solve_K_linear_impl(roots, bstar, c, mix_p);
}

namespace {

IdentityResiduals compute_residuals(const BarrierSolution& s) {
    const ModelParams& p = s.params;
    const std::vector<double>& r = s.roots.pos;
    const double bc = s.bstar - p.c;
    IdentityResiduals res;

    {  // cond1K
        double sum = 0.0, scale = std::abs(bc);
        for (double k : s.K) {
            sum += k;
            scale += std::abs(k);
        }
        res.cond1K = std::abs(sum - bc) / (scale + kTiny);
    }
    {  // cond2K
        double sum = 0.0, scale = 1.0;
        for (std::size_t j = 0; j < s.K.size(); ++j) {
            sum += r[j] * s.K[j];
            scale += std::abs(r[j] * s.K[j]);
        }
        res.cond2K = std::abs(sum - 1.0) / (scale + kTiny);
    }
    // cond3K, one constraint per positive-mixture rate
    for (double beta : p.mix_p.rates) {
        double sum = 0.0, scale = 0.0;
        for (std::size_t j = 0; j < s.K.size(); ++j) {
            const double term = beta * s.K[j] / (beta - r[j]);
            sum += term;
            scale += std::abs(term);
        }
        const double rhs = bc + 1.0 / beta;
        res.cond3K = std::max(res.cond3K, std::abs(sum - rhs) / (scale + std::abs(rhs) + kTiny));
    }
    {  // equ1
        double sum = 0.0, scale = 0.0;
        auto add = [&](double t) {
            sum += t;
            scale += std::abs(t);
        };
        add(0.5 * p.sigma * p.sigma * s.Rn);
        add(p.mu);
        add(-(p.rho + p.lambda_n) * bc);
        for (std::size_t k = 0; k < p.mix_p.order(); ++k)
            add(p.lambda_p * p.mix_p.weights[k] / p.mix_p.rates[k]);
        for (std::size_t k = 0; k < p.mix_n.order(); ++k) {
            const double beta = p.mix_n.rates[k];
            for (std::size_t j = 0; j < s.K.size(); ++j)
                add(p.lambda_n * p.mix_n.weights[k] * beta / (beta + r[j]) * s.K[j]);
        }
        res.equ1 = std::abs(sum) / (scale + kTiny);
    }
    {  // equ2
        double sum = 0.0, scale = 0.0;
        auto add = [&](double t) {
            sum += t;
            scale += std::abs(t);
        };
        add(0.5 * p.sigma * p.sigma);
        for (std::size_t j = 0; j < s.K.size(); ++j) add(-p.rho * s.K[j] / r[j]);
        add(p.mu * bc);
        for (std::size_t k = 0; k < p.mix_n.order(); ++k)
            for (std::size_t j = 0; j < s.K.size(); ++j)
                add(-p.lambda_n * p.mix_n.weights[k] / (p.mix_n.rates[k] + r[j]) * s.K[j]);
        for (std::size_t k = 0; k < p.mix_p.order(); ++k)
            for (std::size_t j = 0; j < s.K.size(); ++j)
                add(p.lambda_p * p.mix_p.weights[k] / (p.mix_p.rates[k] - r[j]) * s.K[j]);
        res.equ2 = std::abs(sum) / (scale + kTiny);
    }
    // equ3: two displayed forms of Xi^n per negative rate
    for (std::size_t k = 0; k < p.mix_n.order(); ++k) {
        const double beta = p.mix_n.rates[k];
        double f1 = -bc + 1.0 / beta, scale = std::abs(bc) + 1.0 / beta;
        for (std::size_t j = 0; j < s.K.size(); ++j) {
            const double term = s.K[j] * beta / (beta + r[j]);
            f1 += term;
            scale += std::abs(term);
        }
        double f2 = 0.0;
        for (std::size_t j = 0; j < s.K.size(); ++j)
            f2 += s.K[j] * r[j] * r[j] / (beta * (beta + r[j]));
        res.equ3 = std::max(res.equ3, std::abs(f1 - f2) / (scale + kTiny));
    }
    {  // sum r^2 K = Rn
        double sum = 0.0, scale = std::abs(s.Rn);
        for (std::size_t j = 0; j < s.K.size(); ++j) {
            sum += r[j] * r[j] * s.K[j];
            scale += std::abs(r[j] * r[j] * s.K[j]);
        }
        res.sum_r2K = std::abs(sum - s.Rn) / (scale + kTiny);
    }
    return res;
}

}  // namespace

BarrierSolution solve(const ModelParams& params) {
    BarrierSolution s;
    s.params = validate(params);
    s.roots = solve_roots(s.params);
    s.bstar = compute_bstar(s.roots, s.params.mix_p, s.params.c);
    s.K = solve_K_linear_impl(s.roots, s.bstar, s.params.c, s.params.mix_p);
    s.Rn = compute_Rn(s.roots.pos, s.params.mix_p.rates);
    s.Mn = compute_Mn(s.roots.pos, s.params.mix_p.rates);
    const double bc = s.bstar - s.params.c;
    for (double beta : s.params.mix_n.rates) {
        double xi = -bc + 1.0 / beta;
        for (std::size_t j = 0; j < s.K.size(); ++j)
            xi += s.K[j] * beta / (beta + s.roots.pos[j]);
        s.Xi_n.push_back(xi);
    }
    s.residuals = compute_residuals(s);
    return s;
}

}  // namespace extraction
