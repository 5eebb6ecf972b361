// Test-only oracles: brute-force series expansions kept independent of the
// library's closed-form constructions. Everything here works on plain loops
// over power-series coefficients.
#ifndef RKDYN_TESTS_ORACLES_HPP
#define RKDYN_TESTS_ORACLES_HPP

#include "rkdyn/coefficient_matrix.hpp"
#include "rkdyn/tridiagonal.hpp"

#include <complex>
#include <vector>

namespace oracle {

using rkdyn::Complex;
using rkdyn::ComplexMatrix;

/// Triple Cauchy product p(z) * (sum_{m,n} a_mn z^m wbar^n) * conj(p(w)),
/// truncated to the order of `base`.
inline ComplexMatrix conjugated_series(const ComplexMatrix& base,
                                       const std::vector<Complex>& p) {
    const Eigen::Index n = base.rows();
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (Eigen::Index m = 0; m < n; ++m)
        for (Eigen::Index k = 0; k < n; ++k) {
            Complex acc(0.0, 0.0);
            for (Eigen::Index j = 0; j <= m; ++j)
                for (Eigen::Index l = 0; l <= k; ++l) {
                    if (static_cast<std::size_t>(j) >= p.size() ||
                        static_cast<std::size_t>(l) >= p.size())
                        continue;
                    acc += p[static_cast<std::size_t>(j)] * base(m - j, k - l) *
                           std::conj(p[static_cast<std::size_t>(l)]);
                }
            out(m, k) = acc;
        }
    return out;
}

/// Kernel of the orthonormal family e_k(z) = mu_k z^k + nu_k z^{k+1}:
/// sum_k e_k(z) conj(e_k(w)), coefficients kept inside the window.
inline ComplexMatrix tridiagonal_series(const rkdyn::TridiagonalSpec& t) {
    const Eigen::Index n = t.order;
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex coef[2] = {t.mu_at(static_cast<std::size_t>(k)),
                                 t.nu_at(static_cast<std::size_t>(k))};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (k + i < n && k + j < n)
                    out(k + i, k + j) += coef[i] * std::conj(coef[j]);
    }
    return out;
}

/// Forward substitution for z^n (a + b z) = sum_j alpha_j e_j: the monomial
/// coefficient matrix of the e_j family is lower bidiagonal.
inline std::vector<Complex> expansion_solve(const rkdyn::TridiagonalSpec& t, Eigen::Index n) {
    const Complex mu0 = t.mu_at(0);
    const Complex b = mu0 * std::conj(t.nu_at(0));
    std::vector<Complex> rhs(static_cast<std::size_t>(t.order) + 1, Complex(0.0, 0.0));
    rhs[static_cast<std::size_t>(n)] = Complex(std::norm(mu0), 0.0);
    rhs[static_cast<std::size_t>(n) + 1] = b;
    std::vector<Complex> alpha(static_cast<std::size_t>(t.order), Complex(0.0, 0.0));
    for (Eigen::Index j = 0; j < t.order; ++j) {
        Complex r = rhs[static_cast<std::size_t>(j)];
        if (j >= 1)
            r -= t.nu_at(static_cast<std::size_t>(j) - 1) * alpha[static_cast<std::size_t>(j) - 1];
        alpha[static_cast<std::size_t>(j)] = r / t.mu_at(static_cast<std::size_t>(j));
    }
    return alpha;
}

/// Monomial-basis pairing of the derivative-vector columns against the
/// weighted-shift-space inner product <z^j, z^k> = delta_jk / beta_k^2. The
/// columns live in the base space; for conjugated kernels pass the base-space
/// coordinate columns (not the conjugated coefficient columns).
inline ComplexMatrix monomial_pairing(const ComplexMatrix& columns,
                                      const std::vector<double>& betaSq) {
    const Eigen::Index n = columns.rows();
    ComplexMatrix g = ComplexMatrix::Zero(n, n);
    for (Eigen::Index m = 0; m < n; ++m)
        for (Eigen::Index k = 0; k < n; ++k) {
            // entry (m, k) pairs column k against column m
            Complex acc(0.0, 0.0);
            for (Eigen::Index j = 0; j < n; ++j)
                acc += std::conj(columns(j, m)) * columns(j, k) /
                       betaSq[static_cast<std::size_t>(j)];
            g(m, k) = acc;
        }
    return g;
}

} // namespace oracle

#endif
