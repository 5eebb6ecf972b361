#ifndef RKDYN_TRIDIAGONAL_HPP
#define RKDYN_TRIDIAGONAL_HPP

#include "rkdyn/coefficient_matrix.hpp"
#include "rkdyn/sequence_spec.hpp"

#include <optional>
#include <vector>

namespace rkdyn {

/// Kernel generated by the orthonormal family e_n(z) = mu_n z^n + nu_n z^{n+1}.
/// mu and nu give the moduli; the optional phase sequences (radians) allow
/// complex generators while keeping the DSL real-valued. Both moduli must be
/// nonzero for every index below the order.
struct TridiagonalSpec {
    SequenceSpec mu;
    SequenceSpec nu;
    Eigen::Index order = 0;
    std::optional<SequenceSpec> mu_phase;
    std::optional<SequenceSpec> nu_phase;

    Complex mu_at(std::size_t n) const;
    Complex nu_at(std::size_t n) const;
};

struct TridiagonalBoundedness {
    double sup_mu_ratio;    // sup |mu_n / mu_{n+1}| over the window
    double sup_nu_mu_ratio; // sup |nu_n / mu_{n+1}| over the window
    std::size_t window;
    bool holds; // contraction gate: second supremum < 1
};

struct ZnfNormBound {
    double norm_sq;       // truncated sum of |alpha_j|^2
    double norm_sq_upper; // plus the geometric tail bound
    double bound;         // C / |mu_n|^2
    bool satisfied;       // norm_sq_upper <= bound
};

/// Coefficient matrix of the tridiagonal kernel: diagonal |mu_n|^2 + |nu_{n-1}|^2,
/// first off-diagonals mu_n conj(nu_n) and its conjugate.
CoefficientMatrix tridiagonal_coefficients(const TridiagonalSpec& spec);

/// Window suprema for the multiplier-boundedness gate. Evidence, not proof:
/// the suprema are taken over 0 <= n < window only.
TridiagonalBoundedness tridiagonal_boundedness(const TridiagonalSpec& spec, std::size_t window);

/// Expansion coefficients alpha_j of z^n k(.,0) = z^n (a + b z) in the e_j
/// basis, a = |mu_0|^2, b = mu_0 conj(nu_0). Returned vector has length
/// spec.order; entries below n are exactly zero.
std::vector<Complex> expand_znf_in_basis(const TridiagonalSpec& spec, Eigen::Index n);

/// Norm of z^n k(.,0) against the contraction bound C / |mu_n|^2 with
/// C = M^2 (1 + (r+1)^2 sum_{k>=1} R^{2k}). Requires the boundedness gate
/// (R < 1) on the window.
ZnfNormBound znf_norm_bound(const TridiagonalSpec& spec, Eigen::Index n);

} // namespace rkdyn

#endif
