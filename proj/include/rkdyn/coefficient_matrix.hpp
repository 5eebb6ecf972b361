#ifndef RKDYN_COEFFICIENT_MATRIX_HPP
#define RKDYN_COEFFICIENT_MATRIX_HPP

#include "rkdyn/sequence_spec.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace rkdyn {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Truncated coefficient matrix of an analytic kernel on the unit disc:
/// entry (m, n) is the coefficient of z^m wbar^n in the power series of
/// k(z, w). All moments are stored factorial-normalized, so the diagonal
/// holds the normalized derivative moments directly. Immutable after
/// construction.
class CoefficientMatrix {
public:
    CoefficientMatrix(ComplexMatrix entries, bool diagonal_structure = false);

    Eigen::Index order() const noexcept { return entries_.rows(); }
    const ComplexMatrix& entries() const noexcept { return entries_; }
    Complex entry(Eigen::Index m, Eigen::Index n) const { return entries_(m, n); }

    /// True when the kernel was constructed with purely diagonal
    /// coefficients; enables exact diagonal Gram/Cholesky paths.
    bool is_diagonal() const noexcept { return diagonal_; }

    /// Max-norm of A - A^H, for Hermitian diagnostics.
    double hermitian_residual() const;

private:
    ComplexMatrix entries_;
    bool diagonal_;
};

/// Gram data of the normalized derivative vectors: G equals the coefficient
/// matrix entrywise. The upper-triangular Cholesky factor (G = U^H U) is
/// present only when the positive-definiteness gate passed.
struct GramData {
    ComplexMatrix matrix;                  // G, equal to the coefficient matrix
    std::optional<ComplexMatrix> cholesky; // upper-triangular U with G = U^H U
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;

    bool positive_definite() const noexcept { return cholesky.has_value(); }

    /// Cholesky factor; throws NotPositiveDefiniteError when absent.
    const ComplexMatrix& factor() const;
};

struct PsdCheckResult {
    bool positive_semidefinite;
    double min_eigenvalue;
};

/// Diagonal kernel sum beta_n^2 z^n wbar^n from the weight sequence beta.
/// Requires beta_n > 0 for n < order.
CoefficientMatrix diagonal_coefficients(const SequenceSpec& beta, Eigen::Index order);

/// Diagonal kernel built directly from the squared weights.
CoefficientMatrix diagonal_from_squares(const std::vector<double>& beta_squared);

/// Real diagonal d[n] = a_nn, the factorial-normalized diagonal derivative
/// moments. Rejects imaginary parts beyond 1e-12 (malformed kernel).
std::vector<double> normalized_diagonal(const CoefficientMatrix& a);

/// Normalized mixed moment a_nm = (1/(n! m!)) d^{n+m} k / dz^n dwbar^m at 0.
Complex derivative_moment(const CoefficientMatrix& a, Eigen::Index n, Eigen::Index m);

/// Gram matrix of the normalized derivative vectors with the PD gate.
/// Requires the input to be Hermitian within 1e-12 relative.
GramData gram(const CoefficientMatrix& a);

/// Truncated kernel value: double sum of a_mn z^m wbar^n over the window.
/// Requires |z| < 1 and |w| < 1.
Complex evaluate_kernel(const CoefficientMatrix& a, Complex z, Complex w);

/// Norm of the kernel section at w: sqrt(k(w, w)) for the truncated kernel.
/// Fails if the truncated k(w, w) is negative beyond 1e-12.
double kernel_norm_at(const CoefficientMatrix& a, Complex w);

/// Eigenvalue test: true iff lambda_min >= -tol * max(1, lambda_max).
PsdCheckResult psd_check(const CoefficientMatrix& a, double tol = 1e-10);

} // namespace rkdyn

#endif
