#include "rkdyn/coefficient_matrix.hpp"

#include "rkdyn/errors.hpp"

#include <cmath>

namespace rkdyn {

namespace {

constexpr double kHermitianTol = 1e-12;

void requireFinite(const ComplexMatrix& m) {
    if (!m.allFinite())
        throw SpecError("coefficient matrix contains non-finite entries");
}

Eigen::VectorXd hermitianEigenvalues(const ComplexMatrix& a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

} // namespace

CoefficientMatrix::CoefficientMatrix(ComplexMatrix entries, bool diagonal_structure)
    : entries_(std::move(entries)), diagonal_(diagonal_structure) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1)
        throw SpecError("coefficient matrix must be square and non-empty");
    requireFinite(entries_);
}

double CoefficientMatrix::hermitian_residual() const {
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

const ComplexMatrix& GramData::factor() const {
    if (!cholesky)
        throw NotPositiveDefiniteError(
            "Gram matrix is not positive definite at this truncation (min eigenvalue " +
                std::to_string(min_eigenvalue) + ")",
            min_eigenvalue);
    return *cholesky;
}

CoefficientMatrix diagonal_coefficients(const SequenceSpec& beta, Eigen::Index order) {
    if (order < 1)
        throw SpecError("order must be positive");
    ComplexMatrix a = ComplexMatrix::Zero(order, order);
    for (Eigen::Index n = 0; n < order; ++n) {
        double b = beta.eval(static_cast<std::size_t>(n));
        if (!(b > 0.0))
            throw SpecError("diagonal kernel requires beta_n > 0; beta_" + std::to_string(n) +
                            " = " + std::to_string(b));
        a(n, n) = Complex(b * b, 0.0);
    }
    return CoefficientMatrix(std::move(a), /*diagonal_structure=*/true);
}

CoefficientMatrix diagonal_from_squares(const std::vector<double>& beta_squared) {
    if (beta_squared.empty())
        throw SpecError("order must be positive");
    const Eigen::Index order = static_cast<Eigen::Index>(beta_squared.size());
    ComplexMatrix a = ComplexMatrix::Zero(order, order);
    for (Eigen::Index n = 0; n < order; ++n)
        a(n, n) = Complex(beta_squared[static_cast<std::size_t>(n)], 0.0);
    return CoefficientMatrix(std::move(a), /*diagonal_structure=*/true);
}

std::vector<double> normalized_diagonal(const CoefficientMatrix& a) {
    std::vector<double> d;
    d.reserve(static_cast<std::size_t>(a.order()));
    for (Eigen::Index n = 0; n < a.order(); ++n) {
        Complex v = a.entry(n, n);
        if (std::abs(v.imag()) > kHermitianTol)
            throw NotHermitianError("diagonal entry " + std::to_string(n) +
                                    " has imaginary part " + std::to_string(v.imag()) +
                                    "; kernel is not Hermitian");
        d.push_back(v.real());
    }
    return d;
}

Complex derivative_moment(const CoefficientMatrix& a, Eigen::Index n, Eigen::Index m) {
    if (n < 0 || m < 0 || n >= a.order() || m >= a.order())
        throw std::out_of_range("derivative_moment index out of range");
    return a.entry(n, m);
}

GramData gram(const CoefficientMatrix& a) {
    const double scale = std::max(1.0, a.entries().cwiseAbs().maxCoeff());
    if (a.hermitian_residual() > kHermitianTol * scale)
        throw NotHermitianError("coefficient matrix is not Hermitian within tolerance");

    GramData g;
    g.matrix = a.entries();

    if (a.is_diagonal()) {
        // Diagonal Gram: eigenvalues are the diagonal entries and the
        // Cholesky factor is exact, so conditioning does not gate PD here.
        const Eigen::Index n = a.order();
        double mn = g.matrix(0, 0).real();
        double mx = mn;
        for (Eigen::Index i = 1; i < n; ++i) {
            double v = g.matrix(i, i).real();
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        g.min_eigenvalue = mn;
        g.max_eigenvalue = mx;
        if (mn > 0.0) {
            ComplexMatrix u = ComplexMatrix::Zero(n, n);
            for (Eigen::Index i = 0; i < n; ++i)
                u(i, i) = std::sqrt(g.matrix(i, i).real());
            g.cholesky = std::move(u);
        }
        return g;
    }

    Eigen::VectorXd ev = hermitianEigenvalues(g.matrix);
    g.min_eigenvalue = ev.minCoeff();
    g.max_eigenvalue = ev.maxCoeff();
    if (g.min_eigenvalue > 1e-12 * g.max_eigenvalue && g.max_eigenvalue > 0.0) {
        Eigen::LLT<ComplexMatrix> llt(g.matrix);
        if (llt.info() == Eigen::Success)
            g.cholesky = ComplexMatrix(llt.matrixL().adjoint());
    }
    return g;
}

Complex evaluate_kernel(const CoefficientMatrix& a, Complex z, Complex w) {
    if (std::abs(z) >= 1.0 || std::abs(w) >= 1.0)
        throw std::invalid_argument("kernel evaluation requires |z| < 1 and |w| < 1");
    const Eigen::Index n = a.order();
    const Complex wbar = std::conj(w);
    if (a.is_diagonal()) {
        // Horner over the diagonal in powers of z * wbar.
        const Complex t = z * wbar;
        Complex acc = a.entry(n - 1, n - 1);
        for (Eigen::Index k = n - 2; k >= 0; --k)
            acc = acc * t + a.entry(k, k);
        return acc;
    }
    // sum_m z^m (sum_n a_mn wbar^n), each inner sum by Horner.
    Complex acc(0.0, 0.0);
    for (Eigen::Index m = n - 1; m >= 0; --m) {
        Complex row = a.entry(m, n - 1);
        for (Eigen::Index k = n - 2; k >= 0; --k)
            row = row * wbar + a.entry(m, k);
        acc = acc * z + row;
    }
    return acc;
}

double kernel_norm_at(const CoefficientMatrix& a, Complex w) {
    Complex value = evaluate_kernel(a, w, w);
    if (value.real() < -1e-12)
        throw NotPositiveDefiniteError(
            "truncated kernel is negative at the diagonal point: k(w,w) = " +
                std::to_string(value.real()),
            value.real());
    return std::sqrt(std::max(0.0, value.real()));
}

PsdCheckResult psd_check(const CoefficientMatrix& a, double tol) {
    const double scale = std::max(1.0, a.entries().cwiseAbs().maxCoeff());
    if (a.hermitian_residual() > kHermitianTol * scale)
        throw NotHermitianError("psd_check requires a Hermitian matrix");
    Eigen::VectorXd ev = hermitianEigenvalues(a.entries());
    const double mn = ev.minCoeff();
    const double mx = ev.maxCoeff();
    return PsdCheckResult{mn >= -tol * std::max(1.0, mx), mn};
}

} // namespace rkdyn
