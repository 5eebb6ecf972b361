#include "rkdyn/conjugation.hpp"

#include "rkdyn/errors.hpp"

namespace rkdyn {

std::vector<Complex> geometric_series_coeffs(Eigen::Index count) {
    if (count < 1)
        throw SpecError("coefficient count must be positive");
    return std::vector<Complex>(static_cast<std::size_t>(count), Complex(1.0, 0.0));
}

ComplexMatrix toeplitz_lower(const std::vector<Complex>& coeffs, Eigen::Index order) {
    ComplexMatrix l = ComplexMatrix::Zero(order, order);
    for (Eigen::Index j = 0; j < order; ++j)
        for (Eigen::Index i = j; i < order; ++i) {
            const std::size_t k = static_cast<std::size_t>(i - j);
            if (k < coeffs.size())
                l(i, j) = coeffs[k];
        }
    return l;
}

CoefficientMatrix conjugate_by_series(const CoefficientMatrix& a,
                                      const std::vector<Complex>& p) {
    if (p.empty() || p[0] == Complex(0.0, 0.0))
        throw SpecError("conjugating series must have a nonzero constant term");
    const Eigen::Index order = a.order();
    const ComplexMatrix l = toeplitz_lower(p, order);
    ComplexMatrix result = l * a.entries() * l.adjoint();
    return CoefficientMatrix(std::move(result));
}

} // namespace rkdyn
