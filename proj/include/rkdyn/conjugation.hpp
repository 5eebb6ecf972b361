#ifndef RKDYN_CONJUGATION_HPP
#define RKDYN_CONJUGATION_HPP

#include "rkdyn/coefficient_matrix.hpp"

#include <vector>

namespace rkdyn {

/// Taylor coefficients of 1/(1-z) up to order `count`: a list of ones.
std::vector<Complex> geometric_series_coeffs(Eigen::Index count);

/// Lower-triangular Toeplitz matrix whose first column is `coeffs`
/// (the multiplication-by-series matrix on monomial coefficients).
ComplexMatrix toeplitz_lower(const std::vector<Complex>& coeffs, Eigen::Index order);

/// Coefficient matrix of p(z) k(z, w) conj(p(w)): the congruence L A L^H
/// with L the lower-triangular Toeplitz matrix of p. Truncation at the
/// input order is exact: entries below the order need no dropped terms.
/// Requires p[0] != 0.
CoefficientMatrix conjugate_by_series(const CoefficientMatrix& a,
                                      const std::vector<Complex>& p);

} // namespace rkdyn

#endif
