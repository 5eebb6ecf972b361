#ifndef RKDYN_TRUNCATED_MODEL_HPP
#define RKDYN_TRUNCATED_MODEL_HPP

#include "rkdyn/coefficient_matrix.hpp"

#include <functional>
#include <vector>

namespace rkdyn {

/// Vector in the dense span of the normalized derivative reproducing
/// vectors: coords c with v = sum_j c_j Khat_j. The span is invariant under
/// the adjoint multiplier, which acts as an exact coordinate backward shift.
struct VectorInD {
    ComplexVector coords;

    static VectorInD unit(Eigen::Index order, Eigen::Index index);
    static VectorInD zero(Eigen::Index order);
};

/// Exact finite restriction of the adjoint multiplier to the span of
/// Khat_0 .. Khat_{N-1}. The Gram matrix must be positive definite; the
/// orthonormal-basis representation is U S U^{-1} with U the upper
/// Cholesky factor and S the coordinate backward shift.
class TruncatedModel {
public:
    explicit TruncatedModel(const CoefficientMatrix& a);

    Eigen::Index order() const noexcept { return gram_.matrix.rows(); }
    const GramData& gram() const noexcept { return gram_; }
    const ComplexMatrix& on_matrix() const noexcept { return on_matrix_; }

    /// Gram norm sqrt(c^H G c), evaluated as the 2-norm of U c.
    double norm(const VectorInD& v) const;

private:
    GramData gram_;
    ComplexMatrix on_matrix_;
};

TruncatedModel build_model(const CoefficientMatrix& a);

/// One application of the adjoint multiplier: coords shift down one index.
/// Pure copy, no floating-point arithmetic.
VectorInD apply_adjoint(const TruncatedModel& model, const VectorInD& v);

struct EigenvectorCheck {
    double residual; // Gram norm of (shift - wbar) applied to the section coords
    double bound;    // dropped-term bound |w|^{N-1} (1 + |w|) ||Khat_{N-1}||
};

/// Residual of the eigenvector relation for the kernel section at w,
/// represented by coords c_n = wbar^n. Exactly zero at w = 0; otherwise
/// only the top coordinate is dropped by the truncation.
EigenvectorCheck eigenvector_check(const TruncatedModel& model, Complex w);

struct Orbit {
    std::vector<double> norms;                 // norms[j] = || T^j v ||
    std::vector<std::vector<Complex>> leading; // first few coords per step
};

/// Forward orbit under the adjoint multiplier; exact within the window.
Orbit orbit(const TruncatedModel& model, const VectorInD& v, std::size_t steps,
            std::size_t leading_coords = 8);

struct CriterionWitness {
    VectorInD g_k;
    double norm_g_k;
    bool exact; // T^k g_k == f coordinatewise (structural, checked)
};

/// Witness vector for the hypercyclicity criterion: coords of f shifted up
/// by k. Requires support(f) + k to fit inside the window.
CriterionWitness criterion_witness(const TruncatedModel& model, const VectorInD& f,
                                   std::size_t k);

struct PeriodicPoint {
    VectorInD x_p;
    double residual;      // norm of the series terms dropped by the window
    double bound;         // in-window bound sqrt(sum_{n > N-1-p} a_nn |c_n|^2)
    double distance_to_x; // || x_p - x ||
};

/// Source of diagonal moments a_nn beyond the window, used to account for
/// the dropped forward-shift terms of the periodic-point series.
using DiagonalTail = std::function<double(std::size_t)>;

/// Approximate periodic point x_p = sum_{n>=1} T^{np} x + x + sum_{n>=1} u_{np}
/// assembled with all terms of index < N, where u_k is the k-fold forward
/// shift of x. Requires a summable, decaying diagonal (gate); refuses
/// otherwise. When `tail` is absent the residual falls back to the in-window
/// boundary norm || T^p x_p - x_p ||.
PeriodicPoint periodic_point(const TruncatedModel& model, const VectorInD& x, std::size_t p,
                             const DiagonalTail& tail = {});

/// Operator 2-norm of the window restriction; a monotone-in-N lower bound
/// for the multiplier norm (the multiplier itself does not leave the window
/// invariant, only its adjoint does).
double compression_norm(const TruncatedModel& model);

} // namespace rkdyn

#endif
