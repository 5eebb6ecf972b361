#ifndef RKDYN_BLOCK_KERNEL_HPP
#define RKDYN_BLOCK_KERNEL_HPP

#include "rkdyn/coefficient_matrix.hpp"
#include "rkdyn/sequence_spec.hpp"

#include <vector>

namespace rkdyn {

/// Polynomial with d x d operator blocks A_0 .. A_degree. The scalar case is
/// block dimension 1. A_0 must be injective (smallest singular value above
/// 1e-12) for the conjugated kernel construction.
struct BlockPolynomial {
    std::vector<ComplexMatrix> blocks;

    Eigen::Index degree() const { return static_cast<Eigen::Index>(blocks.size()) - 1; }
    Eigen::Index block_dim() const { return blocks.empty() ? 0 : blocks.front().rows(); }

    /// Throws SpecError unless the blocks are square, same-sized, and A_0
    /// passes the injectivity gate.
    void validate() const;
};

/// Operator-valued kernel truncation: an order x order array of d x d blocks,
/// block (m, n) holding the normalized block moment of z^m wbar^n. Stored as
/// one (order*d) x (order*d) matrix so block-Hermitian symmetry is plain
/// Hermitian symmetry of the storage.
class BlockCoefficientKernel {
public:
    BlockCoefficientKernel(ComplexMatrix storage, Eigen::Index order, Eigen::Index block_dim);

    Eigen::Index order() const noexcept { return order_; }
    Eigen::Index block_dim() const noexcept { return dim_; }
    const ComplexMatrix& storage() const noexcept { return storage_; }

    /// The d x d block at (m, n).
    ComplexMatrix block(Eigen::Index m, Eigen::Index n) const;

    /// Max-norm of B - B^H over the whole block array.
    double hermitian_residual() const;

private:
    ComplexMatrix storage_;
    Eigen::Index order_;
    Eigen::Index dim_;
};

/// Quasi-scalar lift: block (m, n) = a_mn I_d.
BlockCoefficientKernel quasi_scalar(const CoefficientMatrix& a, Eigen::Index dim);

/// Kernel P(z) (k(z,w) I) P(w)^* for the diagonal scalar kernel with weight
/// sequence beta: block (m, n) = sum_t A_{m-t} beta_t^2 A_{n-t}^H over valid t.
BlockCoefficientKernel block_polynomial_conjugate(const SequenceSpec& beta,
                                                  const BlockPolynomial& p,
                                                  Eigen::Index order);

} // namespace rkdyn

#endif
