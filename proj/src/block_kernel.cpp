#include "rkdyn/block_kernel.hpp"

#include "rkdyn/errors.hpp"

#include <Eigen/SVD>

namespace rkdyn {

void BlockPolynomial::validate() const {
    if (blocks.empty())
        throw SpecError("block polynomial needs at least the constant block A_0");
    const Eigen::Index d = blocks.front().rows();
    if (d < 1)
        throw SpecError("block dimension must be positive");
    for (const ComplexMatrix& b : blocks)
        if (b.rows() != d || b.cols() != d)
            throw SpecError("all polynomial blocks must be square with equal dimension");
    Eigen::JacobiSVD<ComplexMatrix> svd(blocks.front());
    const double sigmaMin = svd.singularValues().minCoeff();
    if (sigmaMin <= 1e-12)
        throw SpecError("constant block A_0 is not injective (smallest singular value " +
                        std::to_string(sigmaMin) + ")");
}

BlockCoefficientKernel::BlockCoefficientKernel(ComplexMatrix storage, Eigen::Index order,
                                               Eigen::Index block_dim)
    : storage_(std::move(storage)), order_(order), dim_(block_dim) {
    if (order_ < 1 || dim_ < 1)
        throw SpecError("block kernel requires positive order and block dimension");
    if (storage_.rows() != order_ * dim_ || storage_.cols() != order_ * dim_)
        throw SpecError("block kernel storage has inconsistent size");
}

ComplexMatrix BlockCoefficientKernel::block(Eigen::Index m, Eigen::Index n) const {
    if (m < 0 || n < 0 || m >= order_ || n >= order_)
        throw std::out_of_range("block index out of range");
    return storage_.block(m * dim_, n * dim_, dim_, dim_);
}

double BlockCoefficientKernel::hermitian_residual() const {
    return (storage_ - storage_.adjoint()).cwiseAbs().maxCoeff();
}

BlockCoefficientKernel quasi_scalar(const CoefficientMatrix& a, Eigen::Index dim) {
    if (dim < 1)
        throw SpecError("block dimension must be positive");
    const Eigen::Index order = a.order();
    ComplexMatrix storage = ComplexMatrix::Zero(order * dim, order * dim);
    for (Eigen::Index m = 0; m < order; ++m)
        for (Eigen::Index n = 0; n < order; ++n) {
            const Complex v = a.entry(m, n);
            if (v != Complex(0.0, 0.0))
                storage.block(m * dim, n * dim, dim, dim) =
                    v * ComplexMatrix::Identity(dim, dim);
        }
    return BlockCoefficientKernel(std::move(storage), order, dim);
}

BlockCoefficientKernel block_polynomial_conjugate(const SequenceSpec& beta,
                                                  const BlockPolynomial& p,
                                                  Eigen::Index order) {
    p.validate();
    if (order < 1)
        throw SpecError("order must be positive");
    const Eigen::Index d = p.block_dim();
    const Eigen::Index degree = p.degree();

    std::vector<double> betaSq(static_cast<std::size_t>(order));
    for (Eigen::Index t = 0; t < order; ++t) {
        const double b = beta.eval(static_cast<std::size_t>(t));
        if (!(b > 0.0))
            throw SpecError("block conjugation requires beta_n > 0");
        betaSq[static_cast<std::size_t>(t)] = b * b;
    }

    ComplexMatrix storage = ComplexMatrix::Zero(order * d, order * d);
    for (Eigen::Index m = 0; m < order; ++m)
        for (Eigen::Index n = 0; n < order; ++n) {
            // z-degree m = j + t, wbar-degree n = l + t with A_j, A_l, beta_t^2.
            ComplexMatrix blockSum = ComplexMatrix::Zero(d, d);
            const Eigen::Index tMin = std::max<Eigen::Index>(
                {Eigen::Index(0), m - degree, n - degree});
            const Eigen::Index tMax = std::min(m, n);
            for (Eigen::Index t = tMin; t <= tMax; ++t)
                blockSum += p.blocks[static_cast<std::size_t>(m - t)] *
                            betaSq[static_cast<std::size_t>(t)] *
                            p.blocks[static_cast<std::size_t>(n - t)].adjoint();
            storage.block(m * d, n * d, d, d) = blockSum;
        }
    return BlockCoefficientKernel(std::move(storage), order, d);
}

} // namespace rkdyn
