#include "rkdyn/truncated_model.hpp"

#include "rkdyn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace rkdyn {

namespace {

ComplexMatrix backwardShift(Eigen::Index n) {
    ComplexMatrix s = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        s(i, i + 1) = Complex(1.0, 0.0);
    return s;
}

ComplexVector padded(const VectorInD& v, Eigen::Index order) {
    if (v.coords.size() > order)
        throw CapacityError("vector has more coordinates than the model order");
    if (v.coords.size() == order)
        return v.coords;
    ComplexVector c = ComplexVector::Zero(order);
    c.head(v.coords.size()) = v.coords;
    return c;
}

/// Coordinate backward shift; a pure copy with no arithmetic.
ComplexVector shiftDown(const ComplexVector& c, Eigen::Index times = 1) {
    const Eigen::Index n = c.size();
    ComplexVector out = ComplexVector::Zero(n);
    if (times < n)
        out.head(n - times) = c.tail(n - times);
    return out;
}

/// Support bound: one past the last nonzero coordinate.
Eigen::Index supportEnd(const ComplexVector& c) {
    for (Eigen::Index j = c.size(); j-- > 0;)
        if (c(j) != Complex(0.0, 0.0))
            return j + 1;
    return 0;
}

double realDiag(const GramData& g, Eigen::Index n) { return g.matrix(n, n).real(); }

} // namespace

VectorInD VectorInD::unit(Eigen::Index order, Eigen::Index index) {
    if (index < 0 || index >= order)
        throw CapacityError("unit coordinate index outside the window");
    ComplexVector c = ComplexVector::Zero(order);
    c(index) = Complex(1.0, 0.0);
    return VectorInD{std::move(c)};
}

VectorInD VectorInD::zero(Eigen::Index order) {
    return VectorInD{ComplexVector::Zero(order)};
}

TruncatedModel::TruncatedModel(const CoefficientMatrix& a) : gram_(rkdyn::gram(a)) {
    const ComplexMatrix& u = gram_.factor(); // throws when the PD gate failed
    const Eigen::Index n = a.order();
    const ComplexMatrix m = u * backwardShift(n);
    // on = m U^{-1}: solve on U = m via the transposed triangular system.
    ComplexMatrix xt = u.transpose()
                           .triangularView<Eigen::Lower>()
                           .solve(ComplexMatrix(m.transpose()));
    on_matrix_ = xt.transpose();
}

double TruncatedModel::norm(const VectorInD& v) const {
    return (*gram_.cholesky * padded(v, order())).norm();
}

TruncatedModel build_model(const CoefficientMatrix& a) { return TruncatedModel(a); }

VectorInD apply_adjoint(const TruncatedModel& model, const VectorInD& v) {
    return VectorInD{shiftDown(padded(v, model.order()))};
}

EigenvectorCheck eigenvector_check(const TruncatedModel& model, Complex w) {
    if (std::abs(w) >= 1.0)
        throw std::invalid_argument("eigenvector check requires |w| < 1");
    const Eigen::Index n = model.order();
    const Complex wbar = std::conj(w);

    // Section coords c_j = wbar^j, built by successive multiplication so the
    // in-window part of the residual cancels exactly in floating point.
    ComplexVector c(n);
    c(0) = Complex(1.0, 0.0);
    for (Eigen::Index j = 1; j < n; ++j)
        c(j) = c(j - 1) * wbar;

    ComplexVector r = shiftDown(c) - wbar * c;
    EigenvectorCheck out{};
    out.residual = model.norm(VectorInD{std::move(r)});
    const double topNorm = std::sqrt(realDiag(model.gram(), n - 1));
    out.bound = std::pow(std::abs(w), static_cast<double>(n - 1)) * (1.0 + std::abs(w)) * topNorm;
    return out;
}

Orbit orbit(const TruncatedModel& model, const VectorInD& v, std::size_t steps,
            std::size_t leading_coords) {
    const Eigen::Index keep =
        std::min<Eigen::Index>(static_cast<Eigen::Index>(leading_coords), model.order());
    Orbit out;
    ComplexVector c = padded(v, model.order());
    for (std::size_t j = 0; j <= steps; ++j) {
        out.norms.push_back(model.norm(VectorInD{c}));
        out.leading.emplace_back(c.data(), c.data() + keep);
        if (j < steps)
            c = shiftDown(c);
    }
    return out;
}

CriterionWitness criterion_witness(const TruncatedModel& model, const VectorInD& f,
                                   std::size_t k) {
    const Eigen::Index n = model.order();
    const ComplexVector fc = padded(f, n);
    const Eigen::Index m = supportEnd(fc);
    if (m + static_cast<Eigen::Index>(k) > n)
        throw CapacityError("witness shift " + std::to_string(k) + " with support " +
                            std::to_string(m) + " exceeds the window " + std::to_string(n));

    ComplexVector g = ComplexVector::Zero(n);
    for (Eigen::Index j = 0; j < m; ++j)
        g(j + static_cast<Eigen::Index>(k)) = fc(j);

    ComplexVector back = g;
    for (std::size_t i = 0; i < k; ++i)
        back = shiftDown(back);

    CriterionWitness out{VectorInD{std::move(g)}, 0.0, (back.array() == fc.array()).all()};
    out.norm_g_k = model.norm(out.g_k);
    return out;
}

PeriodicPoint periodic_point(const TruncatedModel& model, const VectorInD& x, std::size_t p,
                             const DiagonalTail& tail) {
    if (p == 0)
        throw std::invalid_argument("period must be positive");
    const Eigen::Index n = model.order();
    const ComplexVector xc = padded(x, n);
    const Eigen::Index m = supportEnd(xc);

    // Summability gate: the diagonal's absolute tails must certifiably
    // vanish inside the window, otherwise the series construction is
    // inapplicable and we refuse.
    {
        std::vector<double> tails(static_cast<std::size_t>(n) + 1, 0.0);
        for (Eigen::Index i = n; i-- > 0;)
            tails[static_cast<std::size_t>(i)] =
                tails[static_cast<std::size_t>(i) + 1] + std::abs(realDiag(model.gram(), i));
        bool certified = false;
        for (std::size_t cut = 0; cut <= static_cast<std::size_t>(n) / 2; ++cut)
            if (tails[cut] < 1e-6) {
                certified = true;
                break;
            }
        if (!certified)
            throw GateError("diagonal moments are not certifiably summable on this window; "
                            "periodic-point construction refused (tail at half-window " +
                            std::to_string(tails[static_cast<std::size_t>(n) / 2]) + ")");
    }

    // x_p = sum_{k>=1} T^{kp} x + x + sum_{k>=1} u_{kp}, all terms below N.
    ComplexVector coords = xc;
    for (std::size_t k = 1; static_cast<Eigen::Index>(k * p) < m; ++k)
        coords += shiftDown(xc, static_cast<Eigen::Index>(k * p));
    for (std::size_t k = 1; static_cast<Eigen::Index>(k * p) < n; ++k) {
        const Eigen::Index base = static_cast<Eigen::Index>(k * p);
        for (Eigen::Index j = 0; j < m && base + j < n; ++j)
            coords(base + j) += xc(j);
    }

    PeriodicPoint out{VectorInD{coords}, 0.0, 0.0, 0.0};

    // In-window bound: mass of x_p sitting in the last p slots of the window.
    double boundSq = 0.0;
    for (Eigen::Index i = std::max<Eigen::Index>(0, n - static_cast<Eigen::Index>(p)); i < n; ++i)
        boundSq += realDiag(model.gram(), i) * std::norm(coords(i));
    out.bound = std::sqrt(boundSq);

    if (tail && m > 0) {
        // Norm of the dropped series terms, combining coefficients that land
        // on the same index. Out-of-window Gram treated as diagonal (exact
        // for diagonal kernels, the only kind with a meaningful tail here).
        std::map<std::size_t, Complex> droppedCoef;
        double firstBlockMass = -1.0;
        for (std::size_t k = 1; k < 1000000; ++k) {
            const std::size_t base = k * p;
            if (base >= static_cast<std::size_t>(n) + 4096 * p + static_cast<std::size_t>(m))
                break;
            double blockMass = 0.0;
            bool anyDropped = false;
            for (Eigen::Index j = 0; j < m; ++j) {
                const std::size_t idx = base + static_cast<std::size_t>(j);
                if (idx < static_cast<std::size_t>(n))
                    continue;
                anyDropped = true;
                droppedCoef[idx] += xc(j);
                blockMass += tail(idx) * std::norm(xc(j));
            }
            if (anyDropped) {
                if (firstBlockMass < 0.0)
                    firstBlockMass = blockMass;
                if (blockMass <= 1e-32 * firstBlockMass || blockMass == 0.0)
                    break;
            }
        }
        double residSq = 0.0;
        for (const auto& [idx, coef] : droppedCoef)
            residSq += tail(idx) * std::norm(coef);
        out.residual = std::sqrt(residSq);
    } else {
        ComplexVector shifted = shiftDown(coords, static_cast<Eigen::Index>(p));
        out.residual = model.norm(VectorInD{ComplexVector(shifted - coords)});
    }

    out.distance_to_x = model.norm(VectorInD{ComplexVector(coords - xc)});
    return out;
}

double compression_norm(const TruncatedModel& model) {
    const ComplexMatrix& t = model.on_matrix();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ComplexMatrix(t.adjoint() * t),
                                                    Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

} // namespace rkdyn
