#include "rkdyn/tridiagonal.hpp"

#include "rkdyn/errors.hpp"

#include <cmath>

namespace rkdyn {

namespace {

Complex fromPolar(double modulus, const std::optional<SequenceSpec>& phase, std::size_t n) {
    if (!phase)
        return Complex(modulus, 0.0);
    return std::polar(modulus, phase->eval(n));
}

void requireNonzero(Complex v, const char* name, std::size_t n) {
    if (v == Complex(0.0, 0.0))
        throw SpecError(std::string(name) + "_" + std::to_string(n) +
                        " is zero; tridiagonal generators must be nonzero");
}

} // namespace

Complex TridiagonalSpec::mu_at(std::size_t n) const {
    Complex v = fromPolar(mu.eval(n), mu_phase, n);
    requireNonzero(v, "mu", n);
    return v;
}

Complex TridiagonalSpec::nu_at(std::size_t n) const {
    Complex v = fromPolar(nu.eval(n), nu_phase, n);
    requireNonzero(v, "nu", n);
    return v;
}

CoefficientMatrix tridiagonal_coefficients(const TridiagonalSpec& spec) {
    const Eigen::Index order = spec.order;
    if (order < 1)
        throw SpecError("tridiagonal order must be positive");
    ComplexMatrix a = ComplexMatrix::Zero(order, order);
    Complex muPrev = spec.mu_at(0);
    a(0, 0) = Complex(std::norm(muPrev), 0.0);
    for (Eigen::Index n = 1; n < order; ++n) {
        Complex mu = spec.mu_at(static_cast<std::size_t>(n));
        Complex nu = spec.nu_at(static_cast<std::size_t>(n - 1));
        a(n, n) = Complex(std::norm(mu) + std::norm(nu), 0.0);
        a(n - 1, n) = muPrev * std::conj(nu);
        a(n, n - 1) = std::conj(muPrev) * nu;
        muPrev = mu;
    }
    return CoefficientMatrix(std::move(a));
}

TridiagonalBoundedness tridiagonal_boundedness(const TridiagonalSpec& spec, std::size_t window) {
    if (window == 0)
        throw SpecError("boundedness window must be positive");
    TridiagonalBoundedness r{0.0, 0.0, window, false};
    for (std::size_t n = 0; n < window; ++n) {
        const double muNext = std::abs(spec.mu_at(n + 1));
        r.sup_mu_ratio = std::max(r.sup_mu_ratio, std::abs(spec.mu_at(n)) / muNext);
        r.sup_nu_mu_ratio = std::max(r.sup_nu_mu_ratio, std::abs(spec.nu_at(n)) / muNext);
    }
    r.holds = std::isfinite(r.sup_mu_ratio) && r.sup_nu_mu_ratio < 1.0;
    return r;
}

std::vector<Complex> expand_znf_in_basis(const TridiagonalSpec& spec, Eigen::Index n) {
    const Eigen::Index order = spec.order;
    if (n < 0 || n + 1 >= order)
        throw CapacityError("expansion index " + std::to_string(n) +
                            " leaves no margin below order " + std::to_string(order));
    const Complex mu0 = spec.mu_at(0);
    const Complex nu0 = spec.nu_at(0);
    const double a = std::norm(mu0);          // k(.,0) = a + b z
    const Complex b = mu0 * std::conj(nu0);

    std::vector<Complex> alpha(static_cast<std::size_t>(order), Complex(0.0, 0.0));
    const auto idx = [](Eigen::Index i) { return static_cast<std::size_t>(i); };
    alpha[idx(n)] = a / spec.mu_at(idx(n));
    alpha[idx(n + 1)] = b / spec.mu_at(idx(n + 1)) -
                        (a / spec.mu_at(idx(n))) *
                            (spec.nu_at(idx(n)) / spec.mu_at(idx(n + 1)));
    for (Eigen::Index j = n + 2; j < order; ++j)
        alpha[idx(j)] = -(spec.nu_at(idx(j - 1)) / spec.mu_at(idx(j))) * alpha[idx(j - 1)];
    return alpha;
}

ZnfNormBound znf_norm_bound(const TridiagonalSpec& spec, Eigen::Index n) {
    const std::size_t window = static_cast<std::size_t>(spec.order) - 1;
    TridiagonalBoundedness gate = tridiagonal_boundedness(spec, window);
    if (!gate.holds)
        throw GateError("contraction ratio sup |nu_n / mu_{n+1}| = " +
                        std::to_string(gate.sup_nu_mu_ratio) +
                        " is not < 1; norm bound undefined");

    const std::vector<Complex> alpha = expand_znf_in_basis(spec, n);
    double normSq = 0.0;
    for (const Complex& c : alpha)
        normSq += std::norm(c);

    const double R = gate.sup_nu_mu_ratio;
    const double r = gate.sup_mu_ratio;
    const double tail = std::norm(alpha.back()) * R * R / (1.0 - R * R);

    const Complex mu0 = spec.mu_at(0);
    const Complex nu0 = spec.nu_at(0);
    const double M = std::max(std::norm(mu0), std::abs(mu0 * std::conj(nu0)));
    const double C = M * M * (1.0 + (r + 1.0) * (r + 1.0) * (R * R / (1.0 - R * R)));
    const double bound = C / std::norm(spec.mu_at(static_cast<std::size_t>(n)));

    ZnfNormBound out{normSq, normSq + tail, bound, false};
    out.satisfied = out.norm_sq_upper <= bound;
    return out;
}

} // namespace rkdyn
