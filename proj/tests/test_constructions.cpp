#include "rkdyn/block_kernel.hpp"
#include "rkdyn/conjugation.hpp"
#include "rkdyn/errors.hpp"
#include "rkdyn/tridiagonal.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace rkdyn;

namespace {

TridiagonalSpec standardSpec(Eigen::Index order) {
    return TridiagonalSpec{SequenceSpec::expression("1/(n+1)"),
                           SequenceSpec::expression("1/(2*(n+2))"), order, std::nullopt,
                           std::nullopt};
}

std::mt19937& rng() {
    static std::mt19937 gen(191);
    return gen;
}

TridiagonalSpec randomSpec(Eigen::Index order, bool complexPhases) {
    std::uniform_real_distribution<double> mag(0.5, 2.0);
    std::uniform_real_distribution<double> phase(-3.0, 3.0);
    std::vector<double> mu, nu, muPh, nuPh;
    for (Eigen::Index i = 0; i <= order; ++i) {
        mu.push_back(mag(rng()));
        nu.push_back(mag(rng()));
        muPh.push_back(phase(rng()));
        nuPh.push_back(phase(rng()));
    }
    if (complexPhases)
        return TridiagonalSpec{SequenceSpec::list(mu), SequenceSpec::list(nu), order,
                               SequenceSpec::list(muPh), SequenceSpec::list(nuPh)};
    return TridiagonalSpec{SequenceSpec::list(mu), SequenceSpec::list(nu), order, std::nullopt,
                           std::nullopt};
}

} // namespace

TEST_CASE("tridiagonal_coefficients frozen values") {
    const TridiagonalSpec t = standardSpec(8);
    const CoefficientMatrix a = tridiagonal_coefficients(t);
    // |mu_1|^2 + |nu_0|^2 = 1/4 + 1/16
    CHECK(a.entry(1, 1).real() == doctest::Approx(0.3125).epsilon(1e-14));
    // mu_0 conj(nu_0) = 1 * 1/4
    CHECK(a.entry(0, 1).real() == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(a.entry(1, 0) == std::conj(a.entry(0, 1)));
    CHECK(a.entry(0, 3) == Complex(0, 0));

    SUBCASE("matches the series oracle") {
        const ComplexMatrix brute = oracle::tridiagonal_series(t);
        CHECK((a.entries() - brute).cwiseAbs().maxCoeff() <= 1e-14);
    }
    SUBCASE("vanishing nu limit recovers the diagonal kernel") {
        TridiagonalSpec eps{SequenceSpec::named(Family::Hardy),
                            SequenceSpec::expression("0.00000001"), 6, std::nullopt,
                            std::nullopt};
        const CoefficientMatrix ae = tridiagonal_coefficients(eps);
        CHECK(ae.entry(3, 3).real() == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("zero generators are rejected") {
        TridiagonalSpec bad{SequenceSpec::expression("n"), SequenceSpec::named(Family::Hardy), 4,
                            std::nullopt, std::nullopt};
        CHECK_THROWS_AS(tridiagonal_coefficients(bad), SpecError);
    }
}

TEST_CASE("tridiagonal oracle equivalence on randomized specs") {
    for (int trial = 0; trial < 10; ++trial) {
        const TridiagonalSpec t = randomSpec(32, trial % 2 == 1);
        const CoefficientMatrix direct = tridiagonal_coefficients(t);
        const ComplexMatrix brute = oracle::tridiagonal_series(t);
        CHECK((direct.entries() - brute).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(psd_check(direct).positive_semidefinite);
    }
}

TEST_CASE("tridiagonal_boundedness") {
    SUBCASE("standard spec: both suprema exact") {
        const TridiagonalBoundedness r = tridiagonal_boundedness(standardSpec(64), 63);
        CHECK(r.sup_mu_ratio == 2.0);      // (n+2)/(n+1) peaks at n = 0
        CHECK(r.sup_nu_mu_ratio == 0.5);   // constant ratio
        CHECK(r.holds);
    }
    SUBCASE("contraction failure") {
        TridiagonalSpec t{SequenceSpec::named(Family::Hardy),
                          SequenceSpec::expression("2"), 8, std::nullopt, std::nullopt};
        const TridiagonalBoundedness r = tridiagonal_boundedness(t, 7);
        CHECK(r.sup_nu_mu_ratio == 2.0);
        CHECK_FALSE(r.holds);
    }
}

TEST_CASE("expand_znf_in_basis") {
    SUBCASE("frozen recursion values for the standard spec") {
        const std::vector<Complex> alpha = expand_znf_in_basis(standardSpec(16), 1);
        CHECK(alpha[0] == Complex(0, 0));
        CHECK(alpha[1].real() == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(alpha[2].real() == doctest::Approx(-0.25).epsilon(1e-14));
        CHECK(alpha[3].real() == doctest::Approx(0.125).epsilon(1e-14));
    }
    SUBCASE("coefficients below the shift index vanish") {
        for (Eigen::Index n : {Eigen::Index(0), Eigen::Index(3), Eigen::Index(7)}) {
            const std::vector<Complex> alpha = expand_znf_in_basis(standardSpec(16), n);
            for (Eigen::Index j = 0; j < n; ++j)
                CHECK(alpha[static_cast<std::size_t>(j)] == Complex(0, 0));
        }
    }
    SUBCASE("constant generators: alpha_1 = conj(c) - c, then ratio -c") {
        // mu = 1, nu = c with a complex phase.
        const double mod = 0.3;
        const double ph = 1.1;
        TridiagonalSpec t{SequenceSpec::named(Family::Hardy),
                          SequenceSpec::expression(std::to_string(mod)), 12, std::nullopt,
                          SequenceSpec::expression(std::to_string(ph))};
        const Complex c = std::polar(mod, ph);
        const std::vector<Complex> alpha = expand_znf_in_basis(t, 0);
        CHECK(std::abs(alpha[0] - Complex(1, 0)) <= 1e-14);
        CHECK(std::abs(alpha[1] - (std::conj(c) - c)) <= 1e-14);
        for (std::size_t k = 1; k + 1 < 8; ++k)
            CHECK(std::abs(alpha[k + 1] - (-c * alpha[k])) <= 1e-14);
    }
    SUBCASE("matches the triangular-solve oracle on random specs") {
        for (int trial = 0; trial < 10; ++trial) {
            const TridiagonalSpec t = randomSpec(32, trial % 2 == 0);
            for (Eigen::Index n : {Eigen::Index(0), Eigen::Index(4), Eigen::Index(11)}) {
                const std::vector<Complex> direct = expand_znf_in_basis(t, n);
                const std::vector<Complex> solved = oracle::expansion_solve(t, n);
                for (std::size_t j = 0; j < direct.size(); ++j)
                    CHECK(std::abs(direct[j] - solved[j]) <= 1e-12);
            }
        }
    }
    SUBCASE("expansion reproduces the monomial coefficients of z^n (a + b z)") {
        const TridiagonalSpec t = randomSpec(24, true);
        const Eigen::Index n = 5;
        const std::vector<Complex> alpha = expand_znf_in_basis(t, n);
        std::vector<Complex> mono(25, Complex(0, 0));
        for (Eigen::Index j = 0; j < 24; ++j) {
            mono[static_cast<std::size_t>(j)] +=
                alpha[static_cast<std::size_t>(j)] * t.mu_at(static_cast<std::size_t>(j));
            mono[static_cast<std::size_t>(j) + 1] +=
                alpha[static_cast<std::size_t>(j)] * t.nu_at(static_cast<std::size_t>(j));
        }
        const Complex mu0 = t.mu_at(0);
        for (Eigen::Index j = 0; j < 24; ++j) {
            Complex expected(0, 0);
            if (j == n)
                expected = Complex(std::norm(mu0), 0);
            if (j == n + 1)
                expected = mu0 * std::conj(t.nu_at(0));
            CHECK(std::abs(mono[static_cast<std::size_t>(j)] - expected) <= 1e-12);
        }
    }
    SUBCASE("capacity errors") {
        CHECK_THROWS_AS(expand_znf_in_basis(standardSpec(8), 7), CapacityError);
    }
}

TEST_CASE("znf_norm_bound") {
    SUBCASE("frozen values for the standard spec at n = 1") {
        const ZnfNormBound r = znf_norm_bound(standardSpec(64), 1);
        // alpha_1^2 = 4 plus a geometric tail of ratio 1/4: 4.0833...
        CHECK(r.norm_sq == doctest::Approx(4.0 + 0.0625 / 0.75).epsilon(1e-10));
        // C = M^2 (1 + (r+1)^2 R^2/(1-R^2)) = 1 + 9/3 = 4, bound = C/|mu_1|^2.
        CHECK(r.bound == doctest::Approx(16.0).epsilon(1e-12));
        CHECK(r.satisfied);
    }
    SUBCASE("single-term case at n = 0") {
        const ZnfNormBound r = znf_norm_bound(standardSpec(64), 0);
        CHECK(r.norm_sq >= 1.0); // alpha_0 = a / mu_0 = 1
        CHECK(r.satisfied);
    }
    SUBCASE("norm_sq stays finite and below the bound across shifts") {
        const TridiagonalSpec t = standardSpec(64);
        for (Eigen::Index n = 0; n <= 24; ++n) {
            const ZnfNormBound r = znf_norm_bound(t, n);
            CHECK(std::isfinite(r.norm_sq));
            CHECK(r.norm_sq_upper <= r.bound);
        }
    }
    SUBCASE("refuses when the contraction gate fails") {
        TridiagonalSpec t{SequenceSpec::named(Family::Hardy), SequenceSpec::expression("2"), 16,
                          std::nullopt, std::nullopt};
        CHECK_THROWS_AS(znf_norm_bound(t, 1), GateError);
    }
}

TEST_CASE("conjugate_by_series") {
    SUBCASE("theta over the squares kernel gives partial sums on the diagonal") {
        const Eigen::Index n = 32;
        const CoefficientMatrix base =
            diagonal_coefficients(SequenceSpec::named(Family::Power, -1.0), n);
        const CoefficientMatrix conj = conjugate_by_series(base, geometric_series_coeffs(n));
        double sum = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            sum += base.entry(i, i).real();
            CHECK(conj.entry(i, i).real() == doctest::Approx(sum).epsilon(1e-13));
        }
    }
    SUBCASE("identity series is a no-op") {
        const CoefficientMatrix base =
            diagonal_coefficients(SequenceSpec::named(Family::Dirichlet), 8);
        std::vector<Complex> p(8, Complex(0, 0));
        p[0] = Complex(1, 0);
        const CoefficientMatrix conj = conjugate_by_series(base, p);
        CHECK((conj.entries() - base.entries()).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("(1 + z) over the flat kernel: diagonal (1, 2, 2)") {
        const CoefficientMatrix base =
            diagonal_coefficients(SequenceSpec::named(Family::Hardy), 3);
        const CoefficientMatrix conj =
            conjugate_by_series(base, {Complex(1, 0), Complex(1, 0)});
        const ComplexMatrix brute = oracle::conjugated_series(
            base.entries(), {Complex(1, 0), Complex(1, 0)});
        CHECK((conj.entries() - brute).cwiseAbs().maxCoeff() <= 1e-14);
        CHECK(conj.entry(0, 0).real() == doctest::Approx(1.0));
        CHECK(conj.entry(1, 1).real() == doctest::Approx(2.0));
        CHECK(conj.entry(2, 2).real() == doctest::Approx(2.0));
    }
    SUBCASE("oracle equivalence on random series") {
        std::uniform_real_distribution<double> mag(0.5, 1.5);
        std::uniform_real_distribution<double> phase(-3.0, 3.0);
        for (int trial = 0; trial < 10; ++trial) {
            const Eigen::Index n = 32;
            std::vector<Complex> p;
            for (Eigen::Index i = 0; i < n; ++i)
                p.push_back(std::polar(mag(rng()), phase(rng())));
            const CoefficientMatrix base =
                diagonal_coefficients(SequenceSpec::named(Family::Dirichlet), n);
            const CoefficientMatrix conj = conjugate_by_series(base, p);
            const ComplexMatrix brute = oracle::conjugated_series(base.entries(), p);
            CHECK((conj.entries() - brute).cwiseAbs().maxCoeff() <= 1e-12);
            CHECK(psd_check(conj).positive_semidefinite);
        }
    }
    SUBCASE("zero constant term is rejected") {
        const CoefficientMatrix base =
            diagonal_coefficients(SequenceSpec::named(Family::Hardy), 4);
        CHECK_THROWS_AS(conjugate_by_series(base, {Complex(0, 0), Complex(1, 0)}), SpecError);
    }
}

TEST_CASE("geometric_series_coeffs") {
    CHECK(geometric_series_coeffs(1) == std::vector<Complex>{Complex(1, 0)});
    const std::vector<Complex> three = geometric_series_coeffs(3);
    CHECK(three.size() == 3);
    for (const Complex& c : three)
        CHECK(c == Complex(1, 0));
}

TEST_CASE("quasi_scalar") {
    const CoefficientMatrix a =
        diagonal_coefficients(SequenceSpec::named(Family::Dirichlet), 6);
    SUBCASE("d = 1 reproduces the scalar entries") {
        const BlockCoefficientKernel k = quasi_scalar(a, 1);
        for (Eigen::Index m = 0; m < 6; ++m)
            for (Eigen::Index n = 0; n < 6; ++n)
                CHECK(k.block(m, n)(0, 0) == a.entry(m, n));
    }
    SUBCASE("diagonal blocks are scalar multiples of the identity") {
        const BlockCoefficientKernel k = quasi_scalar(a, 2);
        for (Eigen::Index n = 0; n < 6; ++n) {
            const ComplexMatrix b = k.block(n, n);
            CHECK(b(0, 0) == a.entry(n, n));
            CHECK(b(1, 1) == a.entry(n, n));
            CHECK(b(0, 1) == Complex(0, 0));
        }
        // Quadratic form equals a_nn for every unit vector.
        ComplexVector eta(2);
        eta << Complex(0.6, 0), Complex(0.8, 0);
        const Complex q = (eta.adjoint() * k.block(3, 3) * eta)(0, 0);
        CHECK(q.real() == doctest::Approx(a.entry(3, 3).real()).epsilon(1e-15));
    }
}

TEST_CASE("block_polynomial_conjugate") {
    SUBCASE("degree zero with identity block reduces to quasi-scalar") {
        BlockPolynomial p;
        p.blocks.push_back(ComplexMatrix::Identity(2, 2));
        const BlockCoefficientKernel k =
            block_polynomial_conjugate(SequenceSpec::named(Family::Dirichlet), p, 6);
        const BlockCoefficientKernel q = quasi_scalar(
            diagonal_coefficients(SequenceSpec::named(Family::Dirichlet), 6), 2);
        CHECK((k.storage() - q.storage()).cwiseAbs().maxCoeff() <= 1e-15);
    }
    SUBCASE("scalar coefficients (1, 1) over the flat kernel: C_nn = 2 for n >= 1") {
        BlockPolynomial p;
        p.blocks.push_back(ComplexMatrix::Identity(1, 1));
        p.blocks.push_back(ComplexMatrix::Identity(1, 1));
        const BlockCoefficientKernel k =
            block_polynomial_conjugate(SequenceSpec::named(Family::Hardy), p, 8);
        CHECK(k.block(0, 0)(0, 0).real() == doctest::Approx(1.0));
        for (Eigen::Index n = 1; n < 8; ++n)
            CHECK(k.block(n, n)(0, 0).real() == doctest::Approx(2.0));
    }
    SUBCASE("frozen diagonal block: A_0 = I, A_1 = diag(1, 0), beta^2 = 1/(n+1)") {
        BlockPolynomial p;
        p.blocks.push_back(ComplexMatrix::Identity(2, 2));
        ComplexMatrix a1 = ComplexMatrix::Zero(2, 2);
        a1(0, 0) = Complex(1, 0);
        p.blocks.push_back(a1);
        const BlockCoefficientKernel k =
            block_polynomial_conjugate(SequenceSpec::named(Family::Dirichlet), p, 4);
        const ComplexMatrix c11 = k.block(1, 1);
        CHECK(c11(0, 0).real() == doctest::Approx(1.5).epsilon(1e-14));
        CHECK(c11(1, 1).real() == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(std::abs(c11(0, 1)) <= 1e-15);
    }
    SUBCASE("block-Hermitian storage") {
        std::uniform_real_distribution<double> mag(0.5, 1.5);
        std::uniform_real_distribution<double> phase(-3.0, 3.0);
        BlockPolynomial p;
        for (int j = 0; j < 3; ++j) {
            ComplexMatrix b(3, 3);
            for (Eigen::Index r = 0; r < 3; ++r)
                for (Eigen::Index c = 0; c < 3; ++c)
                    b(r, c) = std::polar(mag(rng()), phase(rng()));
            if (j == 0)
                b += 3.0 * ComplexMatrix::Identity(3, 3);
            p.blocks.push_back(std::move(b));
        }
        const BlockCoefficientKernel k =
            block_polynomial_conjugate(SequenceSpec::named(Family::Geometric, 0.7), p, 16);
        const double scale = k.storage().cwiseAbs().maxCoeff();
        CHECK(k.hermitian_residual() <= 1e-14 * scale);
    }
    SUBCASE("degenerate constant block is rejected") {
        BlockPolynomial p;
        p.blocks.push_back(ComplexMatrix::Zero(2, 2));
        CHECK_THROWS_AS(
            block_polynomial_conjugate(SequenceSpec::named(Family::Hardy), p, 4), SpecError);
    }
}
