#include "rkdyn/conjugation.hpp"
#include "rkdyn/errors.hpp"
#include "rkdyn/truncated_model.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace rkdyn;

namespace {

TruncatedModel namedModel(Family fam, Eigen::Index n, double param = 0.0) {
    return TruncatedModel(diagonal_coefficients(SequenceSpec::named(fam, param), n));
}

std::vector<double> geometricSquares(Eigen::Index n) {
    std::vector<double> squares(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        squares[static_cast<std::size_t>(i)] = std::exp2(-static_cast<double>(i));
    return squares;
}

} // namespace

TEST_CASE("build_model weights") {
    SUBCASE("hardy: unweighted backward shift") {
        const TruncatedModel m = namedModel(Family::Hardy, 8);
        for (Eigen::Index n = 1; n < 8; ++n)
            CHECK(m.on_matrix()(n - 1, n).real() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(m.on_matrix().cwiseAbs().sum() == doctest::Approx(7.0).epsilon(1e-12));
    }
    SUBCASE("diagonal weights are successive weight ratios") {
        const TruncatedModel m = namedModel(Family::Dirichlet, 8);
        const SequenceSpec beta = SequenceSpec::named(Family::Dirichlet);
        for (Eigen::Index n = 1; n < 8; ++n) {
            const double expected = beta.eval(static_cast<std::size_t>(n - 1)) /
                                    beta.eval(static_cast<std::size_t>(n));
            CHECK(m.on_matrix()(n - 1, n).real() ==
                  doctest::Approx(expected).epsilon(1e-13));
        }
    }
    SUBCASE("bergman: weights sqrt(n/(n+1))") {
        const TruncatedModel m = namedModel(Family::Bergman, 8);
        for (Eigen::Index n = 1; n < 8; ++n) {
            const double expected =
                std::sqrt(static_cast<double>(n) / (static_cast<double>(n) + 1.0));
            CHECK(m.on_matrix()(n - 1, n).real() ==
                  doctest::Approx(expected).epsilon(1e-13));
        }
    }
    SUBCASE("degenerate gram propagates") {
        CHECK_THROWS_AS(TruncatedModel(CoefficientMatrix(ComplexMatrix::Zero(4, 4))),
                        NotPositiveDefiniteError);
    }
}

TEST_CASE("apply_adjoint is the exact coordinate shift") {
    const TruncatedModel m = namedModel(Family::Dirichlet, 8);
    SUBCASE("unit coordinates step down") {
        const VectorInD shifted = apply_adjoint(m, VectorInD::unit(8, 3));
        CHECK((shifted.coords.array() == VectorInD::unit(8, 2).coords.array()).all());
    }
    SUBCASE("the bottom coordinate annihilates") {
        const VectorInD shifted = apply_adjoint(m, VectorInD::unit(8, 0));
        CHECK(shifted.coords.isZero(0.0));
    }
    SUBCASE("short vectors are padded into the window") {
        ComplexVector c(2);
        c << Complex(1, 0), Complex(1, 0);
        const VectorInD shifted = apply_adjoint(m, VectorInD{c});
        CHECK(shifted.coords(0) == Complex(1, 0));
        CHECK(shifted.coords(1) == Complex(0, 0));
        CHECK(shifted.coords.size() == 8);
    }
    SUBCASE("no components ever appear at or above the window top") {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> dist(-1, 1);
        ComplexVector c(8);
        for (Eigen::Index i = 0; i < 8; ++i)
            c(i) = Complex(dist(rng), dist(rng));
        VectorInD v{c};
        for (int step = 0; step < 8; ++step) {
            v = apply_adjoint(m, v);
            CHECK(v.coords(7 - std::min(step, 7)) == Complex(0, 0));
        }
        CHECK(v.coords.isZero(0.0)); // nilpotent after N steps
    }
}

TEST_CASE("norms through the Gram factor agree with the quadratic form") {
    const Eigen::Index n = 32;
    const CoefficientMatrix a = conjugate_by_series(
        diagonal_coefficients(SequenceSpec::named(Family::Power, -1.0), n),
        geometric_series_coeffs(n));
    const TruncatedModel m(a);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-1, 1);
    for (int trial = 0; trial < 100; ++trial) {
        ComplexVector c(n);
        for (Eigen::Index i = 0; i < n; ++i)
            c(i) = Complex(dist(rng), dist(rng));
        const double viaModel = m.norm(VectorInD{c});
        const double quadratic = (c.adjoint() * m.gram().matrix * c)(0, 0).real();
        CHECK(viaModel * viaModel ==
              doctest::Approx(quadratic).epsilon(1e-12));
    }
}

TEST_CASE("eigenvector_check") {
    SUBCASE("exact zero at the origin") {
        for (Family fam : {Family::Hardy, Family::Dirichlet, Family::Bergman}) {
            const EigenvectorCheck ec = eigenvector_check(namedModel(fam, 32), Complex(0, 0));
            CHECK(ec.residual == 0.0);
        }
    }
    SUBCASE("hardy at w = 0.5, N = 40: residual within the dropped-term bound") {
        const EigenvectorCheck ec = eigenvector_check(namedModel(Family::Hardy, 40),
                                                      Complex(0.5, 0));
        CHECK(ec.residual <= std::pow(0.5, 39) * 2.0);
        CHECK(ec.residual == doctest::Approx(std::pow(0.5, 40)).epsilon(1e-10));
        CHECK(ec.residual <= ec.bound);
    }
    SUBCASE("residual scales like |w|^(N-1) when the window doubles") {
        const Complex w(0.6, 0.1);
        const double r16 = eigenvector_check(namedModel(Family::Hardy, 16), w).residual;
        const double r32 = eigenvector_check(namedModel(Family::Hardy, 32), w).residual;
        const double ratio = r32 / r16;
        CHECK(ratio <= std::pow(std::abs(w), 15)); // drops by at least |w|^(N-1)
        CHECK(ratio > 0.0);
    }
    SUBCASE("bound holds across moduli and orders") {
        for (Eigen::Index n : {Eigen::Index(16), Eigen::Index(32), Eigen::Index(64)})
            for (const Complex w : {Complex(0.3, 0), Complex(0.5, 0.2), Complex(0.9, 0),
                                    Complex(-0.4, -0.7)}) {
                const EigenvectorCheck ec = eigenvector_check(namedModel(Family::Bergman, n), w);
                CHECK(ec.residual <= ec.bound);
            }
    }
}

TEST_CASE("orbit") {
    SUBCASE("hardy: unit norms until annihilation") {
        const Orbit o = orbit(namedModel(Family::Hardy, 16), VectorInD::unit(16, 5), 8);
        REQUIRE(o.norms.size() == 9);
        for (std::size_t j = 0; j <= 8; ++j)
            CHECK(o.norms[j] == doctest::Approx(j <= 5 ? 1.0 : 0.0).epsilon(1e-14));
    }
    SUBCASE("dirichlet: norms follow 1/sqrt(6-j)") {
        const Orbit o = orbit(namedModel(Family::Dirichlet, 16), VectorInD::unit(16, 5), 8);
        for (std::size_t j = 0; j <= 8; ++j) {
            const double expected =
                j <= 5 ? 1.0 / std::sqrt(6.0 - static_cast<double>(j)) : 0.0;
            CHECK(o.norms[j] == doctest::Approx(expected).epsilon(1e-13));
        }
    }
    SUBCASE("zero vector stays zero") {
        const Orbit o = orbit(namedModel(Family::Hardy, 8), VectorInD::zero(8), 4);
        for (double v : o.norms)
            CHECK(v == 0.0);
    }
    SUBCASE("steps = 0 yields a single entry") {
        const Orbit o = orbit(namedModel(Family::Hardy, 8), VectorInD::unit(8, 2), 0);
        CHECK(o.norms.size() == 1);
        CHECK(o.leading.size() == 1);
    }
}

TEST_CASE("criterion_witness") {
    SUBCASE("dirichlet: witness norms decay as 1/(k+1)") {
        const Eigen::Index n = 64;
        const TruncatedModel m = namedModel(Family::Dirichlet, n);
        for (std::size_t k : {std::size_t(1), std::size_t(8), std::size_t(60)}) {
            const CriterionWitness w = criterion_witness(m, VectorInD::unit(n, 0), k);
            CHECK(w.exact);
            CHECK(w.norm_g_k * w.norm_g_k ==
                  doctest::Approx(1.0 / (static_cast<double>(k) + 1.0)).epsilon(1e-12));
        }
    }
    SUBCASE("hardy: witness norms never decay") {
        const Eigen::Index n = 64;
        const TruncatedModel m = namedModel(Family::Hardy, n);
        for (std::size_t k = 1; k <= 60; ++k) {
            const CriterionWitness w = criterion_witness(m, VectorInD::unit(n, 0), k);
            CHECK(w.norm_g_k == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
    SUBCASE("linearity: combined supports shift back exactly") {
        const Eigen::Index n = 32;
        const TruncatedModel m = namedModel(Family::Bergman, n);
        ComplexVector f = ComplexVector::Zero(n);
        f(0) = Complex(1, 0);
        f(1) = Complex(1, 0);
        const CriterionWitness w = criterion_witness(m, VectorInD{f}, 7);
        CHECK(w.exact);
        CHECK(w.g_k.coords(7) == Complex(1, 0));
        CHECK(w.g_k.coords(8) == Complex(1, 0));
    }
    SUBCASE("capacity is enforced") {
        const TruncatedModel m = namedModel(Family::Hardy, 16);
        CHECK_THROWS_AS(criterion_witness(m, VectorInD::unit(16, 4), 12), CapacityError);
        CHECK_NOTHROW(criterion_witness(m, VectorInD::unit(16, 4), 11));
    }
}

TEST_CASE("periodic_point") {
    const Eigen::Index n = 64;
    const TruncatedModel m(diagonal_from_squares(geometricSquares(n)));
    const DiagonalTail tail = [](std::size_t idx) {
        return std::exp2(-static_cast<double>(idx));
    };

    SUBCASE("frozen example: p = 1 sums every derivative vector") {
        const PeriodicPoint pp = periodic_point(m, VectorInD::unit(n, 0), 1, tail);
        for (Eigen::Index i = 0; i < n; ++i)
            CHECK(pp.x_p.coords(i) == Complex(1, 0));
        // Dropped tail: sum_{k >= 64} 2^-k = 2^-63.
        CHECK(pp.residual == doctest::Approx(std::sqrt(std::exp2(-63.0))).epsilon(1e-12));
        CHECK(pp.residual <= pp.bound * (1.0 + 1e-12));
        // One application of the shift reproduces x_p up to the boundary term.
        const VectorInD shifted = apply_adjoint(m, pp.x_p);
        ComplexVector diff = shifted.coords - pp.x_p.coords;
        CHECK(m.norm(VectorInD{diff}) == doctest::Approx(std::sqrt(std::exp2(-63.0))));
    }
    SUBCASE("distance to x matches the geometric closed form at p = 16") {
        const PeriodicPoint pp = periodic_point(m, VectorInD::unit(n, 0), 16, tail);
        const double closedForm = 1.0 / (65536.0 - 1.0); // sum_{j>=1} 2^(-16 j)
        CHECK(pp.distance_to_x * pp.distance_to_x ==
              doctest::Approx(closedForm).epsilon(0.1));
        CHECK(pp.residual <= 1e-9);
    }
    SUBCASE("distance decreases as the period grows") {
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t p : {1u, 2u, 4u, 8u, 16u}) {
            const PeriodicPoint pp = periodic_point(m, VectorInD::unit(n, 0), p, tail);
            CHECK(pp.distance_to_x < prev);
            prev = pp.distance_to_x;
        }
    }
    SUBCASE("zero input is fixed") {
        const PeriodicPoint pp = periodic_point(m, VectorInD::zero(n), 3, tail);
        CHECK(pp.x_p.coords.isZero(0.0));
        CHECK(pp.residual == 0.0);
        CHECK(pp.distance_to_x == 0.0);
    }
    SUBCASE("without a tail source the in-window boundary residual is reported") {
        const PeriodicPoint pp = periodic_point(m, VectorInD::unit(n, 0), 16);
        // The top in-window multiple of 16 is 48; its norm is 2^-24.
        CHECK(pp.residual == doctest::Approx(std::exp2(-24.0)).epsilon(1e-12));
        CHECK(pp.residual <= pp.bound * (1.0 + 1e-12));
    }
    SUBCASE("non-summable diagonals are refused") {
        const TruncatedModel flat = namedModel(Family::Hardy, 32);
        CHECK_THROWS_AS(periodic_point(flat, VectorInD::unit(32, 0), 2), GateError);
        const TruncatedModel slow = namedModel(Family::Dirichlet, 32);
        CHECK_THROWS_AS(periodic_point(slow, VectorInD::unit(32, 0), 2), GateError);
    }
}

TEST_CASE("compression_norm") {
    CHECK(compression_norm(namedModel(Family::Hardy, 32)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // Weight ratios sqrt((n+1)/n) peak at n = 1.
    CHECK(compression_norm(namedModel(Family::Dirichlet, 32)) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    const double bergman = compression_norm(namedModel(Family::Bergman, 64));
    CHECK(bergman < 1.0);
    CHECK(bergman == doctest::Approx(std::sqrt(63.0 / 64.0)).epsilon(1e-12));

    SUBCASE("monotone in the window and growing for a collapsing weight") {
        const SequenceSpec beta = SequenceSpec::expression("2^(-(n*n))");
        const double at4 = compression_norm(TruncatedModel(diagonal_coefficients(beta, 4)));
        const double at8 = compression_norm(TruncatedModel(diagonal_coefficients(beta, 8)));
        CHECK(at8 > at4);
        CHECK(at8 == doctest::Approx(std::exp2(13.0)).epsilon(1e-12)); // ratio 2^(2n-1), n = 7
    }
}
