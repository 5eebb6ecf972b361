#include "rkdyn/verify.hpp"

#include "rkdyn/analyze.hpp"
#include "rkdyn/block_kernel.hpp"
#include "rkdyn/conjugation.hpp"
#include "rkdyn/criteria.hpp"
#include "rkdyn/errors.hpp"
#include "rkdyn/tridiagonal.hpp"
#include "rkdyn/truncated_model.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace rkdyn {

namespace {

struct Builtin {
    std::string name;
    std::function<CoefficientMatrix(Eigen::Index)> make;
};

TridiagonalSpec standardTridiagonal(Eigen::Index order) {
    return TridiagonalSpec{SequenceSpec::expression("1/(n+1)"),
                           SequenceSpec::expression("1/(2*(n+2))"), order, std::nullopt,
                           std::nullopt};
}

const std::vector<Builtin>& builtins() {
    static const std::vector<Builtin> kernels = {
        {"hardy", [](Eigen::Index n) { return diagonal_coefficients(SequenceSpec::named(Family::Hardy), n); }},
        {"bergman", [](Eigen::Index n) { return diagonal_coefficients(SequenceSpec::named(Family::Bergman), n); }},
        {"dirichlet", [](Eigen::Index n) { return diagonal_coefficients(SequenceSpec::named(Family::Dirichlet), n); }},
        {"geometric-0.5", [](Eigen::Index n) { return diagonal_coefficients(SequenceSpec::named(Family::Geometric, 0.5), n); }},
        {"power-neg1", [](Eigen::Index n) { return diagonal_coefficients(SequenceSpec::named(Family::Power, -1.0), n); }},
        {"tridiagonal-std", [](Eigen::Index n) { return tridiagonal_coefficients(standardTridiagonal(n)); }},
    };
    return kernels;
}

class Suite {
public:
    void check(const std::string& name, bool passed, const std::string& detail = {}) {
        results_.push_back(CheckResult{name, passed, detail});
    }

    template <typename F>
    void guarded(const std::string& name, F&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            check(name + ".exception", false, e.what());
        }
    }

    std::vector<CheckResult> take() { return std::move(results_); }

private:
    std::vector<CheckResult> results_;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

ComplexVector randomVector(std::mt19937& rng, Eigen::Index n) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexVector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = Complex(dist(rng), dist(rng));
    return v;
}

// ---------------------------------------------------------------------------
// structural: Gram identities, shift exactness, eigenvector residuals
// ---------------------------------------------------------------------------

void structuralSuite(Suite& s) {
    for (const Builtin& b : builtins()) {
        s.guarded(b.name, [&] {
            const Eigen::Index n = 64;
            const CoefficientMatrix a = b.make(n);
            const double scale = std::max(1.0, a.entries().cwiseAbs().maxCoeff());
            s.check(b.name + ".hermitian", a.hermitian_residual() <= 1e-12 * scale,
                    fmt(a.hermitian_residual()));
            s.check(b.name + ".psd", psd_check(a).positive_semidefinite);

            const GramData g = gram(a);
            s.check(b.name + ".gram_pd", g.positive_definite(),
                    "min eigenvalue " + fmt(g.min_eigenvalue));
            if (!g.positive_definite())
                return;
            const double recon =
                ((*g.cholesky).adjoint() * (*g.cholesky) - g.matrix).norm() / g.matrix.norm();
            s.check(b.name + ".cholesky_reconstruction", recon <= 1e-10, fmt(recon));

            const TruncatedModel model(a);
            std::mt19937 rng(2024);
            bool normsOk = true, conjOk = true;
            for (int trial = 0; trial < 100; ++trial) {
                const ComplexVector c = randomVector(rng, n);
                const double viaGram = (c.adjoint() * g.matrix * c)(0, 0).real();
                const double viaU = ((*g.cholesky) * c).squaredNorm();
                if (std::abs(viaGram - viaU) > 1e-12 * std::max(1.0, std::abs(viaU)))
                    normsOk = false;
                const ComplexVector lhs = model.on_matrix() * ((*g.cholesky) * c);
                ComplexVector shifted = ComplexVector::Zero(n);
                shifted.head(n - 1) = c.tail(n - 1);
                const ComplexVector rhs = (*g.cholesky) * shifted;
                if ((lhs - rhs).norm() > 1e-10 * (rhs.norm() + 1.0))
                    conjOk = false;
            }
            s.check(b.name + ".norm_consistency", normsOk);
            s.check(b.name + ".shift_conjugation", conjOk);

            bool shiftExact = true;
            for (Eigen::Index j = 1; j < n; ++j) {
                const VectorInD shifted = apply_adjoint(model, VectorInD::unit(n, j));
                if (!(shifted.coords.array() == VectorInD::unit(n, j - 1).coords.array()).all())
                    shiftExact = false;
            }
            const VectorInD bottom = apply_adjoint(model, VectorInD::unit(n, 0));
            if (!bottom.coords.isZero(0.0))
                shiftExact = false;
            s.check(b.name + ".shift_exact", shiftExact);

            VectorInD v{randomVector(rng, n)};
            for (Eigen::Index i = 0; i < n; ++i)
                v = apply_adjoint(model, v);
            s.check(b.name + ".annihilation", v.coords.isZero(0.0));

            bool eigenOk = true;
            std::string eigenDetail;
            for (Eigen::Index order : {Eigen::Index(16), Eigen::Index(32), Eigen::Index(64)}) {
                const TruncatedModel sub(b.make(order));
                for (Complex w : {Complex(0.0, 0.0), Complex(0.3, 0.0), Complex(0.5, 0.2),
                                  Complex(0.9, 0.0)}) {
                    const EigenvectorCheck ec = eigenvector_check(sub, w);
                    const bool atZero = w == Complex(0.0, 0.0);
                    if ((atZero && ec.residual != 0.0) || ec.residual > ec.bound) {
                        eigenOk = false;
                        eigenDetail = "N=" + std::to_string(order) + " w=(" + fmt(w.real()) +
                                      "," + fmt(w.imag()) + ") residual " + fmt(ec.residual) +
                                      " bound " + fmt(ec.bound);
                    }
                }
            }
            s.check(b.name + ".eigenvector_residual", eigenOk, eigenDetail);
        });
    }
}

// ---------------------------------------------------------------------------
// oracles: brute-force series expansions against the closed constructions
// ---------------------------------------------------------------------------

CoefficientMatrix bruteForceTridiagonal(const TridiagonalSpec& t) {
    const Eigen::Index n = t.order;
    ComplexMatrix acc = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        // e_k spans monomials k and k+1; keep products inside the window.
        const Complex mu = t.mu_at(static_cast<std::size_t>(k));
        const Complex nu = t.nu_at(static_cast<std::size_t>(k));
        const Complex coef[2] = {mu, nu};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const Eigen::Index row = k + i;
                const Eigen::Index col = k + j;
                if (row < n && col < n)
                    acc(row, col) += coef[i] * std::conj(coef[j]);
            }
    }
    return CoefficientMatrix(std::move(acc));
}

ComplexMatrix bruteForceConjugatedDiagonal(const std::vector<double>& betaSq,
                                           const std::vector<Complex>& p) {
    const Eigen::Index n = static_cast<Eigen::Index>(betaSq.size());
    ComplexMatrix c = ComplexMatrix::Zero(n, n);
    for (Eigen::Index m = 0; m < n; ++m)
        for (Eigen::Index k = 0; k < n; ++k)
            for (Eigen::Index s = 0; s <= std::min(m, k); ++s) {
                const std::size_t pm = static_cast<std::size_t>(m - s);
                const std::size_t pk = static_cast<std::size_t>(k - s);
                if (pm < p.size() && pk < p.size())
                    c(m, k) += p[pm] * betaSq[static_cast<std::size_t>(s)] * std::conj(p[pk]);
            }
    return c;
}

std::vector<Complex> triangularSolveAlpha(const TridiagonalSpec& t, Eigen::Index n) {
    // Solve E alpha = rhs by forward substitution, where column j of E holds
    // the monomial coefficients of e_j and rhs those of z^n (a + b z).
    const Eigen::Index order = t.order;
    const Complex mu0 = t.mu_at(0);
    const Complex nu0 = t.nu_at(0);
    std::vector<Complex> rhs(static_cast<std::size_t>(order) + 1, Complex(0.0, 0.0));
    rhs[static_cast<std::size_t>(n)] = Complex(std::norm(mu0), 0.0);
    rhs[static_cast<std::size_t>(n) + 1] = mu0 * std::conj(nu0);

    std::vector<Complex> alpha(static_cast<std::size_t>(order), Complex(0.0, 0.0));
    for (Eigen::Index j = 0; j < order; ++j) {
        Complex residual = rhs[static_cast<std::size_t>(j)];
        if (j >= 1)
            residual -= t.nu_at(static_cast<std::size_t>(j - 1)) * alpha[static_cast<std::size_t>(j - 1)];
        alpha[static_cast<std::size_t>(j)] = residual / t.mu_at(static_cast<std::size_t>(j));
    }
    return alpha;
}

void oraclesSuite(Suite& s) {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> mag(0.5, 2.0);
    std::uniform_real_distribution<double> phase(-3.0, 3.0);

    s.guarded("tridiagonal_oracle", [&] {
        const Eigen::Index n = 32;
        bool ok = true;
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> mu, nu, muPh, nuPh;
            for (Eigen::Index i = 0; i <= n; ++i) {
                mu.push_back(mag(rng));
                nu.push_back(mag(rng));
                muPh.push_back(phase(rng));
                nuPh.push_back(phase(rng));
            }
            TridiagonalSpec t{SequenceSpec::list(mu), SequenceSpec::list(nu), n,
                              SequenceSpec::list(muPh), SequenceSpec::list(nuPh)};
            const CoefficientMatrix direct = tridiagonal_coefficients(t);
            const CoefficientMatrix brute = bruteForceTridiagonal(t);
            worst = std::max(worst,
                             (direct.entries() - brute.entries()).cwiseAbs().maxCoeff());
            if (worst > 1e-12)
                ok = false;
        }
        s.check("tridiagonal_oracle", ok, "max deviation " + fmt(worst));
    });

    s.guarded("conjugation_oracle", [&] {
        const Eigen::Index n = 32;
        bool ok = true;
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> betaSq;
            std::vector<Complex> p;
            for (Eigen::Index i = 0; i < n; ++i) {
                betaSq.push_back(mag(rng));
                p.push_back(std::polar(mag(rng), phase(rng)));
            }
            const CoefficientMatrix base = diagonal_from_squares(betaSq);
            const CoefficientMatrix viaMatrix = conjugate_by_series(base, p);
            const ComplexMatrix brute = bruteForceConjugatedDiagonal(betaSq, p);
            worst = std::max(worst, (viaMatrix.entries() - brute).cwiseAbs().maxCoeff());
            if (worst > 1e-12)
                ok = false;
        }
        s.check("conjugation_oracle", ok, "max deviation " + fmt(worst));
    });

    s.guarded("theta_partial_sums", [&] {
        const Eigen::Index n = 64;
        const CoefficientMatrix base =
            diagonal_coefficients(SequenceSpec::named(Family::Power, -1.0), n);
        const CoefficientMatrix conj = conjugate_by_series(base, geometric_series_coeffs(n));
        const std::vector<double> d = normalized_diagonal(conj);
        double sum = 0.0;
        double worst = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            const double b = 1.0 / (static_cast<double>(k) + 1.0);
            sum += b * b;
            worst = std::max(worst, std::abs(d[static_cast<std::size_t>(k)] - sum));
        }
        s.check("theta_partial_sums", worst <= 1e-12, "max deviation " + fmt(worst));
    });

    s.guarded("congruence_positivity", [&] {
        const Eigen::Index n = 24;
        std::vector<Complex> p;
        for (Eigen::Index i = 0; i < n; ++i)
            p.push_back(std::polar(mag(rng), phase(rng)));
        const CoefficientMatrix base =
            diagonal_coefficients(SequenceSpec::named(Family::Dirichlet), n);
        const CoefficientMatrix conj = conjugate_by_series(base, p);
        s.check("congruence_positivity", psd_check(conj).positive_semidefinite);
    });

    s.guarded("alpha_expansion_oracle", [&] {
        bool ok = true;
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const Eigen::Index n = 32;
            std::vector<double> mu, nu;
            for (Eigen::Index i = 0; i <= n; ++i) {
                mu.push_back(mag(rng));
                nu.push_back(0.4 * mag(rng) / 2.0); // keep the contraction gate satisfied
            }
            TridiagonalSpec t{SequenceSpec::list(mu), SequenceSpec::list(nu), n, std::nullopt,
                              std::nullopt};
            for (Eigen::Index idx : {Eigen::Index(0), Eigen::Index(3), Eigen::Index(10)}) {
                const std::vector<Complex> direct = expand_znf_in_basis(t, idx);
                const std::vector<Complex> solved = triangularSolveAlpha(t, idx);
                for (std::size_t j = 0; j < direct.size(); ++j)
                    worst = std::max(worst, std::abs(direct[j] - solved[j]));
            }
            if (worst > 1e-12)
                ok = false;
        }
        s.check("alpha_expansion_oracle", ok, "max deviation " + fmt(worst));
    });

    s.guarded("expansion_identity", [&] {
        // Monomial coefficients of sum_j alpha_j e_j reproduce z^n (a + b z).
        const Eigen::Index n = 32;
        const TridiagonalSpec t = standardTridiagonal(n);
        double worst = 0.0;
        for (Eigen::Index idx : {Eigen::Index(1), Eigen::Index(5)}) {
            const std::vector<Complex> alpha = expand_znf_in_basis(t, idx);
            std::vector<Complex> mono(static_cast<std::size_t>(n), Complex(0.0, 0.0));
            for (Eigen::Index j = 0; j < n; ++j) {
                mono[static_cast<std::size_t>(j)] +=
                    alpha[static_cast<std::size_t>(j)] * t.mu_at(static_cast<std::size_t>(j));
                if (j + 1 < n)
                    mono[static_cast<std::size_t>(j + 1)] +=
                        alpha[static_cast<std::size_t>(j)] * t.nu_at(static_cast<std::size_t>(j));
            }
            const Complex mu0 = t.mu_at(0);
            std::vector<Complex> expected(static_cast<std::size_t>(n), Complex(0.0, 0.0));
            expected[static_cast<std::size_t>(idx)] = Complex(std::norm(mu0), 0.0);
            expected[static_cast<std::size_t>(idx) + 1] = mu0 * std::conj(t.nu_at(0));
            for (std::size_t j = 0; j < mono.size(); ++j)
                worst = std::max(worst, std::abs(mono[j] - expected[j]));
        }
        s.check("expansion_identity", worst <= 1e-12, "max deviation " + fmt(worst));
    });

    s.guarded("znf_norm_bound", [&] {
        const TridiagonalSpec t = standardTridiagonal(64);
        bool ok = true;
        for (Eigen::Index idx = 0; idx <= 24; ++idx) {
            const ZnfNormBound r = znf_norm_bound(t, idx);
            if (!r.satisfied)
                ok = false;
        }
        s.check("znf_norm_bound", ok);
    });

    s.guarded("block_diagonal_formula", [&] {
        bool ok = true;
        double worst = 0.0;
        std::uniform_int_distribution<int> dimDist(1, 4);
        std::uniform_int_distribution<int> degDist(0, 3);
        for (int trial = 0; trial < 5; ++trial) {
            const Eigen::Index d = dimDist(rng);
            const int degree = degDist(rng);
            BlockPolynomial p;
            for (int j = 0; j <= degree; ++j) {
                ComplexMatrix blockJ(d, d);
                for (Eigen::Index r = 0; r < d; ++r)
                    for (Eigen::Index c = 0; c < d; ++c)
                        blockJ(r, c) = std::polar(mag(rng), phase(rng));
                if (j == 0)
                    blockJ += 3.0 * ComplexMatrix::Identity(d, d); // keep A_0 injective
                p.blocks.push_back(std::move(blockJ));
            }
            const Eigen::Index order = 32;
            const SequenceSpec beta = SequenceSpec::named(Family::Geometric, 0.8);
            const BlockCoefficientKernel k = block_polynomial_conjugate(beta, p, order);
            for (Eigen::Index nIdx = 0; nIdx < order; ++nIdx) {
                ComplexMatrix expected = ComplexMatrix::Zero(d, d);
                for (Eigen::Index j = 0; j <= std::min<Eigen::Index>(nIdx, degree); ++j) {
                    const double b = beta.eval(static_cast<std::size_t>(nIdx - j));
                    expected += p.blocks[static_cast<std::size_t>(j)] *
                                p.blocks[static_cast<std::size_t>(j)].adjoint() * (b * b);
                }
                worst = std::max(worst,
                                 (k.block(nIdx, nIdx) - expected).cwiseAbs().maxCoeff());
            }
            if (worst > 1e-12)
                ok = false;
        }
        s.check("block_diagonal_formula", ok, "max deviation " + fmt(worst));
    });

    s.guarded("gram_pairing_oracle", [&] {
        // Independent Gram: expand each Khat_n in base-space coordinates and
        // pair with the base monomial Gram diag(1 / beta_k^2).
        const Eigen::Index n = 48;
        bool ok = true;
        const SequenceSpec beta = SequenceSpec::named(Family::Dirichlet);
        const CoefficientMatrix diag = diagonal_coefficients(beta, n);
        const GramData gDiag = gram(diag);
        ComplexMatrix pairing = ComplexMatrix::Zero(n, n);
        for (Eigen::Index mIdx = 0; mIdx < n; ++mIdx)
            for (Eigen::Index nIdx = 0; nIdx < n; ++nIdx) {
                Complex sum(0.0, 0.0);
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double bk = beta.eval(static_cast<std::size_t>(k));
                    sum += std::conj(diag.entry(k, mIdx)) * diag.entry(k, nIdx) / (bk * bk);
                }
                pairing(mIdx, nIdx) = sum;
            }
        double dev = (pairing - gDiag.matrix).cwiseAbs().maxCoeff();
        if (dev > 1e-10)
            ok = false;

        // Theta-conjugated kernel: Khat_n = theta q_n with q_n in the base
        // space; pair the q_n coordinate columns instead.
        const CoefficientMatrix conj = conjugate_by_series(diag, geometric_series_coeffs(n));
        const GramData gConj = gram(conj);
        // q_n holds the base coefficients: q_n[k] = beta_k^2 for k <= n.
        ComplexMatrix pairingConj = ComplexMatrix::Zero(n, n);
        for (Eigen::Index mIdx = 0; mIdx < n; ++mIdx)
            for (Eigen::Index nIdx = 0; nIdx < n; ++nIdx) {
                Complex sum(0.0, 0.0);
                for (Eigen::Index k = 0; k <= std::min(mIdx, nIdx); ++k) {
                    const double bk = beta.eval(static_cast<std::size_t>(k));
                    sum += (bk * bk) * (bk * bk) / (bk * bk);
                }
                pairingConj(mIdx, nIdx) = sum;
            }
        dev = std::max(dev, (pairingConj - gConj.matrix).cwiseAbs().maxCoeff());
        if (dev > 1e-10)
            ok = false;
        s.check("gram_pairing_oracle", ok, "max deviation " + fmt(dev));
    });
}

// ---------------------------------------------------------------------------
// criteria-consistency: sufficient vs exact agreement, quasi-scalar reduction
// ---------------------------------------------------------------------------

void criteriaSuite(Suite& s) {
    const CriteriaConfig cfg{};
    struct NamedCase {
        std::string name;
        SequenceSpec beta;
    };
    const std::vector<NamedCase> families = {
        {"hardy", SequenceSpec::named(Family::Hardy)},
        {"bergman", SequenceSpec::named(Family::Bergman)},
        {"dirichlet", SequenceSpec::named(Family::Dirichlet)},
        {"geometric-0.5", SequenceSpec::named(Family::Geometric, 0.5)},
        {"power-neg1", SequenceSpec::named(Family::Power, -1.0)},
    };

    for (const NamedCase& fam : families) {
        s.guarded(fam.name, [&] {
            const Eigen::Index order = 64;
            const CoefficientMatrix a = diagonal_coefficients(fam.beta, order);
            const std::vector<double> d = normalized_diagonal(a);
            const auto meta = fam.beta.asymptotics();

            const Verdict suffH = hypercyclicity_sufficient(d, cfg, meta);
            const Verdict exactH = salas_characterization(fam.beta, cfg);
            s.check(fam.name + ".hypercyclic_agree",
                    suffH.classification == exactH.classification,
                    std::string(to_token(suffH.classification)) + " vs " +
                        to_token(exactH.classification));

            const Verdict suffM = mixing_sufficient(d, cfg, meta);
            const Verdict exactM = costakis_sambarino(fam.beta, cfg);
            s.check(fam.name + ".mixing_agree", suffM.classification == exactM.classification,
                    std::string(to_token(suffM.classification)) + " vs " +
                        to_token(exactM.classification));

            const Verdict suffC = chaos_sufficient(a, cfg, meta);
            const Verdict exactC = grosse_erdmann_chaos(fam.beta, cfg);
            s.check(fam.name + ".chaos_agree", suffC.classification == exactC.classification,
                    std::string(to_token(suffC.classification)) + " vs " +
                        to_token(exactC.classification));

            // Implication chain: summable squares force mixing.
            if (exactC.satisfied())
                s.check(fam.name + ".chaos_implies_mixing", exactM.satisfied());
        });
    }

    s.guarded("quasi_scalar_reduction", [&] {
        for (Eigen::Index dim : {Eigen::Index(1), Eigen::Index(2), Eigen::Index(3)}) {
            for (const char* famName : {"dirichlet", "hardy"}) {
                const SequenceSpec beta = famName == std::string("dirichlet")
                                              ? SequenceSpec::named(Family::Dirichlet)
                                              : SequenceSpec::named(Family::Hardy);
                const CoefficientMatrix a = diagonal_coefficients(beta, 48);
                const BlockCoefficientKernel k = quasi_scalar(a, dim);
                const std::vector<double> d = normalized_diagonal(a);
                const auto meta = beta.asymptotics();

                BlockTestVectors canonical;
                for (Eigen::Index i = 0; i < dim; ++i) {
                    ComplexVector e = ComplexVector::Zero(dim);
                    e(i) = Complex(1.0, 0.0);
                    canonical.vectors.push_back(std::move(e));
                }
                const std::string tag =
                    std::string("quasi_scalar.") + famName + ".d" + std::to_string(dim);
                // Analytic route and bare-window route must both reduce.
                int variant = 0;
                for (const auto& m : {meta, std::optional<SequenceAsymptotics>{}}) {
                    const std::string vtag = tag + (variant++ == 0 ? "" : ".window");
                    const Verdict blockH = block_hypercyclicity_sufficient(k, canonical, cfg, m);
                    const Verdict scalarH = hypercyclicity_sufficient(d, cfg, m);
                    s.check(vtag + ".hypercyclic",
                            blockH.classification == scalarH.classification);
                    const Verdict blockM = block_mixing_sufficient(k, canonical, cfg, m);
                    const Verdict scalarM = mixing_sufficient(d, cfg, m);
                    s.check(vtag + ".mixing", blockM.classification == scalarM.classification);
                    const Verdict blockC = block_chaos_sufficient(k, cfg, m);
                    const Verdict scalarC = chaos_sufficient(a, cfg, m);
                    s.check(vtag + ".chaos", blockC.classification == scalarC.classification);
                }
            }
        }
    });

    s.guarded("counterexample_pair", [&] {
        const SequenceSpec beta = SequenceSpec::named(Family::Power, -1.0);
        const Eigen::Index order = 256;
        CriteriaConfig demoCfg = cfg;
        demoCfg.window = static_cast<std::size_t>(order);
        const Verdict base = salas_characterization(beta, demoCfg);
        const CoefficientMatrix conj = conjugate_by_series(
            diagonal_coefficients(beta, order), geometric_series_coeffs(order));
        const Verdict lifted =
            hypercyclicity_sufficient(normalized_diagonal(conj), demoCfg);
        s.check("counterexample_pair", base.satisfied() && lifted.violated(),
                std::string(to_token(base.classification)) + " / " +
                    to_token(lifted.classification));
    });

    s.guarded("witness_replay", [&] {
        // Constructed liminf-zero pattern: odd indices decay, even stay at 1.
        std::vector<double> pattern(128, 1.0);
        for (std::size_t k = 1; k < pattern.size(); k += 2)
            pattern[k] = std::pow(10.0, -(static_cast<double>(k + 1) / 2.0 + 2.0));
        const SequenceSpec beta = SequenceSpec::list(pattern);
        CriteriaConfig smallCfg = cfg;
        smallCfg.window = pattern.size();
        const Verdict v = salas_characterization(beta, smallCfg);
        bool replayOk = v.classification == VerdictClass::SatisfiedOnWindow;
        for (std::size_t i = 0; i < v.evidence.witness_indices.size(); ++i) {
            const double replay = beta.eval(v.evidence.witness_indices[i]);
            if (replay != v.evidence.witness_values[i])
                replayOk = false;
        }
        // Successive minima occur exactly at the decaying odd indices.
        for (std::size_t i = 1; i < v.evidence.witness_indices.size(); ++i)
            if (v.evidence.witness_indices[i] % 2 != 1)
                replayOk = false;
        s.check("witness_replay", replayOk, to_token(v.classification));
    });
}

// ---------------------------------------------------------------------------
// dynamics: witnesses, periodic points, orbits, restriction norms
// ---------------------------------------------------------------------------

void dynamicsSuite(Suite& s) {
    s.guarded("dirichlet_witnesses", [&] {
        const Eigen::Index n = 64;
        const TruncatedModel model(
            diagonal_coefficients(SequenceSpec::named(Family::Dirichlet), n));
        bool ok = true;
        double worst = 0.0;
        for (std::size_t k = 1; k <= 60; ++k) {
            const CriterionWitness w = criterion_witness(model, VectorInD::unit(n, 0), k);
            if (!w.exact)
                ok = false;
            worst = std::max(worst, std::abs(w.norm_g_k * w.norm_g_k -
                                             1.0 / (static_cast<double>(k) + 1.0)));
        }
        s.check("dirichlet_witnesses", ok && worst <= 1e-12, "max deviation " + fmt(worst));
    });

    s.guarded("hardy_witnesses_flat", [&] {
        const Eigen::Index n = 64;
        const TruncatedModel model(diagonal_coefficients(SequenceSpec::named(Family::Hardy), n));
        bool ok = true;
        for (std::size_t k = 1; k <= 60; ++k) {
            const CriterionWitness w = criterion_witness(model, VectorInD::unit(n, 0), k);
            if (std::abs(w.norm_g_k - 1.0) > 1e-12 || !w.exact)
                ok = false;
        }
        s.check("hardy_witnesses_flat", ok);
    });

    s.guarded("periodic_points_geometric", [&] {
        // beta_n^2 = 2^{-n}: the chaotic weighted-shift example.
        const Eigen::Index n = 64;
        std::vector<double> betaSq(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i)
            betaSq[static_cast<std::size_t>(i)] = std::exp2(-static_cast<double>(i));
        const TruncatedModel model(diagonal_from_squares(betaSq));
        const DiagonalTail tail = [](std::size_t idx) {
            return std::exp2(-static_cast<double>(idx));
        };
        bool ok = true;
        double prevDistance = -1.0;
        for (std::size_t p : {1u, 2u, 4u, 8u, 16u}) {
            const PeriodicPoint pp =
                periodic_point(model, VectorInD::unit(n, 0), p, tail);
            if (pp.residual > pp.bound + 1e-15)
                ok = false;
            if (prevDistance >= 0.0 && pp.distance_to_x >= prevDistance)
                ok = false;
            prevDistance = pp.distance_to_x;
        }
        const PeriodicPoint zero = periodic_point(model, VectorInD::zero(n), 4, tail);
        if (zero.residual != 0.0 || zero.distance_to_x != 0.0)
            ok = false;
        s.check("periodic_points_geometric", ok);
    });

    s.guarded("periodic_points_refusal", [&] {
        const Eigen::Index n = 64;
        const TruncatedModel model(diagonal_coefficients(SequenceSpec::named(Family::Hardy), n));
        bool refused = false;
        try {
            periodic_point(model, VectorInD::unit(n, 0), 2);
        } catch (const GateError&) {
            refused = true;
        }
        s.check("periodic_points_refusal", refused);
    });

    s.guarded("orbit_norms", [&] {
        const Eigen::Index n = 16;
        const TruncatedModel hardy(diagonal_coefficients(SequenceSpec::named(Family::Hardy), n));
        const Orbit oh = orbit(hardy, VectorInD::unit(n, 5), 8);
        bool ok = true;
        for (std::size_t j = 0; j <= 8; ++j) {
            const double expected = j <= 5 ? 1.0 : 0.0;
            if (std::abs(oh.norms[j] - expected) > 1e-12)
                ok = false;
        }
        const TruncatedModel dirichlet(
            diagonal_coefficients(SequenceSpec::named(Family::Dirichlet), n));
        const Orbit od = orbit(dirichlet, VectorInD::unit(n, 5), 8);
        for (std::size_t j = 0; j <= 8; ++j) {
            const double expected = j <= 5 ? 1.0 / std::sqrt(6.0 - static_cast<double>(j)) : 0.0;
            if (std::abs(od.norms[j] - expected) > 1e-12)
                ok = false;
        }
        s.check("orbit_norms", ok);
    });

    s.guarded("compression_norms", [&] {
        const Eigen::Index n = 64;
        const double hardyNorm = compression_norm(
            TruncatedModel(diagonal_coefficients(SequenceSpec::named(Family::Hardy), n)));
        const double bergmanNorm = compression_norm(
            TruncatedModel(diagonal_coefficients(SequenceSpec::named(Family::Bergman), n)));
        const double dirichletNorm = compression_norm(
            TruncatedModel(diagonal_coefficients(SequenceSpec::named(Family::Dirichlet), n)));
        bool ok = std::abs(hardyNorm - 1.0) <= 1e-10;
        ok = ok && bergmanNorm < 1.0 && bergmanNorm > 0.98; // sqrt(63/64) and rising
        ok = ok && std::abs(dirichletNorm - std::sqrt(2.0)) <= 1e-10;
        s.check("compression_norms", ok,
                "hardy " + fmt(hardyNorm) + ", bergman " + fmt(bergmanNorm) + ", dirichlet " +
                    fmt(dirichletNorm));
    });
}

} // namespace

std::vector<CheckResult> run_verify_suite(const std::string& suite) {
    Suite s;
    if (suite == "structural")
        structuralSuite(s);
    else if (suite == "oracles")
        oraclesSuite(s);
    else if (suite == "criteria-consistency")
        criteriaSuite(s);
    else if (suite == "dynamics")
        dynamicsSuite(s);
    else if (suite == "all") {
        structuralSuite(s);
        oraclesSuite(s);
        criteriaSuite(s);
        dynamicsSuite(s);
    } else {
        throw SpecError("unknown verify suite: " + suite +
                        " (expected structural, oracles, criteria-consistency, dynamics, all)");
    }
    return s.take();
}

} // namespace rkdyn
