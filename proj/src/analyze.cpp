#include "rkdyn/analyze.hpp"

#include "rkdyn/conjugation.hpp"
#include "rkdyn/criteria.hpp"
#include "rkdyn/errors.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>

namespace rkdyn {

namespace {

using nlohmann::json;

std::string isoTimestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

json configToJson(const CriteriaConfig& cfg) {
    return json{{"window", cfg.window},
                {"tol", cfg.tol},
                {"floor", cfg.floor},
                {"trend_guard", cfg.trend_guard}};
}

json boundednessToJson(const DiagonalBoundednessReport& r) {
    return json{{"sup_down_ratio", r.sup_down_ratio},
                {"limsup_up_ratio", r.limsup_up_ratio},
                {"bounded", r.bounded},
                {"analytic_on_disc", r.analytic_on_disc},
                {"analytic", r.analytic},
                {"window", r.window}};
}

json gateToJson(const TridiagonalBoundedness& g) {
    return json{{"sup_mu_ratio", g.sup_mu_ratio},
                {"sup_nu_mu_ratio", g.sup_nu_mu_ratio},
                {"window", g.window},
                {"holds", g.holds}};
}

json structuralCheck(const std::string& name, bool passed, double value, double threshold) {
    return json{{"check", name}, {"passed", passed}, {"value", value}, {"threshold", threshold}};
}

/// Structural identities on the scalar kernel: Hermitian symmetry, positive
/// semidefiniteness, Gram factorization quality when the PD gate passes.
void appendScalarStructural(json& structural, const CoefficientMatrix& a, const GramData& g) {
    const double scale = std::max(1.0, a.entries().cwiseAbs().maxCoeff());
    const double herm = a.hermitian_residual();
    structural.push_back(structuralCheck("hermitian_residual", herm <= 1e-12 * scale, herm,
                                         1e-12 * scale));
    const PsdCheckResult psd = psd_check(a);
    structural.push_back(structuralCheck("psd", psd.positive_semidefinite, psd.min_eigenvalue,
                                         -1e-10 * std::max(1.0, g.max_eigenvalue)));
    if (g.positive_definite()) {
        const double recon =
            ((*g.cholesky).adjoint() * (*g.cholesky) - g.matrix).norm() / g.matrix.norm();
        structural.push_back(structuralCheck("cholesky_reconstruction", recon <= 1e-10, recon,
                                             1e-10));
    }
}

void appendBlockStructural(json& structural, const BlockCoefficientKernel& k) {
    const double scale = std::max(1.0, k.storage().cwiseAbs().maxCoeff());
    const double herm = k.hermitian_residual();
    structural.push_back(structuralCheck("block_hermitian_residual", herm <= 1e-12 * scale,
                                         herm, 1e-12 * scale));
    double minDiagEigen = 0.0;
    bool first = true;
    for (Eigen::Index n = 0; n < k.order(); ++n) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(k.block(n, n), Eigen::EigenvaluesOnly);
        const double mn = es.eigenvalues().minCoeff();
        if (first || mn < minDiagEigen) {
            minDiagEigen = mn;
            first = false;
        }
    }
    structural.push_back(
        structuralCheck("diagonal_blocks_psd", minDiagEigen >= -1e-10, minDiagEigen, -1e-10));
}

/// Model diagnostics: restriction norm at the full and half window (a
/// growing value flags a likely unbounded multiplier) and exact nilpotency
/// of the windowed adjoint.
json modelDiagnostics(const CoefficientMatrix& a, const GramData& g) {
    json diag;
    diag["positive_definite"] = g.positive_definite();
    diag["gram_min_eigenvalue"] = g.min_eigenvalue;
    diag["gram_max_eigenvalue"] = g.max_eigenvalue;
    if (!g.positive_definite())
        return diag;

    TruncatedModel model(a);
    diag["compression_norm"] = compression_norm(model);

    const Eigen::Index half = a.order() / 2;
    if (half >= 2) {
        CoefficientMatrix ahalf(a.entries().topLeftCorner(half, half), a.is_diagonal());
        if (gram(ahalf).positive_definite()) {
            TruncatedModel halfModel(ahalf);
            const double halfNorm = compression_norm(halfModel);
            diag["compression_norm_half_window"] = halfNorm;
            diag["likely_unbounded"] =
                diag["compression_norm"].get<double>() > 1.1 * halfNorm;
        }
    }

    // Nilpotency of the windowed restriction: N shifts annihilate exactly.
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexVector c(a.order());
    for (Eigen::Index i = 0; i < a.order(); ++i)
        c(i) = Complex(dist(rng), dist(rng));
    VectorInD v{c};
    for (Eigen::Index i = 0; i < a.order(); ++i)
        v = apply_adjoint(model, v);
    diag["annihilation_exact"] = v.coords.isZero(0.0);
    return diag;
}

} // namespace

json verdict_to_json(const Verdict& v) {
    json evidence{{"window", v.evidence.window},
                  {"witness_indices", v.evidence.witness_indices},
                  {"witness_values", v.evidence.witness_values},
                  {"extremal", v.evidence.extremal},
                  {"analytic", v.evidence.analytic},
                  {"note", v.evidence.note}};
    return json{{"condition", v.condition_id},
                {"classification", to_token(v.classification)},
                {"exact", v.exact},
                {"evidence", evidence}};
}

json analyze(const KernelSpec& spec) {
    const CriteriaConfig cfg = spec.criteria;
    const BuiltKernel built = build_kernel(spec);

    json verdicts = json::array();
    json structural = json::array();
    json diagnostics;
    json flags;

    if (built.scalar) {
        const CoefficientMatrix& a = *built.scalar;
        const GramData g = gram(a);
        appendScalarStructural(structural, a, g);
        diagnostics = modelDiagnostics(a, g);

        const std::vector<double> d = normalized_diagonal(a);
        const bool conjugatedKind = spec.kind == KernelKind::ThetaConjugated ||
                                    spec.kind == KernelKind::PolynomialConjugated;
        // The sufficient conditions act on the kernel's own diagonal; base
        // metadata transfers only when that diagonal is beta_n^2 itself.
        const std::optional<SequenceAsymptotics> diagMeta =
            conjugatedKind ? std::nullopt : built.beta_metadata;

        Verdict hyp = hypercyclicity_sufficient(d, cfg, diagMeta);
        if (spec.kind == KernelKind::PolynomialConjugated)
            hyp.exact = true; // polynomial conjugation: the condition is a characterization
        verdicts.push_back(verdict_to_json(hyp));
        verdicts.push_back(verdict_to_json(mixing_sufficient(d, cfg, diagMeta)));
        verdicts.push_back(verdict_to_json(chaos_sufficient(a, cfg, diagMeta)));

        if (built.base_beta) {
            Verdict salas = salas_characterization(*built.base_beta, cfg);
            Verdict costakis = costakis_sambarino(*built.base_beta, cfg);
            Verdict grosse = grosse_erdmann_chaos(*built.base_beta, cfg);
            if (conjugatedKind) {
                salas.condition_id += ".base";
                costakis.condition_id += ".base";
                grosse.condition_id += ".base";
            }
            verdicts.push_back(verdict_to_json(salas));
            verdicts.push_back(verdict_to_json(costakis));
            verdicts.push_back(verdict_to_json(grosse));
            structural.push_back(json{{"check", "mz_boundedness"},
                                      {"passed", true},
                                      {"report", boundednessToJson(mz_boundedness_diag(
                                                     *built.base_beta, cfg.window))}});
            if (spec.kind == KernelKind::ThetaConjugated)
                flags["sufficient_not_necessary"] = salas.satisfied() && hyp.violated();
        }
        if (built.tridiagonal) {
            const TridiagonalVerdicts tv = tridiagonal_characterization(*built.tridiagonal, cfg);
            verdicts.push_back(verdict_to_json(tv.hypercyclic));
            verdicts.push_back(verdict_to_json(tv.mixing));
            structural.push_back(json{{"check", "tridiagonal_boundedness_gate"},
                                      {"passed", tv.gate.holds},
                                      {"report", gateToJson(tv.gate)}});
        }
    }

    if (built.block) {
        const BlockCoefficientKernel& k = *built.block;
        appendBlockStructural(structural, k);
        const BlockTestVectors unitBall{};
        verdicts.push_back(
            verdict_to_json(block_hypercyclicity_sufficient(k, unitBall, cfg, built.beta_metadata)));
        verdicts.push_back(
            verdict_to_json(block_mixing_sufficient(k, unitBall, cfg, built.beta_metadata)));
        verdicts.push_back(verdict_to_json(block_chaos_sufficient(k, cfg, built.beta_metadata)));
        if (spec.kind == KernelKind::BlockPolynomial && built.base_beta) {
            Verdict salas = salas_characterization(*built.base_beta, cfg);
            salas.condition_id += ".base";
            verdicts.push_back(verdict_to_json(salas));
        }
    }

    json report;
    report["spec"] = spec.echo;
    report["kind"] = kind_name(spec.kind);
    report["verdicts"] = verdicts;
    report["structural"] = structural;
    report["diagnostics"] = diagnostics;
    if (!flags.is_null())
        report["flags"] = flags;
    report["provenance"] = json{{"tool_version", kToolVersion},
                                {"config", configToJson(cfg)},
                                {"order", spec.order},
                                {"timestamp", isoTimestamp()}};
    return report;
}

json demo_counterexample(const SequenceSpec& beta, Eigen::Index order,
                         const CriteriaConfig& cfgIn) {
    CriteriaConfig cfg = cfgIn;
    cfg.window = std::min<std::size_t>(cfg.window, static_cast<std::size_t>(order));

    const Verdict baseSalas = salas_characterization(beta, cfg);
    if (!baseSalas.satisfied())
        throw GateError("counterexample demo requires a hypercyclic base: liminf beta = 0 not "
                        "certified (salas verdict " +
                        std::string(to_token(baseSalas.classification)) + ")");

    CoefficientMatrix base = diagonal_coefficients(beta, order);
    CoefficientMatrix conjugated = conjugate_by_series(base, geometric_series_coeffs(order));
    const std::vector<double> d = normalized_diagonal(conjugated);

    // Structural sanity of the conjugated diagonal: partial sums are
    // non-decreasing and bounded below by beta_0^2 > 0.
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
        if (d[i + 1] < d[i]) {
            monotone = false;
            break;
        }
    const double base0 = beta.eval(0);
    if (!monotone || d.front() < base0 * base0 - 1e-12)
        throw SpecError("conjugated diagonal failed its monotonicity invariant");

    const Verdict conjHyp = hypercyclicity_sufficient(d, cfg);

    json out;
    out["base_salas"] = verdict_to_json(baseSalas);
    out["conjugated_hypercyclic_sufficient"] = verdict_to_json(conjHyp);
    out["conjugated_diagonal"] = d;
    out["liminf_lower_bound"] = d.front();
    out["sufficient_not_necessary"] = baseSalas.satisfied() && conjHyp.violated();
    out["provenance"] = json{{"tool_version", kToolVersion},
                             {"config", configToJson(cfg)},
                             {"order", order},
                             {"beta", beta.describe()},
                             {"timestamp", isoTimestamp()}};
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << contents;
        out.flush();
        if (!out)
            throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace rkdyn
