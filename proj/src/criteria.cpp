#include "rkdyn/criteria.hpp"

#include "rkdyn/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace rkdyn {

namespace {

using LimitClass = SequenceAsymptotics::LimitClass;
using SumClass = SequenceAsymptotics::SumClass;

std::size_t effectiveWindow(const CriteriaConfig& cfg, std::size_t available) {
    std::size_t w = std::min(cfg.window, available);
    if (w < 4)
        throw SpecError("classification window must have at least 4 samples, got " +
                        std::to_string(w));
    return w;
}

void requireNonnegative(std::span<const double> values, std::size_t w) {
    for (std::size_t i = 0; i < w; ++i) {
        if (!std::isfinite(values[i]))
            throw std::invalid_argument("diagonal sequence has a non-finite entry at index " +
                                        std::to_string(i));
        if (values[i] < -1e-12)
            throw std::invalid_argument("diagonal sequence is negative beyond tolerance at index " +
                                        std::to_string(i));
    }
}

/// Indices where a new strict running minimum is achieved (index 0 included).
std::vector<std::size_t> runningMinima(std::span<const double> values, std::size_t w) {
    std::vector<std::size_t> out;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < w; ++i) {
        if (values[i] < best) {
            best = values[i];
            out.push_back(i);
        }
    }
    return out;
}

Verdict classifyLiminfZero(std::string id, std::span<const double> values,
                           const CriteriaConfig& cfg, std::optional<LimitClass> analytic) {
    const std::size_t w = effectiveWindow(cfg, values.size());
    requireNonnegative(values, w);
    const std::size_t half = w / 2;

    Verdict v;
    v.condition_id = std::move(id);
    v.evidence.window = w;

    const std::vector<std::size_t> minima = runningMinima(values, w);
    std::size_t argminLast = half;
    for (std::size_t i = half; i < w; ++i)
        if (values[i] < values[argminLast])
            argminLast = i;
    const double minLast = values[argminLast];
    v.evidence.extremal = minLast;

    if (analytic) {
        v.evidence.analytic = true;
        if (*analytic == LimitClass::Zero) {
            v.classification = VerdictClass::SatisfiedAnalytic;
            v.evidence.note = "liminf is exactly zero for this family";
        } else {
            v.classification = VerdictClass::ViolatedOnWindow;
            v.evidence.note = "liminf is bounded away from zero for this family";
        }
        v.evidence.witness_indices = {argminLast};
        v.evidence.witness_values = {minLast};
        return v;
    }

    const bool newMinimumInLastHalf = !minima.empty() && minima.back() >= half;
    if (minLast < cfg.tol) {
        v.classification = VerdictClass::SatisfiedOnWindow;
        v.evidence.witness_indices = minima;
        for (std::size_t i : minima)
            v.evidence.witness_values.push_back(values[i]);
        v.evidence.note = "running minima fall below tol in the window";
    } else if (minLast >= cfg.floor && !newMinimumInLastHalf) {
        v.classification = VerdictClass::ViolatedOnWindow;
        v.evidence.witness_indices = {argminLast};
        v.evidence.witness_values = {minLast};
        v.evidence.note = "no new running minimum in the last half and values stay above floor";
    } else {
        v.classification = VerdictClass::Inconclusive;
        v.evidence.witness_indices = {argminLast};
        v.evidence.witness_values = {minLast};
        v.evidence.note = "still decaying but above tol; enlarge the window";
    }
    return v;
}

Verdict classifyLimitZero(std::string id, std::span<const double> values,
                          const CriteriaConfig& cfg, std::optional<LimitClass> analytic) {
    const std::size_t w = effectiveWindow(cfg, values.size());
    requireNonnegative(values, w);
    const std::size_t half = w / 2;

    Verdict v;
    v.condition_id = std::move(id);
    v.evidence.window = w;

    std::size_t argmaxLast = half;
    double maxFirst = values[0];
    for (std::size_t i = 0; i < half; ++i)
        maxFirst = std::max(maxFirst, values[i]);
    for (std::size_t i = half; i < w; ++i)
        if (values[i] > values[argmaxLast])
            argmaxLast = i;
    const double maxLast = values[argmaxLast];
    v.evidence.extremal = maxLast;
    v.evidence.witness_indices = {argmaxLast};
    v.evidence.witness_values = {maxLast};

    if (analytic) {
        v.evidence.analytic = true;
        if (*analytic == LimitClass::Zero) {
            v.classification = VerdictClass::SatisfiedAnalytic;
            v.evidence.note = "limit is exactly zero for this family";
        } else {
            v.classification = VerdictClass::ViolatedOnWindow;
            v.evidence.note = "limit is nonzero (or infinite) for this family";
        }
        return v;
    }

    if (maxLast < cfg.tol) {
        v.classification = VerdictClass::SatisfiedOnWindow;
        v.evidence.note = "last half of the window is uniformly below tol";
    } else if (maxLast >= cfg.floor && maxLast >= cfg.trend_guard * maxFirst) {
        v.classification = VerdictClass::ViolatedOnWindow;
        v.evidence.note = "values above floor with no decay across window halves";
    } else {
        v.classification = VerdictClass::Inconclusive;
        v.evidence.note = "still decaying but above tol; enlarge the window";
    }
    return v;
}

Verdict classifySumFinite(std::string id, std::span<const double> terms,
                          const CriteriaConfig& cfg, std::optional<SumClass> analytic) {
    const std::size_t w = effectiveWindow(cfg, terms.size());
    requireNonnegative(terms, w);
    const std::size_t half = w / 2;

    double massLast = 0.0;
    double total = 0.0;
    double minLast = std::numeric_limits<double>::infinity();
    std::size_t argminLast = half;
    for (std::size_t i = 0; i < w; ++i) {
        total += terms[i];
        if (i >= half) {
            massLast += terms[i];
            if (terms[i] < minLast) {
                minLast = terms[i];
                argminLast = i;
            }
        }
    }

    Verdict v;
    v.condition_id = std::move(id);
    v.evidence.window = w;
    v.evidence.extremal = massLast;
    v.evidence.witness_indices = {argminLast};
    v.evidence.witness_values = {terms[argminLast]};
    v.evidence.note = "window partial sum " + std::to_string(total);

    if (analytic) {
        v.evidence.analytic = true;
        v.classification = *analytic == SumClass::Finite ? VerdictClass::SatisfiedAnalytic
                                                         : VerdictClass::ViolatedOnWindow;
        return v;
    }
    if (massLast < cfg.tol)
        v.classification = VerdictClass::SatisfiedOnWindow;
    else if (minLast >= cfg.floor)
        v.classification = VerdictClass::ViolatedOnWindow;
    else
        v.classification = VerdictClass::Inconclusive;
    return v;
}

Verdict classifyTailsVanish(std::string id, const std::vector<double>& tails,
                            const CriteriaConfig& cfg, std::optional<SumClass> analytic) {
    // tails[N'] decreases to tails[window] = 0 by construction; the verdict
    // asks whether the decrease is convergence of the infinite double sum,
    // so only N' up to half the window counts as a witness.
    const std::size_t w = tails.size() - 1;
    const std::size_t half = w / 2;
    const std::size_t quarter = w / 4;

    Verdict v;
    v.condition_id = std::move(id);
    v.evidence.window = w;
    v.evidence.extremal = tails[half];

    if (analytic) {
        v.evidence.analytic = true;
        v.classification = *analytic == SumClass::Finite ? VerdictClass::SatisfiedAnalytic
                                                         : VerdictClass::ViolatedOnWindow;
        v.evidence.witness_indices = {half};
        v.evidence.witness_values = {tails[half]};
        return v;
    }

    for (std::size_t cut = 0; cut <= half; ++cut) {
        if (tails[cut] < cfg.tol) {
            v.classification = VerdictClass::SatisfiedOnWindow;
            v.evidence.witness_indices = {cut};
            v.evidence.witness_values = {tails[cut]};
            v.evidence.note = "absolute tail below tol with half a window of corroborating mass";
            return v;
        }
    }
    v.evidence.witness_indices = {half};
    v.evidence.witness_values = {tails[half]};
    if (tails[half] >= cfg.floor && tails[half] >= cfg.trend_guard * tails[quarter]) {
        v.classification = VerdictClass::ViolatedOnWindow;
        v.evidence.note = "tail mass above floor and not shrinking across window quarters";
    } else {
        v.classification = VerdictClass::Inconclusive;
        v.evidence.note = "tail still shrinking but above tol; enlarge the window";
    }
    return v;
}

std::optional<LimitClass> liminfClass(const std::optional<SequenceAsymptotics>& a) {
    if (!a)
        return std::nullopt;
    return a->liminf;
}

std::optional<LimitClass> limitClass(const std::optional<SequenceAsymptotics>& a) {
    if (!a)
        return std::nullopt;
    return a->limit;
}

std::optional<SumClass> sumClass(const std::optional<SequenceAsymptotics>& a) {
    if (!a)
        return std::nullopt;
    return a->sum_of_squares;
}

std::size_t sequenceAvailability(const SequenceSpec& s, const CriteriaConfig& cfg) {
    if (auto len = s.finite_length())
        return *len;
    return cfg.window;
}

/// Quadratic-form sequence u_n over the diagonal blocks for the block tests.
std::vector<double> diagonalBlockValues(const BlockCoefficientKernel& kernel,
                                        const BlockTestVectors& test, std::size_t window) {
    for (const ComplexVector& eta : test.vectors) {
        if (eta.size() != kernel.block_dim())
            throw std::invalid_argument("test vector dimension does not match the block dimension");
        if (std::abs(eta.norm() - 1.0) > 1e-12)
            throw std::invalid_argument("test vectors must have unit norm");
    }
    std::vector<double> u(window);
    for (std::size_t n = 0; n < window; ++n) {
        const ComplexMatrix b = kernel.block(static_cast<Eigen::Index>(n),
                                             static_cast<Eigen::Index>(n));
        if (test.vectors.empty()) {
            // Unit-ball supremum: for PSD Hermitian blocks this is the top eigenvalue.
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(b, Eigen::EigenvaluesOnly);
            u[n] = es.eigenvalues().maxCoeff();
        } else {
            double best = -std::numeric_limits<double>::infinity();
            for (const ComplexVector& eta : test.vectors)
                best = std::max(best, (eta.adjoint() * b * eta)(0, 0).real());
            u[n] = best;
        }
    }
    return u;
}

} // namespace

const char* to_token(VerdictClass c) noexcept {
    switch (c) {
    case VerdictClass::SatisfiedAnalytic: return "SATISFIED_ANALYTIC";
    case VerdictClass::SatisfiedOnWindow: return "SATISFIED_ON_WINDOW";
    case VerdictClass::ViolatedOnWindow: return "VIOLATED_ON_WINDOW";
    case VerdictClass::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

Verdict hypercyclicity_sufficient(std::span<const double> d, const CriteriaConfig& cfg,
                                  std::optional<SequenceAsymptotics> analytic) {
    return classifyLiminfZero("sufficient.hypercyclic.liminf-diagonal", d, cfg,
                              liminfClass(analytic));
}

Verdict mixing_sufficient(std::span<const double> d, const CriteriaConfig& cfg,
                          std::optional<SequenceAsymptotics> analytic) {
    return classifyLimitZero("sufficient.mixing.limit-diagonal", d, cfg, limitClass(analytic));
}

std::vector<double> absolute_tail_sums(const CoefficientMatrix& a, std::size_t window) {
    const std::size_t w = std::min<std::size_t>(window, static_cast<std::size_t>(a.order()));
    std::vector<double> tails(w + 1, 0.0);
    for (std::size_t cut = w; cut-- > 0;) {
        double strip = std::abs(a.entry(static_cast<Eigen::Index>(cut),
                                        static_cast<Eigen::Index>(cut)));
        for (std::size_t m = cut + 1; m < w; ++m) {
            strip += std::abs(a.entry(static_cast<Eigen::Index>(cut), static_cast<Eigen::Index>(m)));
            strip += std::abs(a.entry(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(cut)));
        }
        tails[cut] = tails[cut + 1] + strip;
    }
    return tails;
}

std::vector<double> block_absolute_tail_sums(const BlockCoefficientKernel& kernel,
                                             std::size_t window) {
    const std::size_t w = std::min<std::size_t>(window, static_cast<std::size_t>(kernel.order()));
    const auto blockNorm = [&](std::size_t m, std::size_t n) {
        const ComplexMatrix b = kernel.block(static_cast<Eigen::Index>(m),
                                             static_cast<Eigen::Index>(n));
        Eigen::JacobiSVD<ComplexMatrix> svd(b);
        return svd.singularValues().maxCoeff();
    };
    std::vector<double> tails(w + 1, 0.0);
    for (std::size_t cut = w; cut-- > 0;) {
        double strip = blockNorm(cut, cut);
        for (std::size_t m = cut + 1; m < w; ++m)
            strip += blockNorm(cut, m) + blockNorm(m, cut);
        tails[cut] = tails[cut + 1] + strip;
    }
    return tails;
}

Verdict chaos_sufficient(const CoefficientMatrix& a, const CriteriaConfig& cfg,
                         std::optional<SequenceAsymptotics> analytic) {
    const std::size_t w = effectiveWindow(cfg, static_cast<std::size_t>(a.order()));
    return classifyTailsVanish("sufficient.chaotic.absolute-tails", absolute_tail_sums(a, w),
                               cfg, sumClass(analytic));
}

Verdict salas_characterization(const SequenceSpec& beta, const CriteriaConfig& cfg) {
    const std::size_t avail = sequenceAvailability(beta, cfg);
    const std::vector<double> values = beta.values(std::min(cfg.window, avail));
    auto meta = beta.asymptotics();
    Verdict v = classifyLiminfZero("exact.hypercyclic.salas", values, cfg, liminfClass(meta));
    v.exact = true;
    return v;
}

Verdict costakis_sambarino(const SequenceSpec& beta, const CriteriaConfig& cfg) {
    const std::size_t avail = sequenceAvailability(beta, cfg);
    const std::vector<double> values = beta.values(std::min(cfg.window, avail));
    auto meta = beta.asymptotics();
    Verdict v = classifyLimitZero("exact.mixing.costakis-sambarino", values, cfg,
                                  limitClass(meta));
    v.exact = true;
    return v;
}

Verdict grosse_erdmann_chaos(const SequenceSpec& beta, const CriteriaConfig& cfg) {
    const std::size_t avail = sequenceAvailability(beta, cfg);
    const std::size_t w = std::min(cfg.window, avail);
    std::vector<double> squares(w);
    for (std::size_t n = 0; n < w; ++n) {
        const double b = beta.eval(n);
        squares[n] = b * b;
    }
    auto meta = beta.asymptotics();
    Verdict v = classifySumFinite("exact.chaotic.grosse-erdmann", squares, cfg, sumClass(meta));
    v.exact = true;
    return v;
}

DiagonalBoundednessReport mz_boundedness_diag(const SequenceSpec& beta, std::size_t window) {
    if (window < 4)
        throw SpecError("boundedness window must have at least 4 samples");
    DiagonalBoundednessReport r;
    r.window = window;

    std::vector<double> values = beta.values(window);
    const std::size_t half = window / 2;
    double supDownFirst = 0.0;
    double supDownLast = 0.0;
    for (std::size_t n = 0; n + 1 < window; ++n) {
        if (values[n + 1] == 0.0)
            throw EvalError("beta_" + std::to_string(n + 1) + " is zero; ratios undefined");
        const double down = values[n] / values[n + 1];
        const double up = values[n + 1] / values[n];
        r.sup_down_ratio = std::max(r.sup_down_ratio, down);
        if (n < half)
            supDownFirst = std::max(supDownFirst, down);
        else {
            supDownLast = std::max(supDownLast, down);
            r.limsup_up_ratio = std::max(r.limsup_up_ratio, up);
        }
    }

    if (auto meta = beta.asymptotics()) {
        r.analytic = true;
        r.bounded = meta->multiplier_bounded;
        r.analytic_on_disc = meta->analytic_on_disc;
        return r;
    }
    // Window heuristics: growing down-ratios mean an unbounded multiplier;
    // up-ratios may exceed 1 transiently, so allow slack that shrinks with
    // the window.
    r.bounded = std::isfinite(r.sup_down_ratio) && supDownLast <= 1.05 * supDownFirst;
    r.analytic_on_disc = r.limsup_up_ratio <= 1.0 + 8.0 / static_cast<double>(window);
    return r;
}

TridiagonalVerdicts tridiagonal_characterization(const TridiagonalSpec& spec,
                                                 const CriteriaConfig& cfg) {
    std::size_t avail = cfg.window;
    if (auto len = spec.mu.finite_length())
        avail = std::min(avail, *len > 0 ? *len - 1 : std::size_t(0));
    if (auto len = spec.nu.finite_length())
        avail = std::min(avail, *len);
    const std::size_t w = effectiveWindow(cfg, avail);

    TridiagonalVerdicts out;
    out.gate = tridiagonal_boundedness(spec, w - 1);
    if (!out.gate.holds) {
        Verdict inconclusive;
        inconclusive.classification = VerdictClass::Inconclusive;
        inconclusive.evidence.window = w;
        inconclusive.evidence.extremal = out.gate.sup_nu_mu_ratio;
        inconclusive.evidence.note =
            "boundedness gate failed: sup |nu_n/mu_{n+1}| = " +
            std::to_string(out.gate.sup_nu_mu_ratio) + " (needs < 1)";
        inconclusive.exact = true;
        out.hypercyclic = inconclusive;
        out.hypercyclic.condition_id = "exact.hypercyclic.tridiagonal";
        out.mixing = inconclusive;
        out.mixing.condition_id = "exact.mixing.tridiagonal";
        return out;
    }

    std::vector<double> d(w);
    d[0] = std::norm(spec.mu_at(0));
    for (std::size_t n = 1; n < w; ++n)
        d[n] = std::norm(spec.mu_at(n)) + std::norm(spec.nu_at(n - 1));

    out.hypercyclic = classifyLiminfZero("exact.hypercyclic.tridiagonal", d, cfg, std::nullopt);
    out.hypercyclic.exact = true;
    out.mixing = classifyLimitZero("exact.mixing.tridiagonal", d, cfg, std::nullopt);
    out.mixing.exact = true;
    return out;
}

Verdict block_hypercyclicity_sufficient(const BlockCoefficientKernel& kernel,
                                        const BlockTestVectors& test, const CriteriaConfig& cfg,
                                        std::optional<SequenceAsymptotics> analytic) {
    const std::size_t w = effectiveWindow(cfg, static_cast<std::size_t>(kernel.order()));
    const std::vector<double> u = diagonalBlockValues(kernel, test, w);
    return classifyLiminfZero("sufficient.hypercyclic.block-uniform", u, cfg,
                              liminfClass(analytic));
}

Verdict block_mixing_sufficient(const BlockCoefficientKernel& kernel,
                                const BlockTestVectors& test, const CriteriaConfig& cfg,
                                std::optional<SequenceAsymptotics> analytic) {
    const std::size_t w = effectiveWindow(cfg, static_cast<std::size_t>(kernel.order()));
    const std::vector<double> u = diagonalBlockValues(kernel, test, w);
    return classifyLimitZero("sufficient.mixing.block-uniform", u, cfg, limitClass(analytic));
}

Verdict block_chaos_sufficient(const BlockCoefficientKernel& kernel, const CriteriaConfig& cfg,
                               std::optional<SequenceAsymptotics> analytic) {
    const std::size_t w = effectiveWindow(cfg, static_cast<std::size_t>(kernel.order()));
    return classifyTailsVanish("sufficient.chaotic.block-tails",
                               block_absolute_tail_sums(kernel, w), cfg, sumClass(analytic));
}

bool verdict_agrees(const Verdict& a, const Verdict& b) noexcept {
    if (a.satisfied())
        return b.satisfied();
    if (a.violated())
        return b.violated();
    return !b.satisfied() && !b.violated();
}

} // namespace rkdyn
