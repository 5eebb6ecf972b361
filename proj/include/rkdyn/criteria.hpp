#ifndef RKDYN_CRITERIA_HPP
#define RKDYN_CRITERIA_HPP

#include "rkdyn/block_kernel.hpp"
#include "rkdyn/coefficient_matrix.hpp"
#include "rkdyn/sequence_spec.hpp"
#include "rkdyn/tridiagonal.hpp"
#include "rkdyn/verdict.hpp"

#include <optional>
#include <span>

namespace rkdyn {

// The sufficient conditions test decay of the normalized diagonal moments
// d_n = a_nn; for diagonal kernels d_n = beta_n^2, so exact knowledge about
// beta transfers to d. `analytic`, when given, decides the verdict exactly
// and the window is recorded as corroborating evidence only.

/// liminf d_n = 0 (sufficient for hypercyclicity of the adjoint multiplier).
Verdict hypercyclicity_sufficient(std::span<const double> d, const CriteriaConfig& cfg,
                                  std::optional<SequenceAsymptotics> analytic = std::nullopt);

/// lim d_n = 0 (sufficient for topological mixing).
Verdict mixing_sufficient(std::span<const double> d, const CriteriaConfig& cfg,
                          std::optional<SequenceAsymptotics> analytic = std::nullopt);

/// Absolute tail test sum_{n,m >= N'} |a_nm| -> 0, a checkable proxy that is
/// sufficient for the unconditional-summability chaos hypothesis (and
/// equivalent to it for nonnegative diagonal kernels).
Verdict chaos_sufficient(const CoefficientMatrix& a, const CriteriaConfig& cfg,
                         std::optional<SequenceAsymptotics> analytic = std::nullopt);

/// Exact diagonal characterizations on the weight sequence beta.
Verdict salas_characterization(const SequenceSpec& beta, const CriteriaConfig& cfg);
Verdict costakis_sambarino(const SequenceSpec& beta, const CriteriaConfig& cfg);
Verdict grosse_erdmann_chaos(const SequenceSpec& beta, const CriteriaConfig& cfg);

struct DiagonalBoundednessReport {
    double sup_down_ratio = 0.0;    // sup beta_n / beta_{n+1} over the window
    double limsup_up_ratio = 0.0;   // max beta_{n+1} / beta_n over the last half
    bool bounded = false;           // multiplier bounded
    bool analytic_on_disc = false;  // limsup beta_{n+1}/beta_n <= 1
    bool analytic = false;          // decided from family metadata
    std::size_t window = 0;
};

/// Multiplier boundedness and disc-analyticity gates for diagonal kernels.
DiagonalBoundednessReport mz_boundedness_diag(const SequenceSpec& beta, std::size_t window);

struct TridiagonalVerdicts {
    Verdict hypercyclic;
    Verdict mixing;
    TridiagonalBoundedness gate;
};

/// Exact characterization on tridiagonal spaces: liminf / lim of
/// d_n = |mu_n|^2 + |nu_{n-1}|^2, gated on the contraction condition.
/// A failed gate yields INCONCLUSIVE verdicts carrying the gate evidence.
TridiagonalVerdicts tridiagonal_characterization(const TridiagonalSpec& spec,
                                                 const CriteriaConfig& cfg);

/// Test-vector policy for the block conditions: either max over an explicit
/// set of unit vectors, or the operator norm (supremum over the unit ball,
/// exact for PSD diagonal blocks).
struct BlockTestVectors {
    std::vector<ComplexVector> vectors; // empty means: use the unit ball
};

/// Uniform liminf of <B_nn eta, eta> over the test set (one subsequence for
/// all eta) — sufficient for hypercyclicity of the adjoint multiplier.
Verdict block_hypercyclicity_sufficient(const BlockCoefficientKernel& kernel,
                                        const BlockTestVectors& test, const CriteriaConfig& cfg,
                                        std::optional<SequenceAsymptotics> analytic = std::nullopt);

/// Uniform limit version (sufficient for topological mixing).
Verdict block_mixing_sufficient(const BlockCoefficientKernel& kernel,
                                const BlockTestVectors& test, const CriteriaConfig& cfg,
                                std::optional<SequenceAsymptotics> analytic = std::nullopt);

/// Block absolute tail test on sum_{n,m >= N'} ||B_nm||.
Verdict block_chaos_sufficient(const BlockCoefficientKernel& kernel, const CriteriaConfig& cfg,
                               std::optional<SequenceAsymptotics> analytic = std::nullopt);

/// Coarse agreement: both satisfied, both violated, or both inconclusive.
bool verdict_agrees(const Verdict& a, const Verdict& b) noexcept;

/// Absolute tail sums s(N') = sum over n, m in [N', window) of |a_nm| for
/// N' = 0..window (s[window] = 0). These are the values the chaos verdicts
/// classify and record as evidence.
std::vector<double> absolute_tail_sums(const CoefficientMatrix& a, std::size_t window);

/// Same with the spectral norm of each block.
std::vector<double> block_absolute_tail_sums(const BlockCoefficientKernel& kernel,
                                             std::size_t window);

} // namespace rkdyn

#endif
