#ifndef RKDYN_VERDICT_HPP
#define RKDYN_VERDICT_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace rkdyn {

/// Classification of an asymptotic condition. Asymptotic statements cannot be
/// decided from finitely many terms, so numeric verdicts are window-based;
/// SATISFIED_ANALYTIC is reserved for named sequence families whose limit
/// behavior is known exactly. The four token strings are stable API.
enum class VerdictClass {
    SatisfiedAnalytic,
    SatisfiedOnWindow,
    ViolatedOnWindow,
    Inconclusive,
};

const char* to_token(VerdictClass c) noexcept;

/// Replayable evidence: re-evaluating the underlying sequence at the witness
/// indices must reproduce the recorded values bit-exactly.
struct VerdictEvidence {
    std::size_t window = 0;
    std::vector<std::size_t> witness_indices;
    std::vector<double> witness_values;
    double extremal = 0.0;   // the value the classification was decided on
    bool analytic = false;   // decided from family metadata, not the window
    std::string note;
};

struct Verdict {
    std::string condition_id;
    VerdictClass classification = VerdictClass::Inconclusive;
    VerdictEvidence evidence;
    bool exact = false; // marks an iff-characterization, not a mere sufficient test

    bool satisfied() const noexcept {
        return classification == VerdictClass::SatisfiedAnalytic ||
               classification == VerdictClass::SatisfiedOnWindow;
    }
    bool violated() const noexcept {
        return classification == VerdictClass::ViolatedOnWindow;
    }
};

/// Shared window semantics. The last half of the window is the decision
/// region; `tol` accepts decay, `floor` rejects it, and the trend guard
/// keeps slowly decaying sequences INCONCLUSIVE instead of misclassified.
struct CriteriaConfig {
    std::size_t window = 512;
    double tol = 1e-6;
    double floor = 1e-3;
    double trend_guard = 0.6;
};

} // namespace rkdyn

#endif
