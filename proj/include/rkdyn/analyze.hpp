#ifndef RKDYN_ANALYZE_HPP
#define RKDYN_ANALYZE_HPP

#include "rkdyn/kernel_spec.hpp"

#include <json.hpp>

#include <string>

namespace rkdyn {

inline constexpr const char* kToolVersion = "0.1.0";

/// Run every applicable dynamics criterion and structural check on the
/// kernel described by `spec` and assemble the JSON report. Deterministic
/// given spec + config except for the provenance timestamp.
nlohmann::json analyze(const KernelSpec& spec);

/// Side-by-side contrast: the base diagonal kernel is hypercyclic (exact
/// characterization on beta) while the conjugated kernel fails the
/// sufficient diagonal-decay condition. Requires liminf beta = 0 certified
/// on the base, otherwise refuses with GateError.
nlohmann::json demo_counterexample(const SequenceSpec& beta, Eigen::Index order,
                                   const CriteriaConfig& cfg = {});

/// Serialize a verdict into its report form.
nlohmann::json verdict_to_json(const Verdict& v);

/// Write a file atomically (temp file + rename).
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

} // namespace rkdyn

#endif
