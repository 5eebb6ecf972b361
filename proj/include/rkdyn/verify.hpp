#ifndef RKDYN_VERIFY_HPP
#define RKDYN_VERIFY_HPP

#include <string>
#include <vector>

namespace rkdyn {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

/// Run a named verification suite over the built-in kernel battery.
/// Suites: "structural", "oracles", "criteria-consistency", "dynamics",
/// "all". Throws SpecError for an unknown suite name.
std::vector<CheckResult> run_verify_suite(const std::string& suite);

} // namespace rkdyn

#endif
