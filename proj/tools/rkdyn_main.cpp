// rkdyn: analyze the dynamics of the adjoint multiplication operator on
// truncated analytic-kernel models of the unit disc.
//
//   rkdyn analyze  --spec kernel.json [--order N] [--out report.json]
//   rkdyn simulate --spec kernel.json --vector 0 --steps 16
//                  [--periods 1,2,4] [--out orbit.csv] [--periods-out pp.csv]
//   rkdyn demo counterexample --beta power:-1 [--order 256] [--out demo.json]
//   rkdyn verify   --suite all

#include "rkdyn/analyze.hpp"
#include "rkdyn/errors.hpp"
#include "rkdyn/simulate.hpp"
#include "rkdyn/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

namespace {

using rkdyn::Complex;

rkdyn::SequenceSpec parseBetaArg(const std::string& text) {
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    if (head == "hardy")
        return rkdyn::SequenceSpec::named(rkdyn::Family::Hardy);
    if (head == "bergman")
        return rkdyn::SequenceSpec::named(rkdyn::Family::Bergman);
    if (head == "dirichlet")
        return rkdyn::SequenceSpec::named(rkdyn::Family::Dirichlet);
    if (head == "power" || head == "geometric") {
        if (colon == std::string::npos)
            throw rkdyn::SpecError(head + " needs a parameter, e.g. " + head + ":0.5");
        const double param = std::stod(text.substr(colon + 1));
        return rkdyn::SequenceSpec::named(
            head == "power" ? rkdyn::Family::Power : rkdyn::Family::Geometric, param);
    }
    return rkdyn::SequenceSpec::expression(text);
}

std::vector<std::size_t> parsePeriods(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(static_cast<std::size_t>(std::stoul(item)));
    return out;
}

rkdyn::VectorInD parseVectorArg(const std::string& text, Eigen::Index order) {
    if (text.find(',') == std::string::npos) {
        const Eigen::Index index = static_cast<Eigen::Index>(std::stol(text));
        return rkdyn::VectorInD::unit(order, index);
    }
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        values.push_back(std::stod(item));
    if (static_cast<Eigen::Index>(values.size()) > order)
        throw rkdyn::CapacityError("vector has more coordinates than the model order");
    rkdyn::ComplexVector c = rkdyn::ComplexVector::Zero(order);
    for (std::size_t i = 0; i < values.size(); ++i)
        c(static_cast<Eigen::Index>(i)) = Complex(values[i], 0.0);
    return rkdyn::VectorInD{std::move(c)};
}

void emit(const std::string& contents, const std::string& outPath) {
    if (outPath.empty())
        std::cout << contents << "\n";
    else
        rkdyn::write_file_atomic(outPath, contents);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamics of the adjoint multiplier on truncated kernel models"};
    app.require_subcommand(1);

    std::string specPath, outPath, periodsOutPath, vectorArg = "0", betaArg, suiteName = "all";
    std::string periodsArg;
    Eigen::Index orderOverride = -1;
    std::size_t steps = 16;

    CLI::App* analyzeCmd = app.add_subcommand("analyze", "run all applicable criteria");
    analyzeCmd->add_option("--spec", specPath, "kernel spec JSON file")->required();
    analyzeCmd->add_option("--order", orderOverride, "override the spec order");
    analyzeCmd->add_option("--out", outPath, "report path (stdout when omitted)");

    CLI::App* simulateCmd = app.add_subcommand("simulate", "orbit and periodic points");
    simulateCmd->add_option("--spec", specPath, "kernel spec JSON file")->required();
    simulateCmd->add_option("--order", orderOverride, "override the spec order");
    simulateCmd->add_option("--vector", vectorArg, "unit index or comma-separated coords");
    simulateCmd->add_option("--steps", steps, "orbit steps");
    simulateCmd->add_option("--periods", periodsArg, "comma-separated periods");
    simulateCmd->add_option("--out", outPath, "orbit CSV path (stdout when omitted)");
    simulateCmd->add_option("--periods-out", periodsOutPath, "periodic-point CSV path");

    CLI::App* demoCmd = app.add_subcommand("demo", "built-in demonstrations");
    demoCmd->require_subcommand(1);
    CLI::App* counterCmd = demoCmd->add_subcommand(
        "counterexample", "hypercyclic kernel that fails the sufficient diagonal-decay test");
    Eigen::Index demoOrder = 256;
    counterCmd->add_option("--beta", betaArg, "named family (e.g. power:-1) or expression")
        ->required();
    counterCmd->add_option("--order", demoOrder, "truncation order");
    counterCmd->add_option("--out", outPath, "report path (stdout when omitted)");

    CLI::App* verifyCmd = app.add_subcommand("verify", "run a built-in verification suite");
    verifyCmd->add_option("--suite", suiteName,
                          "structural | oracles | criteria-consistency | dynamics | all");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyzeCmd) {
            rkdyn::KernelSpec spec = rkdyn::load_spec(specPath);
            if (orderOverride > 0) {
                spec.order = orderOverride;
                spec.echo["order"] = orderOverride;
            }
            emit(rkdyn::analyze(spec).dump(2), outPath);
        } else if (*simulateCmd) {
            rkdyn::KernelSpec spec = rkdyn::load_spec(specPath);
            if (orderOverride > 0) {
                spec.order = orderOverride;
                spec.echo["order"] = orderOverride;
            }
            rkdyn::SimulateConfig cfg;
            cfg.vector = parseVectorArg(vectorArg, spec.order);
            cfg.steps = steps;
            cfg.periods = parsePeriods(periodsArg);
            const rkdyn::SimulationResult result = rkdyn::simulate(spec, cfg);
            emit(rkdyn::orbit_csv(result.orbit), outPath);
            if (!cfg.periods.empty()) {
                const std::string table = rkdyn::periodic_csv(result.periodic);
                if (periodsOutPath.empty() && !outPath.empty()) {
                    std::string derived = outPath;
                    const auto dot = derived.rfind('.');
                    derived = (dot == std::string::npos ? derived : derived.substr(0, dot)) +
                              "_periods.csv";
                    rkdyn::write_file_atomic(derived, table);
                } else {
                    emit(table, periodsOutPath);
                }
            }
        } else if (*counterCmd) {
            const rkdyn::SequenceSpec beta = parseBetaArg(betaArg);
            emit(rkdyn::demo_counterexample(beta, demoOrder).dump(2), outPath);
        } else if (*verifyCmd) {
            const std::vector<rkdyn::CheckResult> results = rkdyn::run_verify_suite(suiteName);
            std::size_t failures = 0;
            for (const rkdyn::CheckResult& r : results) {
                std::cout << (r.passed ? "[ok]   " : "[FAIL] ") << r.name;
                if (!r.detail.empty())
                    std::cout << " — " << r.detail;
                std::cout << "\n";
                if (!r.passed)
                    ++failures;
            }
            std::cout << results.size() - failures << "/" << results.size() << " checks passed\n";
            return failures == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
