#include "rkdyn/simulate.hpp"

#include "rkdyn/errors.hpp"

#include <charconv>
#include <cstdio>

namespace rkdyn {

namespace {

void appendDouble(std::string& out, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    out.append(buf, ptr);
}

} // namespace

SimulationResult simulate(const KernelSpec& spec, const SimulateConfig& cfg) {
    const BuiltKernel built = build_kernel(spec);
    if (!built.scalar)
        throw SpecError("simulate requires a scalar kernel spec (kind " +
                        std::string(kind_name(spec.kind)) + " is operator-valued)");

    TruncatedModel model(*built.scalar); // throws NotPositiveDefiniteError when gated
    SimulationResult result;
    result.orbit = orbit(model, cfg.vector, cfg.steps, cfg.leading_coords);
    for (std::size_t p : cfg.periods) {
        const PeriodicPoint pp = periodic_point(model, cfg.vector, p, built.diag_tail);
        result.periodic.push_back(PeriodicRow{p, pp.residual, pp.bound, pp.distance_to_x});
    }
    return result;
}

std::string orbit_csv(const Orbit& orbitData, std::size_t leading_coords) {
    std::string out = "step,norm";
    for (std::size_t i = 0; i < leading_coords; ++i) {
        out += ",coord_" + std::to_string(i) + "_re";
        out += ",coord_" + std::to_string(i) + "_im";
    }
    out += "\n";
    for (std::size_t step = 0; step < orbitData.norms.size(); ++step) {
        out += std::to_string(step);
        out += ",";
        appendDouble(out, orbitData.norms[step]);
        const auto& coords = orbitData.leading[step];
        for (std::size_t i = 0; i < leading_coords; ++i) {
            const Complex c = i < coords.size() ? coords[i] : Complex(0.0, 0.0);
            out += ",";
            appendDouble(out, c.real());
            out += ",";
            appendDouble(out, c.imag());
        }
        out += "\n";
    }
    return out;
}

std::string periodic_csv(const std::vector<PeriodicRow>& rows) {
    std::string out = "p,residual,bound,distance_to_x\n";
    for (const PeriodicRow& r : rows) {
        out += std::to_string(r.p);
        out += ",";
        appendDouble(out, r.residual);
        out += ",";
        appendDouble(out, r.bound);
        out += ",";
        appendDouble(out, r.distance_to_x);
        out += "\n";
    }
    return out;
}

} // namespace rkdyn
