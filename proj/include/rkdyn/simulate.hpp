#ifndef RKDYN_SIMULATE_HPP
#define RKDYN_SIMULATE_HPP

#include "rkdyn/kernel_spec.hpp"

#include <string>
#include <vector>

namespace rkdyn {

struct SimulateConfig {
    VectorInD vector;               // initial vector in Khat coordinates
    std::size_t steps = 0;          // orbit length (steps + 1 rows)
    std::vector<std::size_t> periods; // periodic points to construct
    std::size_t leading_coords = 8;
};

struct PeriodicRow {
    std::size_t p;
    double residual;
    double bound;
    double distance_to_x;
};

struct SimulationResult {
    Orbit orbit;
    std::vector<PeriodicRow> periodic;
};

/// Build the model for a scalar kernel spec and run the orbit and the
/// requested periodic-point constructions. Operator-valued kinds are not
/// simulated.
SimulationResult simulate(const KernelSpec& spec, const SimulateConfig& cfg);

/// Orbit trace as CSV: header, then one row per step with the Gram norm and
/// the leading coordinates (real and imaginary parts interleaved).
std::string orbit_csv(const Orbit& orbit, std::size_t leading_coords = 8);

/// Periodic-point table as CSV.
std::string periodic_csv(const std::vector<PeriodicRow>& rows);

} // namespace rkdyn

#endif
