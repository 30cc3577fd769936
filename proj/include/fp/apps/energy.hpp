#pragma once

#include "fp/scalar_transforms.hpp"
#include "fp/types.hpp"

namespace fp {

// Single-link energy efficiency: maximize ln(1 + g p / sigma2) / (p + circuit)
// over 0 <= p <= cap.
struct EnergyEfficiencyParams {
    double channel_gain = 1.0;   // |h|^2
    double noise = 1.0;          // sigma^2
    double circuit_power = 1.0;  // always-on power delta
    double power_cap = 10.0;
};

struct EnergyEfficiencyResult {
    double power = 0.0;
    double efficiency = 0.0;
    SolverTrace trace;
};

FPProblem build_energy_efficiency_problem(const EnergyEfficiencyParams& params);

EnergyEfficiencyResult solve_energy_efficiency(const EnergyEfficiencyParams& params,
                                               const SolverConfig& config = {});

}  // namespace fp
