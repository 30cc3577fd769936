#include "fp/apps/energy.hpp"

#include <cmath>

namespace fp {

FPProblem build_energy_efficiency_problem(const EnergyEfficiencyParams& params) {
    if (params.channel_gain <= 0.0 || params.noise <= 0.0 ||
        params.circuit_power <= 0.0 || params.power_cap <= 0.0)
        throw FpError("energy efficiency: parameters must be positive");
    const double snr_slope = params.channel_gain / params.noise;
    const double delta = params.circuit_power;

    RatioSpec ratio;
    ratio.numerator = [snr_slope](const Vec& x) { return std::log1p(snr_slope * x[0]); };
    ratio.denominator = [delta](const Vec& x) { return x[0] + delta; };
    ratio.grad_numerator = [snr_slope](const Vec& x) {
        Vec g(1);
        g[0] = snr_slope / (1.0 + snr_slope * x[0]);
        return g;
    };
    ratio.grad_denominator = [](const Vec&) { return Vec::Ones(1); };
    ratio.curvature = Curvature::concave_convex;

    FPProblem problem;
    problem.kind = ProblemKind::single;
    problem.ratios.push_back(std::move(ratio));
    problem.weights = Vec::Ones(1);
    problem.constraint =
        ConstraintSet::box_set(Vec::Zero(1), Vec::Constant(1, params.power_cap));
    problem.dimension = 1;
    return problem;
}

EnergyEfficiencyResult solve_energy_efficiency(const EnergyEfficiencyParams& params,
                                               const SolverConfig& config) {
    const FPProblem problem = build_energy_efficiency_problem(params);
    // Start at the cap: the numerator is zero at p = 0, which stalls the ratio.
    Vec start = Vec::Constant(1, params.power_cap);
    SolveResult r = dinkelbach_solve(problem, default_inner_solver(), config, start);
    EnergyEfficiencyResult out;
    out.power = r.x[0];
    out.efficiency = r.value;
    out.trace = std::move(r.trace);
    return out;
}

}  // namespace fp
