#pragma once

#include "fp/apps/instances.hpp"
#include "fp/types.hpp"

namespace fp {

// Sum secrecy rate maximization over per-cell powers. The per-cell rate
// ln(1 + G_i) - ln(1 + Ge_i) is rewritten as ln(1 + G_i) + ln(1 - r_i) with
// r_i = Ge_i / (1 + Ge_i), whose inner ratio keeps a concave outer function.
struct SecrecyResult {
    Vec powers;
    double sum_secrecy_rate = 0.0;  // unclamped objective
    Vec per_cell_rates;             // clamped at zero for display
    SolverTrace trace;
};

// Unclamped sum of per-cell secrecy rates.
double secrecy_objective(const NetworkInstance& net, const Vec& p);

// naive_form = true uses f(r) = -ln(1 + r) on the raw eavesdropper SINR,
// the rewrite-free formulation whose outer function is not concave; the
// validator flags it.
FPProblem build_secrecy_problem(const NetworkInstance& net, bool naive_form = false);

SecrecyResult solve_secrecy(const NetworkInstance& net, const SolverConfig& config = {});

// Two-cell benchmark instance (powers in mW: noise -10 dBm, eavesdropper
// noise 0 dBm, cap 10 dBm).
NetworkInstance secrecy_benchmark_instance();

}  // namespace fp
