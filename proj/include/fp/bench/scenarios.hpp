#pragma once

#include <string>
#include <vector>

#include "fp/apps/instances.hpp"
#include "fp/bench/config.hpp"
#include "fp/types.hpp"

namespace fp::bench {

// Exit codes: 0 success, 2 config error, 3 solver degeneracy.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDegenerate = 3;

int run_scenario(const ScenarioConfig& cfg);
int run_scenario_file(const std::string& path);

// Empirical convergence-rate comparison of the three matrix-transform
// variants on a pilot instance: per-iteration optimality gaps against the
// best value any variant reaches within `iters` iterations, and the
// least-squares slope of log(gap) vs log(k) over [fit_lo, fit_hi].
struct RateStudy {
    std::vector<double> gap_basic, gap_nonhomogeneous, gap_extrapolated;
    double slope_basic = 0.0;
    double slope_nonhomogeneous = 0.0;
    double slope_extrapolated = 0.0;
    double best_value = 0.0;
};

RateStudy convergence_rate_study(const NetworkInstance& pilot_net, int iters,
                                 int fit_lo, int fit_hi);

double loglog_slope(const std::vector<double>& gaps, int fit_lo, int fit_hi,
                    double floor);

}  // namespace fp::bench
