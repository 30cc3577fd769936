#pragma once

#include <vector>

#include "fp/rng.hpp"
#include "fp/types.hpp"

namespace fp {

// SISO uplink with per-cell candidate users: pick one user per cell and its
// transmit power to maximize the weighted sum rate of the scheduled users.
struct UplinkInstance {
    int cells = 0;
    std::vector<int> candidates;        // per cell
    // gain[j](i, c): power gain from candidate c of cell j to BS i.
    std::vector<Mat> gain;
    std::vector<Vec> weights;           // weights[j][c]
    double noise = 1.0;
    double power_cap = 1.0;
    std::uint64_t seed = 0;

    void check_well_formed() const;
};

struct ScheduleResult {
    std::vector<int> schedule;  // selected candidate per cell
    Vec powers;                 // per cell
    double weighted_sum_rate = 0.0;
    SolverTrace trace;
};

double scheduled_sum_rate(const UplinkInstance& net, const std::vector<int>& schedule,
                          const Vec& powers);

// Joint scheduling and power control: after the dual transform and the
// weight-absorbing quadratic-transform decoupling, every candidate's score
// separates per cell, so the discrete selection is a per-cell argmax and the
// power update is in closed form. Monotone over full cycles.
ScheduleResult schedule_uplink_fplinq(const UplinkInstance& net,
                                      const SolverConfig& config = {});

UplinkInstance random_uplink_instance(int cells, int candidates_per_cell,
                                      std::uint64_t seed);

}  // namespace fp
