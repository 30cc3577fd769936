#include "fp/apps/scheduling.hpp"

#include <chrono>
#include <cmath>

namespace fp {

void UplinkInstance::check_well_formed() const {
    if (cells < 1) throw FpError("scheduling: no cells");
    if (static_cast<int>(candidates.size()) != cells ||
        static_cast<int>(gain.size()) != cells ||
        static_cast<int>(weights.size()) != cells)
        throw ShapeMismatch("scheduling: per-cell field sizes");
    for (int j = 0; j < cells; ++j) {
        if (candidates[j] < 1) throw FpError("scheduling: empty candidate list");
        if (gain[j].rows() != cells || gain[j].cols() != candidates[j])
            throw ShapeMismatch("scheduling: gain matrix shape");
        if (weights[j].size() != candidates[j])
            throw ShapeMismatch("scheduling: weight vector shape");
    }
    if (noise <= 0.0 || power_cap <= 0.0)
        throw FpError("scheduling: noise and power cap must be positive");
}

double scheduled_sum_rate(const UplinkInstance& net, const std::vector<int>& schedule,
                          const Vec& powers) {
    net.check_well_formed();
    if (static_cast<int>(schedule.size()) != net.cells || powers.size() != net.cells)
        throw ShapeMismatch("scheduling: schedule/power sizes");
    double rate = 0.0;
    for (int i = 0; i < net.cells; ++i) {
        double interference = net.noise;
        for (int j = 0; j < net.cells; ++j)
            if (j != i) interference += net.gain[j](i, schedule[j]) * powers[j];
        const double signal = net.gain[i](i, schedule[i]) * powers[i];
        rate += net.weights[i][schedule[i]] * std::log1p(signal / interference);
    }
    return rate;
}

ScheduleResult schedule_uplink_fplinq(const UplinkInstance& net,
                                      const SolverConfig& config) {
    net.check_well_formed();
    config.check();
    const int L = net.cells;
    const double P = net.power_cap;

    ScheduleResult out;
    out.trace.variant = TransformKind::lagrangian_dual;
    out.trace.direction = Direction::maximize;

    std::vector<int> schedule(L, 0);
    Vec p = Vec::Constant(L, P);
    const auto t0 = std::chrono::steady_clock::now();
    double prev = scheduled_sum_rate(net, schedule, p);

    Vec gamma(L), y(L);
    for (int it = 1; it <= config.max_iters; ++it) {
        // Dual auxiliaries at the current schedule and powers.
        for (int i = 0; i < L; ++i) {
            double total = net.noise;
            for (int j = 0; j < L; ++j) total += net.gain[j](i, schedule[j]) * p[j];
            const double signal = net.gain[i](i, schedule[i]) * p[i];
            gamma[i] = signal / (total - signal);
            const double w = net.weights[i][schedule[i]];
            y[i] = std::sqrt(w * (1.0 + gamma[i]) * signal) / total;
        }

        // Decoupled per-cell candidate scores: closed-form power, then argmax.
        double surrogate = 0.0;
        for (int i = 0; i < L; ++i) surrogate -= y[i] * y[i] * net.noise;
        for (int j = 0; j < L; ++j) {
            int best_c = 0;
            double best_score = -std::numeric_limits<double>::infinity();
            double best_power = p[j];
            for (int c = 0; c < net.candidates[j]; ++c) {
                const double w = net.weights[j][c];
                const double signal_gain = net.gain[j](j, c);
                double quad = 0.0;
                for (int i = 0; i < L; ++i) quad += y[i] * y[i] * net.gain[j](i, c);
                double power = P;
                if (quad > 0.0)
                    power = std::min(
                        P, y[j] * y[j] * w * (1.0 + gamma[j]) * signal_gain / (quad * quad));
                const double score =
                    w * (std::log1p(gamma[j]) - gamma[j]) +
                    2.0 * y[j] * std::sqrt(w * (1.0 + gamma[j]) * signal_gain * power) -
                    power * quad;
                if (score > best_score) {
                    best_score = score;
                    best_c = c;
                    best_power = power;
                }
            }
            schedule[j] = best_c;
            p[j] = best_power;
            surrogate += best_score;
        }

        const double obj = scheduled_sum_rate(net, schedule, p);
        const double elapsed =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        out.trace.records.push_back(
            {it, obj, surrogate, std::sqrt(gamma.squaredNorm() + y.squaredNorm()), elapsed});
        if (std::abs(obj - prev) <= config.obj_tol) {
            prev = obj;
            out.trace.status = SolveStatus::converged;
            break;
        }
        prev = obj;
    }
    out.schedule = schedule;
    out.powers = p;
    out.weighted_sum_rate = prev;
    return out;
}

UplinkInstance random_uplink_instance(int cells, int candidates_per_cell,
                                      std::uint64_t seed) {
    if (cells < 1 || candidates_per_cell < 1)
        throw FpError("scheduling: bad instance sizes");
    CounterRng rng(seed);
    UplinkInstance net;
    net.cells = cells;
    net.seed = seed;
    net.noise = 0.1;
    net.power_cap = 1.0;
    net.candidates.assign(cells, candidates_per_cell);
    net.gain.resize(cells);
    net.weights.resize(cells);
    for (int j = 0; j < cells; ++j) {
        net.gain[j].resize(cells, candidates_per_cell);
        for (int i = 0; i < cells; ++i)
            for (int c = 0; c < candidates_per_cell; ++c) {
                const double direct = (i == j) ? 1.0 : 0.15;
                net.gain[j](i, c) = direct * rng.uniform(0.2, 1.5);
            }
        net.weights[j] = net.weights[j].setZero(candidates_per_cell);
        for (int c = 0; c < candidates_per_cell; ++c)
            net.weights[j][c] = rng.uniform(0.5, 1.5);
    }
    return net;
}

}  // namespace fp
