#include "fp/apps/power_control.hpp"

#include <chrono>
#include <cmath>

namespace fp {

namespace {

void check_power_instance(const NetworkInstance& net) {
    if (net.links < 1) throw FpError("power control: no links");
    if (net.gain.rows() != net.links || net.gain.cols() != net.links)
        throw ShapeMismatch("power control: gain matrix shape");
    if (net.gain.minCoeff() < 0.0) throw FpError("power control: negative gain");
    if (net.noise <= 0.0 || net.power_cap <= 0.0)
        throw FpError("power control: noise and power cap must be positive");
}

Vec instance_weights(const NetworkInstance& net) {
    return net.weights.size() ? net.weights : Vec::Ones(net.links);
}

}  // namespace

Vec sinr_values(const NetworkInstance& net, const Vec& p) {
    const int K = net.links;
    Vec out(K);
    for (int i = 0; i < K; ++i) {
        double interference = net.noise;
        for (int j = 0; j < K; ++j)
            if (j != i) interference += net.gain(i, j) * p[j];
        out[i] = net.gain(i, i) * p[i] / interference;
    }
    return out;
}

double weighted_sum_rate(const NetworkInstance& net, const Vec& p) {
    const Vec g = sinr_values(net, p);
    const Vec w = instance_weights(net);
    double rate = 0.0;
    for (int i = 0; i < net.links; ++i) rate += w[i] * std::log1p(g[i]);
    return rate;
}

PowerControlResult solve_power_control(const NetworkInstance& net,
                                       const SolverConfig& config) {
    check_power_instance(net);
    config.check();
    const int K = net.links;
    const Vec w = instance_weights(net);
    const double P = net.power_cap;

    PowerControlResult out;
    out.trace.variant = TransformKind::lagrangian_dual;
    out.trace.direction = Direction::maximize;

    const auto t0 = std::chrono::steady_clock::now();
    Vec p = Vec::Constant(K, P);
    double prev = weighted_sum_rate(net, p);
    Vec gamma(K), y(K), received(K), p_before(K);

    for (int it = 1; it <= config.max_iters; ++it) {
        p_before = p;
        gamma = sinr_values(net, p);
        for (int i = 0; i < K; ++i) {
            received[i] = net.noise;
            for (int j = 0; j < K; ++j) received[i] += net.gain(i, j) * p[j];
            y[i] = std::sqrt(w[i] * (1.0 + gamma[i]) * net.gain(i, i) * p[i]) / received[i];
        }
        for (int i = 0; i < K; ++i) {
            double denom = 0.0;
            for (int j = 0; j < K; ++j) denom += y[j] * y[j] * net.gain(j, i);
            if (denom <= 0.0) {
                p[i] = P;  // no one hears this link; full power is optimal
                continue;
            }
            p[i] = std::min(P, y[i] * y[i] * w[i] * (1.0 + gamma[i]) * net.gain(i, i) /
                                   (denom * denom));
        }
        const double obj = weighted_sum_rate(net, p);
        const double surrogate = [&] {
            // Quadratic-transform surrogate value at the frozen auxiliaries.
            double s = 0.0;
            for (int i = 0; i < K; ++i) {
                double tot = net.noise;
                for (int j = 0; j < K; ++j) tot += net.gain(i, j) * p[j];
                s += w[i] * (std::log1p(gamma[i]) - gamma[i]);
                s += 2.0 * y[i] * std::sqrt(w[i] * (1.0 + gamma[i]) * net.gain(i, i) * p[i]) -
                     y[i] * y[i] * tot;
            }
            return s;
        }();
        const double elapsed =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        out.trace.records.push_back(
            {it, obj, surrogate, std::sqrt(gamma.squaredNorm() + y.squaredNorm()), elapsed});
        // Exact freeze means a floating-point fixed point of the update map.
        const bool frozen = (p - p_before).lpNorm<Eigen::Infinity>() == 0.0;
        if (frozen || std::abs(obj - prev) <= config.obj_tol) {
            prev = obj;
            out.trace.status = SolveStatus::converged;
            break;
        }
        prev = obj;
    }
    out.powers = p;
    out.sum_rate = prev;
    return out;
}

double power_fixed_point_residual(const NetworkInstance& net, const Vec& p,
                                  double interior_margin) {
    check_power_instance(net);
    const int K = net.links;
    const Vec w = instance_weights(net);
    const Vec gamma = sinr_values(net, p);
    Vec y2(K);
    for (int i = 0; i < K; ++i) {
        double received = net.noise;
        for (int j = 0; j < K; ++j) received += net.gain(i, j) * p[j];
        y2[i] = w[i] * (1.0 + gamma[i]) * net.gain(i, i) * p[i] / (received * received);
    }
    double worst = 0.0;
    for (int i = 0; i < K; ++i) {
        // Links whose powers have collapsed toward 0 or sit at the cap are
        // boundary solutions; the interior test is relative to the cap.
        if (p[i] <= interior_margin * net.power_cap ||
            p[i] >= (1.0 - interior_margin) * net.power_cap)
            continue;
        double denom = 0.0;
        for (int j = 0; j < K; ++j) denom += y2[j] * net.gain(j, i);
        const double mapped = y2[i] * w[i] * (1.0 + gamma[i]) * net.gain(i, i) /
                              (denom * denom);
        worst = std::max(worst, std::abs(mapped - p[i]) / p[i]);
    }
    return worst;
}

FPProblem build_power_logratio_problem(const NetworkInstance& net) {
    check_power_instance(net);
    const int K = net.links;
    FPProblem problem;
    problem.kind = ProblemKind::log_ratio;
    problem.dimension = K;
    problem.weights = instance_weights(net);
    problem.constraint = ConstraintSet::box_set(
        Vec::Zero(K), Vec::Constant(K, net.power_cap));
    const Mat G = net.gain;
    const double noise = net.noise;
    for (int i = 0; i < K; ++i) {
        RatioSpec r;
        r.numerator = [G, i](const Vec& p) { return G(i, i) * p[i]; };
        r.denominator = [G, i, noise, K](const Vec& p) {
            double s = noise;
            for (int j = 0; j < K; ++j)
                if (j != i) s += G(i, j) * p[j];
            return s;
        };
        r.grad_numerator = [G, i, K](const Vec&) {
            Vec g = Vec::Zero(K);
            g[i] = G(i, i);
            return g;
        };
        r.grad_denominator = [G, i, K](const Vec&) {
            Vec g(K);
            for (int j = 0; j < K; ++j) g[j] = (j == i) ? 0.0 : G(i, j);
            return g;
        };
        r.curvature = Curvature::concave_convex;
        problem.ratios.push_back(std::move(r));
    }
    return problem;
}

double full_power_rate(const NetworkInstance& net) {
    return weighted_sum_rate(net, Vec::Constant(net.links, net.power_cap));
}

double random_power_rate(const NetworkInstance& net, CounterRng& rng) {
    Vec p(net.links);
    for (int i = 0; i < net.links; ++i) p[i] = rng.uniform(0.0, net.power_cap);
    return weighted_sum_rate(net, p);
}

}  // namespace fp
