#include "fp/apps/secrecy.hpp"

#include <cmath>

#include "fp/scalar_transforms.hpp"

namespace fp {

namespace {

void check_secrecy_instance(const NetworkInstance& net) {
    if (net.links < 1) throw FpError("secrecy: no cells");
    if (net.gain.rows() != net.links || net.gain.cols() != net.links)
        throw ShapeMismatch("secrecy: gain matrix shape");
    if (net.eve_gain.rows() != net.links || net.eve_gain.cols() != net.links)
        throw ShapeMismatch("secrecy: eavesdropper gain matrix shape");
    if (net.noise <= 0.0 || net.eve_noise <= 0.0 || net.power_cap <= 0.0)
        throw FpError("secrecy: noise and power cap must be positive");
}

double legit_sinr(const NetworkInstance& net, const Vec& p, int i) {
    double interference = net.noise;
    for (int j = 0; j < net.links; ++j)
        if (j != i) interference += net.gain(i, j) * p[j];
    return net.gain(i, i) * p[i] / interference;
}

double eve_sinr(const NetworkInstance& net, const Vec& p, int i) {
    double interference = net.eve_noise;
    for (int j = 0; j < net.links; ++j)
        if (j != i) interference += net.eve_gain(i, j) * p[j];
    return net.eve_gain(i, i) * p[i] / interference;
}

}  // namespace

double secrecy_objective(const NetworkInstance& net, const Vec& p) {
    check_secrecy_instance(net);
    double total = 0.0;
    for (int i = 0; i < net.links; ++i)
        total += std::log1p(legit_sinr(net, p, i)) - std::log1p(eve_sinr(net, p, i));
    return total;
}

FPProblem build_secrecy_problem(const NetworkInstance& net, bool naive_form) {
    check_secrecy_instance(net);
    const int L = net.links;
    const Mat G = net.gain;
    const Mat Ge = net.eve_gain;
    const double noise = net.noise;
    const double eve_noise = net.eve_noise;

    FPProblem problem;
    problem.kind = ProblemKind::sum_of_functions;
    problem.dimension = L;
    problem.weights = Vec::Ones(2 * L);
    problem.constraint =
        ConstraintSet::box_set(Vec::Zero(L), Vec::Constant(L, net.power_cap));

    for (int i = 0; i < L; ++i) {
        RatioSpec legit;  // G_i, the legitimate SINR
        legit.numerator = [G, i](const Vec& p) { return G(i, i) * p[i]; };
        legit.denominator = [G, i, noise, L](const Vec& p) {
            double s = noise;
            for (int j = 0; j < L; ++j)
                if (j != i) s += G(i, j) * p[j];
            return s;
        };
        legit.grad_numerator = [G, i, L](const Vec&) {
            Vec g = Vec::Zero(L);
            g[i] = G(i, i);
            return g;
        };
        legit.grad_denominator = [G, i, L](const Vec&) {
            Vec g(L);
            for (int j = 0; j < L; ++j) g[j] = (j == i) ? 0.0 : G(i, j);
            return g;
        };
        legit.curvature = Curvature::concave_convex;
        problem.ratios.push_back(std::move(legit));
        problem.outer.push_back(OuterFunction::log1p());
    }

    for (int i = 0; i < L; ++i) {
        RatioSpec eve;
        if (naive_form) {
            // Raw eavesdropper SINR inside f(r) = -ln(1 + r).
            eve.numerator = [Ge, i](const Vec& p) { return Ge(i, i) * p[i]; };
            eve.denominator = [Ge, i, eve_noise, L](const Vec& p) {
                double s = eve_noise;
                for (int j = 0; j < L; ++j)
                    if (j != i) s += Ge(i, j) * p[j];
                return s;
            };
            eve.grad_numerator = [Ge, i, L](const Vec&) {
                Vec g = Vec::Zero(L);
                g[i] = Ge(i, i);
                return g;
            };
            eve.grad_denominator = [Ge, i, L](const Vec&) {
                Vec g(L);
                for (int j = 0; j < L; ++j) g[j] = (j == i) ? 0.0 : Ge(i, j);
                return g;
            };
            eve.curvature = Curvature::convex_concave;
            problem.ratios.push_back(std::move(eve));
            problem.outer.push_back(OuterFunction::custom(
                [](double r) { return -std::log1p(r); },
                [](double r) { return -1.0 / (1.0 + r); }, Monotonicity::nonincreasing));
        } else {
            // r_i = Ge_ii p_i / (sum_j Ge_ij p_j + eve_noise) < 1, so that
            // ln(1 - r_i) = -ln(1 + eavesdropper SINR).
            eve.numerator = [Ge, i](const Vec& p) { return Ge(i, i) * p[i]; };
            eve.denominator = [Ge, i, eve_noise, L](const Vec& p) {
                double s = eve_noise;
                for (int j = 0; j < L; ++j) s += Ge(i, j) * p[j];
                return s;
            };
            eve.grad_numerator = [Ge, i, L](const Vec&) {
                Vec g = Vec::Zero(L);
                g[i] = Ge(i, i);
                return g;
            };
            eve.grad_denominator = [Ge, i, L](const Vec&) {
                Vec g(L);
                for (int j = 0; j < L; ++j) g[j] = Ge(i, j);
                return g;
            };
            eve.curvature = Curvature::convex_concave;
            problem.ratios.push_back(std::move(eve));
            problem.outer.push_back(OuterFunction::log_one_minus());
        }
    }
    return problem;
}

SecrecyResult solve_secrecy(const NetworkInstance& net, const SolverConfig& config) {
    const FPProblem problem = build_secrecy_problem(net);
    Vec start = Vec::Constant(net.links, net.power_cap);
    SolveResult r = unified_qt_solve(problem, default_inner_solver(), config, start);

    SecrecyResult out;
    out.powers = r.x;
    out.sum_secrecy_rate = r.value;
    out.per_cell_rates.resize(net.links);
    for (int i = 0; i < net.links; ++i) {
        const double raw =
            std::log1p(legit_sinr(net, r.x, i)) - std::log1p(eve_sinr(net, r.x, i));
        out.per_cell_rates[i] = std::max(raw, 0.0);
    }
    out.trace = std::move(r.trace);
    return out;
}

NetworkInstance secrecy_benchmark_instance() {
    NetworkInstance net;
    net.links = 2;
    net.noise = 0.1;      // -10 dBm
    net.eve_noise = 1.0;  // 0 dBm
    net.power_cap = 10.0; // 10 dBm
    net.gain.resize(2, 2);
    net.gain << 1.0, 0.1,
                0.09, 0.87;
    net.eve_gain.resize(2, 2);
    net.eve_gain << 0.5, 0.11,
                    0.13, 0.39;
    net.weights = Vec::Ones(2);
    return net;
}

}  // namespace fp
