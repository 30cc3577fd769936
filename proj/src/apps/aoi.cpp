#include "fp/apps/aoi.hpp"

#include <cmath>
#include <utility>

#include "fp/inner.hpp"
#include "fp/scalar_transforms.hpp"

namespace fp {

namespace {

void check_params(int sources, double mu) {
    if (sources < 1) throw FpError("aoi: need at least one source");
    if (mu <= 0.0) throw FpError("aoi: service rate must be positive");
}

// Best common rate and its sum-AoI: dense scan plus golden-section polish
// (the objective blows up at zero rate).
std::pair<double, double> equal_rate_search(int sources, double mu) {
    const int grid = 20000;
    double best_c = mu;
    double best_v = sum_aoi_value(sources, mu, Vec::Constant(sources, mu));
    for (int g = 1; g < grid; ++g) {
        const double c = mu * static_cast<double>(g) / grid;
        const double v = sum_aoi_value(sources, mu, Vec::Constant(sources, c));
        if (v < best_v) {
            best_v = v;
            best_c = c;
        }
    }
    const double lo = std::max(best_c - 2.0 * mu / grid, 1e-9 * mu);
    const double hi = std::min(best_c + 2.0 * mu / grid, mu);
    const double polished = golden_section_max(
        [&](double c) { return -sum_aoi_value(sources, mu, Vec::Constant(sources, c)); },
        lo, hi, 1e-12 * mu);
    const double pv = sum_aoi_value(sources, mu, Vec::Constant(sources, polished));
    if (pv < best_v) return {polished, pv};
    return {best_c, best_v};
}

}  // namespace

double sum_aoi_value(int sources, double mu, const Vec& lambda) {
    check_params(sources, mu);
    if (lambda.size() != sources) throw ShapeMismatch("aoi: rate vector size");
    double total = 0.0;
    double rho_hat = 0.0;
    for (int k = 0; k < sources; ++k) {
        const double rho = lambda[k] / mu;
        if (rho <= 0.0) throw DegenerateDenominator("aoi: zero arrival rate");
        total += (rho_hat * rho_hat + 3.0 * rho_hat + 1.0) / (mu * (1.0 + rho_hat)) +
                 (rho_hat + 1.0) * (rho_hat + 1.0) / (mu * rho);
        rho_hat += rho;
    }
    return total;
}

FPProblem build_aoi_problem(int sources, double mu) {
    check_params(sources, mu);
    FPProblem problem;
    problem.kind = ProblemKind::sum_min;
    problem.dimension = sources;
    problem.weights = Vec::Ones(2 * sources);
    problem.constraint =
        ConstraintSet::box_set(Vec::Zero(sources), Vec::Constant(sources, mu));

    // rho_hat_k depends on lambda_1..lambda_{k-1} only.
    auto rho_hat = [mu](const Vec& lambda, int k) {
        double s = 0.0;
        for (int i = 0; i < k; ++i) s += lambda[i] / mu;
        return s;
    };

    for (int k = 0; k < sources; ++k) {
        RatioSpec waiting;  // (rho_hat^2 + 3 rho_hat + 1) / (mu (1 + rho_hat))
        waiting.numerator = [rho_hat, k](const Vec& x) {
            const double r = rho_hat(x, k);
            return r * r + 3.0 * r + 1.0;
        };
        waiting.denominator = [rho_hat, mu, k](const Vec& x) {
            return mu * (1.0 + rho_hat(x, k));
        };
        waiting.grad_numerator = [rho_hat, mu, k, sources](const Vec& x) {
            const double r = rho_hat(x, k);
            Vec g = Vec::Zero(sources);
            for (int i = 0; i < k; ++i) g[i] = (2.0 * r + 3.0) / mu;
            return g;
        };
        waiting.grad_denominator = [k, sources](const Vec&) {
            Vec g = Vec::Zero(sources);
            for (int i = 0; i < k; ++i) g[i] = 1.0;
            return g;
        };
        waiting.curvature = Curvature::convex_concave;
        problem.ratios.push_back(std::move(waiting));

        RatioSpec service;  // (rho_hat + 1)^2 / (mu rho_k) = (rho_hat + 1)^2 / lambda_k
        service.numerator = [rho_hat, k](const Vec& x) {
            const double r = rho_hat(x, k) + 1.0;
            return r * r;
        };
        service.denominator = [k](const Vec& x) { return x[k]; };
        service.grad_numerator = [rho_hat, mu, k, sources](const Vec& x) {
            const double r = rho_hat(x, k) + 1.0;
            Vec g = Vec::Zero(sources);
            for (int i = 0; i < k; ++i) g[i] = 2.0 * r / mu;
            return g;
        };
        service.grad_denominator = [k, sources](const Vec&) {
            Vec g = Vec::Zero(sources);
            g[k] = 1.0;
            return g;
        };
        service.curvature = Curvature::convex_concave;
        problem.ratios.push_back(std::move(service));
    }
    return problem;
}

AoiResult solve_aoi(int sources, double mu, const SolverConfig& config) {
    const FPProblem problem = build_aoi_problem(sources, mu);

    // Start from the equal-rate optimum; monotone descent then keeps the
    // flexible per-source solution at or below the equal-rate baseline.
    Vec start = Vec::Constant(sources, equal_rate_search(sources, mu).first);

    SolverConfig cfg = config;
    if (cfg.variant != TransformKind::am_gm) cfg.variant = TransformKind::inverse_quadratic;
    SolveResult r = unified_qt_solve(problem, default_inner_solver(), cfg, start);

    AoiResult out;
    out.rates = r.x;
    out.sum_aoi = -r.value;
    out.trace = std::move(r.trace);
    out.trace.direction = Direction::minimize;
    for (auto& rec : out.trace.records) rec.objective = -rec.objective;
    return out;
}

double equal_rate_baseline(int sources, double mu) {
    check_params(sources, mu);
    return equal_rate_search(sources, mu).second;
}

double max_rate_baseline(int sources, double mu) {
    check_params(sources, mu);
    return sum_aoi_value(sources, mu, Vec::Constant(sources, mu));
}

}  // namespace fp
