#include "fp/lagrangian_dual.hpp"

#include <chrono>
#include <cmath>

#include "fp/inner.hpp"

namespace fp {

Vec ldt_gamma_update(const Vec& A, const Vec& B) {
    if (A.size() != B.size()) throw ShapeMismatch("ldt_gamma_update: size mismatch");
    Vec gamma(A.size());
    for (Eigen::Index i = 0; i < A.size(); ++i) {
        if (B[i] < kDenominatorFloor)
            throw DegenerateDenominator("ldt: denominator below floor");
        gamma[i] = A[i] / B[i];
    }
    return gamma;
}

double ldt_objective(const Vec& x, const Vec& gamma, const FPProblem& problem) {
    problem.check_well_formed();
    if (gamma.size() != problem.term_count())
        throw ShapeMismatch("ldt_objective: gamma size mismatch");
    Vec A, B;
    evaluate_ratios(problem, x, A, B);
    double total = 0.0;
    for (int i = 0; i < problem.term_count(); ++i) {
        const double ab = A[i] + B[i];
        if (ab <= 0.0)
            throw DegenerateDenominator("ldt_objective: A + B not positive");
        total += problem.weights[i] * (std::log1p(gamma[i]) +
                                       (1.0 + gamma[i]) * A[i] / ab - gamma[i]);
    }
    return total;
}

SolveResult logratio_solve(const FPProblem& problem, const InnerSolverFn& inner,
                           const SolverConfig& config, std::optional<Vec> start) {
    problem.check_well_formed();
    config.check();
    if (problem.kind != ProblemKind::log_ratio)
        throw FpError("logratio_solve expects a log-ratio problem");

    SolveResult out;
    out.trace.variant = TransformKind::lagrangian_dual;
    out.trace.direction = Direction::maximize;
    for (const auto& r : problem.ratios)
        if (r.curvature != Curvature::concave_convex) {
            out.trace.warn("ratio not tagged concave-convex; inner step convexity not guaranteed");
            break;
        }

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed_ms = [&t0] {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    };

    Vec x = start ? *start : interior_point(problem.constraint, problem.dimension);
    x = project(problem.constraint, x);
    double prev_obj = evaluate_objective(problem, x);
    const int n = problem.term_count();

    Vec gamma, y;
    for (int it = 1; it <= config.max_iters; ++it) {
        Vec A, B;
        evaluate_ratios(problem, x, A, B);
        gamma = ldt_gamma_update(A, B);

        // With gamma frozen the x-dependent part is the sum of ratios
        // w_i (1 + gamma_i) A_i / (A_i + B_i); run quadratic-transform sweeps.
        for (int sweep = 0; sweep < std::max(1, config.inner_sweeps); ++sweep) {
            evaluate_ratios(problem, x, A, B);
            y.resize(n);
            for (int i = 0; i < n; ++i) {
                const double num = problem.weights[i] * (1.0 + gamma[i]) * A[i];
                if (num < 0.0)
                    throw DegenerateDenominator("logratio: negative transformed numerator");
                y[i] = std::sqrt(num) / (A[i] + B[i]);
            }

            const ScalarFn qt_surrogate = [&](const Vec& v) {
                double total = 0.0;
                for (int i = 0; i < n; ++i) {
                    const RatioSpec& r = problem.ratios[i];
                    const double a = r.numerator(v);
                    const double b = r.denominator(v);
                    if (a < 0.0) return -std::numeric_limits<double>::infinity();
                    const double num = problem.weights[i] * (1.0 + gamma[i]) * a;
                    total += 2.0 * y[i] * std::sqrt(num) - y[i] * y[i] * (a + b);
                }
                return total;
            };
            const GradFn qt_gradient = [&](const Vec& v) {
                Vec g = Vec::Zero(v.size());
                for (int i = 0; i < n; ++i) {
                    const RatioSpec& r = problem.ratios[i];
                    const double a = std::max(r.numerator(v), 0.0);
                    const double c = problem.weights[i] * (1.0 + gamma[i]);
                    const double sq = std::max(std::sqrt(c * a), 1e-150);
                    g += (y[i] * c / sq) * r.grad_numerator(v) -
                         (y[i] * y[i]) * Vec(r.grad_numerator(v) + r.grad_denominator(v));
                }
                return g;
            };
            try {
                x = inner(qt_surrogate, qt_gradient, problem.constraint, x, config);
            } catch (const FpError& e) {
                throw InnerSolverFailure(std::string("logratio inner solve failed: ") + e.what());
            }
        }

        const double obj = evaluate_objective(problem, x);
        const double aux_norm = std::sqrt(gamma.squaredNorm() + y.squaredNorm());
        out.trace.records.push_back(
            {it, obj, ldt_objective(x, gamma, problem), aux_norm, elapsed_ms()});
        if (std::abs(obj - prev_obj) <= config.obj_tol) {
            prev_obj = obj;
            out.trace.status = SolveStatus::converged;
            break;
        }
        prev_obj = obj;
    }
    out.x = x;
    out.value = prev_obj;
    return out;
}

}  // namespace fp
