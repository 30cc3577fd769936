#include "fp/scalar_transforms.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "fp/inner.hpp"

namespace fp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void require_same_size(const Vec& a, const Vec& b, const char* what) {
    if (a.size() != b.size()) throw ShapeMismatch(what);
}

}  // namespace

Vec update_auxiliaries(TransformKind kind, const Vec& A, const Vec& B) {
    require_same_size(A, B, "update_auxiliaries: A/B size mismatch");
    Vec aux(A.size());
    for (Eigen::Index i = 0; i < A.size(); ++i) {
        switch (kind) {
            case TransformKind::quadratic:
                if (A[i] < 0.0)
                    throw DegenerateDenominator("quadratic transform: negative numerator");
                if (B[i] < kDenominatorFloor)
                    throw DegenerateDenominator("quadratic transform: denominator below floor");
                aux[i] = std::sqrt(A[i]) / B[i];
                break;
            case TransformKind::inverse_quadratic:
                if (A[i] < kDenominatorFloor)
                    throw DegenerateDenominator("inverse transform: numerator below floor");
                if (B[i] < kDenominatorFloor)
                    throw DegenerateDenominator("inverse transform: denominator below floor");
                aux[i] = std::sqrt(B[i]) / A[i];
                break;
            case TransformKind::am_gm:
                if (A[i] < kDenominatorFloor || B[i] < kDenominatorFloor)
                    throw DegenerateDenominator("am-gm transform: nonpositive ratio part");
                aux[i] = 1.0 / (2.0 * A[i] * B[i]);
                break;
            default:
                throw FpError("update_auxiliaries: unsupported transform kind");
        }
    }
    return aux;
}

double surrogate_value(TransformKind kind, const Vec& A, const Vec& B,
                       const Vec& aux, const Vec& weights) {
    require_same_size(A, B, "surrogate_value: A/B size mismatch");
    require_same_size(A, aux, "surrogate_value: aux size mismatch");
    require_same_size(A, weights, "surrogate_value: weight size mismatch");
    double total = 0.0;
    for (Eigen::Index i = 0; i < A.size(); ++i) {
        switch (kind) {
            case TransformKind::quadratic:
                total += weights[i] * (2.0 * aux[i] * std::sqrt(A[i]) - aux[i] * aux[i] * B[i]);
                break;
            case TransformKind::inverse_quadratic: {
                const double bracket =
                    2.0 * aux[i] * std::sqrt(B[i]) - aux[i] * aux[i] * A[i];
                if (bracket < kBracketFloor) return kNegInf;
                total -= weights[i] / bracket;
                break;
            }
            case TransformKind::am_gm:
                total -= weights[i] *
                         (aux[i] * A[i] * A[i] + 1.0 / (4.0 * aux[i] * B[i] * B[i]));
                break;
            default:
                throw FpError("surrogate_value: unsupported transform kind");
        }
    }
    return total;
}

InnerSolverFn default_inner_solver() {
    return [](const ScalarFn& f, const GradFn& grad, const ConstraintSet& set,
              const Vec& x0, const SolverConfig& config) {
        return projected_gradient_max(f, grad, set, x0, config.inner_tol,
                                      config.inner_max_iters)
            .x;
    };
}

// ---------------------------------------------------------------------------
// Dinkelbach
// ---------------------------------------------------------------------------

SolveResult dinkelbach_solve(const FPProblem& problem, const InnerSolverFn& inner,
                             const SolverConfig& config, std::optional<Vec> start) {
    problem.check_well_formed();
    config.check();
    if (problem.kind != ProblemKind::single)
        throw FpError("dinkelbach_solve expects a single-ratio problem");
    const RatioSpec& ratio = problem.ratios[0];
    const double w = problem.weights[0];

    SolveResult out;
    out.trace.variant = TransformKind::dinkelbach;
    out.trace.direction = Direction::maximize;
    if (ratio.curvature != Curvature::concave_convex)
        out.trace.warn("ratio not tagged concave-convex; global optimality not guaranteed");

    Stopwatch clock;
    Vec x = start ? *start : interior_point(problem.constraint, problem.dimension);
    x = project(problem.constraint, x);
    double prev_obj = evaluate_objective(problem, x);

    for (int it = 1; it <= config.max_iters; ++it) {
        const double y = prev_obj;  // w A(x)/B(x)
        const ScalarFn sub = [&](const Vec& v) {
            return w * ratio.numerator(v) - y * ratio.denominator(v);
        };
        const GradFn sub_grad = [&](const Vec& v) {
            return Vec(w * ratio.grad_numerator(v) - y * ratio.grad_denominator(v));
        };
        Vec x_next;
        try {
            x_next = inner(sub, sub_grad, problem.constraint, x, config);
        } catch (const FpError& e) {
            throw InnerSolverFailure(std::string("dinkelbach inner solve failed: ") + e.what());
        }
        // Never step downhill on the parametric subproblem; its value at the
        // previous iterate is exactly zero.
        if (sub(x_next) >= sub(x)) x = x_next;
        const double obj = evaluate_objective(problem, x);
        out.trace.records.push_back({it, obj, sub(x), std::abs(y), clock.ms()});
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

// ---------------------------------------------------------------------------
// Generalized Dinkelbach (max-min-ratios)
// ---------------------------------------------------------------------------

namespace {

// Terms F_i(x) = w_i A_i(x) - y B_i(x) for the parametric max-min subproblem.
struct MaxMinTerms {
    const FPProblem* problem;
    double y;

    void values(const Vec& x, Vec& F) const {
        const int n = problem->term_count();
        F.resize(n);
        for (int i = 0; i < n; ++i) {
            F[i] = problem->weights[i] * problem->ratios[i].numerator(x) -
                   y * problem->ratios[i].denominator(x);
        }
    }

    double min_value(const Vec& x) const {
        Vec F;
        values(x, F);
        return F.minCoeff();
    }

    // Smoothed minimum -mu log sum exp(-F_i/mu) and its gradient.
    double smoothed(const Vec& x, double mu) const {
        Vec F;
        values(x, F);
        const double m = (-F / mu).maxCoeff();
        double s = 0.0;
        for (Eigen::Index i = 0; i < F.size(); ++i) s += std::exp(-F[i] / mu - m);
        return -mu * (m + std::log(s));
    }

    Vec smoothed_grad(const Vec& x, double mu) const {
        Vec F;
        values(x, F);
        const double m = (-F / mu).maxCoeff();
        Vec soft(F.size());
        double s = 0.0;
        for (Eigen::Index i = 0; i < F.size(); ++i) {
            soft[i] = std::exp(-F[i] / mu - m);
            s += soft[i];
        }
        soft /= s;
        Vec g = Vec::Zero(x.size());
        for (Eigen::Index i = 0; i < F.size(); ++i) {
            g += soft[i] * (problem->weights[i] * problem->ratios[i].grad_numerator(x) -
                            y * problem->ratios[i].grad_denominator(x));
        }
        return g;
    }
};

}  // namespace

SolveResult maxmin_dinkelbach_solve(const FPProblem& problem,
                                    const InnerSolverFn& inner,
                                    const SolverConfig& config,
                                    std::optional<Vec> start) {
    problem.check_well_formed();
    config.check();
    if (problem.kind != ProblemKind::max_min)
        throw FpError("maxmin_dinkelbach_solve expects a max-min problem");

    SolveResult out;
    out.trace.variant = TransformKind::dinkelbach;
    out.trace.direction = Direction::maximize;
    for (const auto& r : problem.ratios)
        if (r.curvature != Curvature::concave_convex) {
            out.trace.warn("ratio not tagged concave-convex; global optimality not guaranteed");
            break;
        }

    Stopwatch clock;
    Vec x = start ? *start : interior_point(problem.constraint, problem.dimension);
    x = project(problem.constraint, x);
    double y = evaluate_objective(problem, x);

    for (int it = 1; it <= config.max_iters; ++it) {
        MaxMinTerms terms{&problem, y};
        const double scale = 1.0 + std::abs(terms.min_value(x));
        Vec x_trial = x;
        for (double mu_rel : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9}) {
            const double mu = mu_rel * scale;
            const ScalarFn f = [&terms, mu](const Vec& v) { return terms.smoothed(v, mu); };
            const GradFn g = [&terms, mu](const Vec& v) { return terms.smoothed_grad(v, mu); };
            try {
                x_trial = inner(f, g, problem.constraint, x_trial, config);
            } catch (const FpError& e) {
                throw InnerSolverFailure(std::string("max-min inner solve failed: ") + e.what());
            }
        }
        // Accept only if the exact parametric value did not regress; its value
        // at the current iterate is exactly zero, so acceptance preserves the
        // nondecreasing ratio sequence.
        const double sub_value = terms.min_value(x_trial);
        bool accepted = false;
        if (sub_value >= 0.0) {
            x = x_trial;
            accepted = true;
        }
        const double obj = evaluate_objective(problem, x);
        out.trace.records.push_back({it, obj, sub_value, std::abs(y), clock.ms()});
        if (std::abs(obj - y) <= config.obj_tol || !accepted) {
            y = obj;
            out.trace.status = SolveStatus::converged;
            break;
        }
        y = obj;
    }
    out.x = x;
    out.value = y;
    return out;
}

// ---------------------------------------------------------------------------
// Unified quadratic transform
// ---------------------------------------------------------------------------

namespace {

enum class Branch { plus_qt, minus_inverse, minus_am_gm };

struct UnifiedMachine {
    const FPProblem* problem;
    std::vector<Branch> branch;
    std::vector<OuterFunction> outer;  // effective outer per term
    AuxiliaryState aux;
    mutable long sentinel_hits = 0;

    static constexpr double kSqrtFloor = 1e-150;

    // Minus-branch auxiliaries need a positive numerator. When the ratio has
    // collapsed toward zero (a transmitter shut off, say) the term value is
    // still well defined, so the numerator is floored RELATIVE to the
    // denominator: any positive auxiliary keeps the minorant valid, and the
    // touch-point error of the clamp is below 1e-14 of the ratio.
    static constexpr double kRatioFloor = 1e-14;

    void refresh_aux(const Vec& A, const Vec& B) {
        const int n = problem->term_count();
        aux.y.resize(n);
        aux.y_tilde.resize(n);
        for (int i = 0; i < n; ++i) {
            switch (branch[i]) {
                case Branch::plus_qt:
                    if (A[i] < 0.0)
                        throw DegenerateDenominator("unified: negative plus-branch numerator");
                    aux.y[i] = std::sqrt(A[i]) / B[i];
                    aux.y_tilde[i] = 0.0;
                    break;
                case Branch::minus_inverse: {
                    const double a = std::max(A[i], kRatioFloor * B[i]);
                    aux.y_tilde[i] = std::sqrt(B[i]) / a;
                    aux.y[i] = 0.0;
                    break;
                }
                case Branch::minus_am_gm: {
                    const double a = std::max(A[i], kRatioFloor * B[i]);
                    aux.y_tilde[i] = 1.0 / (2.0 * a * B[i]);
                    aux.y[i] = 0.0;
                    break;
                }
            }
        }
    }

    double value(const Vec& x) const {
        double total = 0.0;
        for (int i = 0; i < problem->term_count(); ++i) {
            const double A = problem->ratios[i].numerator(x);
            const double B = problem->ratios[i].denominator(x);
            const double w = problem->weights[i];
            // Candidate points that leave an outer function's domain are
            // infeasible for the surrogate problem, not errors.
            try {
                switch (branch[i]) {
                    case Branch::plus_qt: {
                        if (A < 0.0) return mark_sentinel();
                        const double s =
                            2.0 * aux.y[i] * std::sqrt(A) - aux.y[i] * aux.y[i] * B;
                        total += w * outer_value(i, s);
                        break;
                    }
                    case Branch::minus_inverse: {
                        const double t =
                            2.0 * aux.y_tilde[i] * std::sqrt(std::max(B, 0.0)) -
                            aux.y_tilde[i] * aux.y_tilde[i] * A;
                        if (t < kBracketFloor) return mark_sentinel();
                        total += w * outer_value(i, 1.0 / t);
                        break;
                    }
                    case Branch::minus_am_gm: {
                        const double yt = aux.y_tilde[i];
                        total -= w * (yt * A * A + 1.0 / (4.0 * yt * B * B));
                        break;
                    }
                }
            } catch (const DomainError&) {
                return mark_sentinel();
            }
            if (!std::isfinite(total)) return kNegInf;
        }
        return total;
    }

    Vec gradient(const Vec& x) const {
        Vec g = Vec::Zero(x.size());
        for (int i = 0; i < problem->term_count(); ++i) {
            const RatioSpec& r = problem->ratios[i];
            const double A = r.numerator(x);
            const double B = r.denominator(x);
            const double w = problem->weights[i];
            switch (branch[i]) {
                case Branch::plus_qt: {
                    const double y = aux.y[i];
                    const double sqrtA = std::max(std::sqrt(std::max(A, 0.0)), kSqrtFloor);
                    const double s = 2.0 * y * sqrtA - y * y * B;
                    const double fd = outer_deriv(i, s);
                    g += (w * fd) * Vec(y / sqrtA * r.grad_numerator(x) -
                                        y * y * r.grad_denominator(x));
                    break;
                }
                case Branch::minus_inverse: {
                    const double yt = aux.y_tilde[i];
                    const double sqrtB = std::max(std::sqrt(std::max(B, 0.0)), kSqrtFloor);
                    const double t = 2.0 * yt * sqrtB - yt * yt * A;
                    if (t < kBracketFloor) continue;  // vetoed by value() anyway
                    const double fd = outer_deriv(i, 1.0 / t);
                    g += (-w * fd / (t * t)) * Vec(yt / sqrtB * r.grad_denominator(x) -
                                                   yt * yt * r.grad_numerator(x));
                    break;
                }
                case Branch::minus_am_gm: {
                    const double yt = aux.y_tilde[i];
                    g -= w * Vec(2.0 * yt * A * r.grad_numerator(x) -
                                 1.0 / (2.0 * yt * B * B * B) * r.grad_denominator(x));
                    break;
                }
            }
        }
        return g;
    }

private:
    double outer_value(int i, double s) const { return outer[i](s); }
    double outer_deriv(int i, double s) const { return outer[i].deriv(s); }
    double mark_sentinel() const {
        ++sentinel_hits;
        return kNegInf;
    }
};

}  // namespace

SolveResult unified_qt_solve(const FPProblem& problem, const InnerSolverFn& inner,
                             const SolverConfig& config, std::optional<Vec> start) {
    problem.check_well_formed();
    config.check();
    SolveResult out;
    out.trace.variant = TransformKind::unified;
    out.trace.direction = Direction::maximize;

    UnifiedMachine machine;
    machine.problem = &problem;
    const int n = problem.term_count();
    machine.branch.resize(n);
    machine.outer.resize(n);

    const bool want_am_gm = (config.variant == TransformKind::am_gm);
    for (int i = 0; i < n; ++i) {
        OuterFunction f;
        switch (problem.kind) {
            case ProblemKind::single:
            case ProblemKind::sum_max:
                f = OuterFunction::identity();
                break;
            case ProblemKind::sum_min:
                f = OuterFunction::negated_identity();
                break;
            case ProblemKind::log_ratio:
                f = OuterFunction::log1p();
                break;
            case ProblemKind::sum_of_functions:
                if (problem.outer.empty())
                    throw FpError("sum_of_functions problem without outer functions");
                f = problem.outer[i];
                break;
            default:
                throw FpError("unified_qt_solve: unsupported problem kind");
        }
        machine.outer[i] = f;
        if (f.monotonicity == Monotonicity::nondecreasing) {
            machine.branch[i] = Branch::plus_qt;
            if (problem.ratios[i].curvature != Curvature::concave_convex)
                out.trace.warn("plus-branch ratio not concave-convex; convergence not guaranteed");
        } else {
            const bool pure_negation = (f.kind == OuterKind::negated_identity);
            if (want_am_gm && pure_negation) {
                machine.branch[i] = Branch::minus_am_gm;
                // AM-GM folds the negation into the surrogate itself.
                machine.outer[i] = OuterFunction::identity();
            } else {
                if (want_am_gm && !pure_negation)
                    out.trace.warn("am-gm variant applies only to plain ratio minimization; using inverse transform");
                machine.branch[i] = Branch::minus_inverse;
            }
            if (problem.ratios[i].curvature != Curvature::convex_concave)
                out.trace.warn("minus-branch ratio not convex-concave; convergence not guaranteed");
        }
    }

    Stopwatch clock;
    Vec x = start ? *start : interior_point(problem.constraint, problem.dimension);
    x = project(problem.constraint, x);
    double prev_obj = evaluate_objective(problem, x);

    const ScalarFn g_value = [&machine](const Vec& v) { return machine.value(v); };
    const GradFn g_grad = [&machine](const Vec& v) { return machine.gradient(v); };

    for (int it = 1; it <= config.max_iters; ++it) {
        Vec A, B;
        evaluate_ratios(problem, x, A, B);
        machine.refresh_aux(A, B);
        try {
            x = inner(g_value, g_grad, problem.constraint, x, config);
        } catch (const FpError& e) {
            throw InnerSolverFailure(std::string("unified inner solve failed: ") + e.what());
        }
        const double obj = evaluate_objective(problem, x);
        out.trace.records.push_back(
            {it, obj, machine.value(x), machine.aux.stacked_norm(), clock.ms()});
        if (machine.sentinel_hits > config.max_iters) {
            out.trace.status = SolveStatus::degenerate;
            break;
        }
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

// ---------------------------------------------------------------------------
// Charnes-Cooper lift
// ---------------------------------------------------------------------------

LiftedSingleRatio charnes_cooper_lift(const FPProblem& problem) {
    problem.check_well_formed();
    if (problem.kind != ProblemKind::single)
        throw FpError("charnes_cooper_lift expects a single-ratio problem");
    const RatioSpec ratio = problem.ratios[0];
    const double w = problem.weights[0];

    LiftedSingleRatio lifted;
    lifted.objective = [ratio, w](double z, const Vec& q) {
        if (z <= 0.0) throw DomainError("lifted objective: z must be positive");
        return z * w * ratio.numerator(q / z);
    };
    lifted.constraint = [ratio](double z, const Vec& q) {
        if (z <= 0.0) throw DomainError("lifted constraint: z must be positive");
        return z * ratio.denominator(q / z);
    };
    lifted.lift = [ratio](const Vec& x) {
        const double b = ratio.denominator(x);
        if (b < kDenominatorFloor)
            throw DegenerateDenominator("lift: denominator below floor");
        return std::make_pair(1.0 / b, Vec(x / b));
    };
    lifted.recover = [](double z, const Vec& q) {
        if (z <= 0.0) throw DomainError("recover: z must be positive");
        return Vec(q / z);
    };
    return lifted;
}

}  // namespace fp
