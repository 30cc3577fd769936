#include "fp/inner.hpp"

#include <cmath>
#include <limits>
#include <thread>

#include "fp/objective.hpp"

namespace fp {

namespace {
constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-18;
}  // namespace

InnerResult projected_gradient_max(const ScalarFn& f, const GradFn& grad,
                                   const ConstraintSet& set, const Vec& x0,
                                   double tol, int max_iters, bool strict) {
    InnerResult out;
    Vec x = project(set, x0);
    double fx = f(x);
    if (!std::isfinite(fx))
        throw InnerSolverFailure("projected gradient: start value not finite");
    double step = 1.0;
    int it = 0;
    for (; it < max_iters; ++it) {
        const Vec g = grad(x);
        const Vec probe = project(set, x + g);
        out.residual = (probe - x).norm();
        if (out.residual <= tol) {
            out.converged = true;
            break;
        }
        // Backtracking from a step that grows after successful iterations.
        double t = std::min(step * 2.0, 1e12);
        bool accepted = false;
        while (t >= kMinStep) {
            const Vec cand = project(set, x + t * g);
            const Vec move = cand - x;
            const double predicted = g.dot(move);
            if (predicted <= 0.0) break;  // stationary for this step size
            const double fc = f(cand);
            if (std::isfinite(fc) && fc >= fx + kArmijo * predicted) {
                x = cand;
                fx = fc;
                step = t;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            // No ascent available along the gradient; treat as converged if the
            // residual is already small in relative terms.
            break;
        }
    }
    out.x = x;
    out.value = fx;
    out.iterations = it;
    if (!out.converged) {
        const Vec g = grad(x);
        out.residual = (project(set, x + g) - x).norm();
        out.converged = out.residual <= tol;
    }
    if (strict && !out.converged)
        throw MaxItersError("projected gradient: residual target missed");
    return out;
}

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double tol) {
    if (!(hi >= lo)) throw FpError("golden section: empty interval");
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    // Endpoints can dominate when f is monotone on [lo, hi].
    double best_x = 0.5 * (a + b);
    double best_v = f(best_x);
    if (f(lo) > best_v) { best_v = f(lo); best_x = lo; }
    if (f(hi) > best_v) { best_x = hi; }
    return best_x;
}

Mat assignment_argmax(const Mat& scores) {
    Mat out = Mat::Zero(scores.rows(), scores.cols());
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        Eigen::Index best = 0;
        for (Eigen::Index k = 1; k < scores.cols(); ++k)
            if (scores(i, k) > scores(i, best)) best = k;
        out(i, best) = 1.0;
    }
    return out;
}

namespace {

struct SweepBest {
    double value = -std::numeric_limits<double>::infinity();
    std::int64_t index = -1;
};

// Lower flat index wins ties so the sweep order never matters.
void merge_best(SweepBest& into, const SweepBest& other) {
    if (other.index < 0) return;
    if (other.value > into.value ||
        (other.value == into.value && other.index < into.index))
        into = other;
}

}  // namespace

OracleResult grid_maximize(const ScalarFn& f, const Vec& lower, const Vec& upper,
                           double resolution) {
    const int dim = static_cast<int>(lower.size());
    if (dim < 1 || dim > 3 || upper.size() != dim)
        throw BudgetExceeded("grid oracle supports dimensions 1..3");
    if (resolution <= 0.0) throw FpError("grid oracle: resolution must be positive");

    std::int64_t counts[3] = {1, 1, 1};
    std::int64_t total = 1;
    for (int d = 0; d < dim; ++d) {
        if (upper[d] < lower[d]) throw FpError("grid oracle: empty bounds");
        counts[d] = static_cast<std::int64_t>(std::floor((upper[d] - lower[d]) / resolution + 1e-9)) + 1;
        total *= counts[d];
    }

    auto point_at = [&](std::int64_t flat) {
        Vec x(dim);
        std::int64_t rem = flat;
        for (int d = 0; d < dim; ++d) {
            const std::int64_t idx = rem % counts[d];
            rem /= counts[d];
            x[d] = std::min(lower[d] + resolution * static_cast<double>(idx), upper[d]);
        }
        return x;
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int workers = static_cast<int>(std::min<std::int64_t>(hw, std::max<std::int64_t>(1, total / 4096)));
    std::vector<SweepBest> partial(workers);
    auto run = [&](int w) {
        SweepBest best;
        const std::int64_t begin = total * w / workers;
        const std::int64_t end = total * (w + 1) / workers;
        Vec x(dim);
        for (std::int64_t flat = begin; flat < end; ++flat) {
            std::int64_t rem = flat;
            for (int d = 0; d < dim; ++d) {
                const std::int64_t idx = rem % counts[d];
                rem /= counts[d];
                x[d] = std::min(lower[d] + resolution * static_cast<double>(idx), upper[d]);
            }
            const double v = f(x);
            if (v > best.value || (v == best.value && flat < best.index)) {
                best.value = v;
                best.index = flat;
            }
        }
        partial[w] = best;
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    SweepBest best;
    for (const auto& p : partial) merge_best(best, p);

    OracleResult out;
    out.best_x = point_at(best.index);
    out.best_value = f(out.best_x);
    out.evaluations = total;
    return out;
}

OracleResult grid_oracle(const FPProblem& problem, double resolution,
                         const Vec& lower, const Vec& upper) {
    return grid_maximize(
        [&problem](const Vec& x) { return evaluate_objective(problem, x); }, lower,
        upper, resolution);
}

OracleResult enumerate_assignments(int points, int clusters,
                                   const std::function<double(const Mat&)>& value) {
    if (points < 1 || clusters < 1) throw ShapeMismatch("enumeration: bad shape");
    const double combos = std::pow(static_cast<double>(clusters), points);
    if (combos > static_cast<double>(1 << 20))
        throw BudgetExceeded("enumeration: K^N exceeds 2^20");
    const std::int64_t total = static_cast<std::int64_t>(combos);

    std::vector<int> digits(points, 0);
    Mat assignment = Mat::Zero(points, clusters);
    for (int i = 0; i < points; ++i) assignment(i, 0) = 1.0;

    OracleResult out;
    out.best_value = -std::numeric_limits<double>::infinity();
    for (std::int64_t flat = 0; flat < total; ++flat) {
        const double v = value(assignment);
        ++out.evaluations;
        if (v > out.best_value) {
            out.best_value = v;
            out.best_x = Eigen::Map<const Vec>(assignment.data(), assignment.size());
        }
        // Advance the base-K counter.
        for (int i = 0; i < points; ++i) {
            assignment(i, digits[i]) = 0.0;
            digits[i] = (digits[i] + 1) % clusters;
            assignment(i, digits[i]) = 1.0;
            if (digits[i] != 0) break;
        }
    }
    return out;
}

OracleResult enumerate_oracle(const FPProblem& problem) {
    if (problem.constraint.kind != SetKind::discrete_assignment)
        throw UnsupportedSet("enumerate oracle needs a discrete-assignment set");
    const int n = problem.constraint.rows;
    const int k = problem.constraint.cols;
    return enumerate_assignments(n, k, [&](const Mat& a) {
        const Vec x = Eigen::Map<const Vec>(a.data(), a.size());
        try {
            return evaluate_objective(problem, x);
        } catch (const DegenerateDenominator&) {
            // Assignments that zero out a denominator (an empty cluster) are
            // outside the oracle's feasible sweep.
            return -std::numeric_limits<double>::infinity();
        }
    });
}

}  // namespace fp
