#include "fp/apps/svm.hpp"

#include <cmath>

#include "fp/scalar_transforms.hpp"

namespace fp {

namespace {

constexpr double kNormEps = 1e-9;  // smooths ||w|| away from w = 0

void check_data(const Mat& points, const std::vector<int>& labels) {
    if (points.rows() < 2) throw FpError("svm: need at least two points");
    if (static_cast<Eigen::Index>(labels.size()) != points.rows())
        throw ShapeMismatch("svm: label count mismatch");
    bool pos = false, neg = false;
    for (int t : labels) {
        if (t == 1) pos = true;
        else if (t == -1) neg = true;
        else throw FpError("svm: labels must be +1/-1");
    }
    if (!pos || !neg) throw NotSeparable("svm: both classes required");
}

// Capped perceptron; returns a separating (w, b) or throws NotSeparable.
// Doubles as the starting point of the Dinkelbach iteration.
Vec perceptron_start(const Mat& points, const std::vector<int>& labels) {
    const Eigen::Index n = points.rows();
    const Eigen::Index d = points.cols();
    double scale = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, points.row(i).norm());
    if (scale <= 0.0) scale = 1.0;

    Vec w = Vec::Zero(d);
    double b = 0.0;
    const long cap = 200000;
    for (long pass = 0; pass < cap; ++pass) {
        bool updated = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double t = labels[i];
            if (t * (w.dot(points.row(i)) + b) <= 0.0) {
                w += (t / scale) * points.row(i).transpose();
                b += t / scale;
                updated = true;
            }
        }
        if (!updated) {
            Vec z(d + 1);
            z.head(d) = w;
            z[d] = b;
            return z;
        }
    }
    throw NotSeparable("svm: perceptron pre-check found no separating hyperplane");
}

}  // namespace

double svm_margin(const Mat& points, const std::vector<int>& labels, const Vec& w,
                  double bias) {
    const double wn = w.norm();
    if (wn <= 0.0) throw FpError("svm: zero normal vector");
    double m = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < points.rows(); ++i)
        m = std::min(m, labels[i] * (w.dot(points.row(i)) + bias) / wn);
    return m;
}

FPProblem build_svm_problem(const Mat& points, const std::vector<int>& labels) {
    check_data(points, labels);
    const Eigen::Index n = points.rows();
    const Eigen::Index d = points.cols();

    FPProblem problem;
    problem.kind = ProblemKind::max_min;
    problem.dimension = static_cast<int>(d + 1);  // x = (w, b)
    problem.weights = Vec::Ones(n);
    // The margin is scale invariant, so optimizing over a ball loses nothing;
    // the ball keeps the parametric subproblems bounded.
    problem.constraint = ConstraintSet::ball(1.0);

    for (Eigen::Index i = 0; i < n; ++i) {
        const Vec xi = points.row(i).transpose();
        const double t = labels[i];
        RatioSpec r;
        r.numerator = [xi, t, d](const Vec& z) {
            return t * (z.head(d).dot(xi) + z[d]);
        };
        r.denominator = [d](const Vec& z) {
            return std::sqrt(z.head(d).squaredNorm() + kNormEps * kNormEps);
        };
        r.grad_numerator = [xi, t, d](const Vec&) {
            Vec g(d + 1);
            g.head(d) = t * xi;
            g[d] = t;
            return g;
        };
        r.grad_denominator = [d](const Vec& z) {
            const double nw = std::sqrt(z.head(d).squaredNorm() + kNormEps * kNormEps);
            Vec g(d + 1);
            g.head(d) = z.head(d) / nw;
            g[d] = 0.0;
            return g;
        };
        r.curvature = Curvature::concave_convex;
        problem.ratios.push_back(std::move(r));
    }
    return problem;
}

SvmResult solve_svm_margin(const Mat& points, const std::vector<int>& labels,
                           const SolverConfig& config) {
    check_data(points, labels);
    const Eigen::Index d = points.cols();
    Vec start = perceptron_start(points, labels);
    start *= 0.9 / std::max(start.norm(), 1e-12);

    const FPProblem problem = build_svm_problem(points, labels);
    SolveResult r =
        maxmin_dinkelbach_solve(problem, default_inner_solver(), config, start);

    const Vec w_raw = r.x.head(d);
    const double wn = w_raw.norm();
    if (wn <= 1e-12) throw NotSeparable("svm: solver collapsed to zero normal");

    SvmResult out;
    out.w = w_raw / wn;
    out.bias = r.x[d] / wn;
    out.margin = svm_margin(points, labels, out.w, out.bias);
    out.trace = std::move(r.trace);
    if (out.margin <= 0.0) throw NotSeparable("svm: nonpositive optimized margin");
    return out;
}

}  // namespace fp
