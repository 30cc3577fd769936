#include "fp/apps/clustering.hpp"

#include <chrono>
#include <cmath>

#include "fp/inner.hpp"
#include "fp/matrix_transforms.hpp"
#include "fp/rng.hpp"

namespace fp {

double ncut_value(const GraphInstance& graph, const Mat& assignment) {
    graph.check_well_formed();
    const int n = graph.points();
    const int K = graph.clusters;
    if (assignment.rows() != n || assignment.cols() != K)
        throw ShapeMismatch("ncut: assignment shape");
    const Vec d = graph.degrees();
    double total = 0.0;
    for (int k = 0; k < K; ++k) {
        const Vec xk = assignment.col(k);
        const double vol = d.dot(xk);
        if (vol <= 0.0) continue;  // empty cluster cuts nothing
        const double assoc = xk.dot(graph.W * xk);
        total += (vol - assoc) / vol;
    }
    return total;
}

NcutResult solve_ncut_fpc(const GraphInstance& graph, const Mat& init,
                          const SolverConfig& config) {
    graph.check_well_formed();
    config.check();
    const int n = graph.points();
    const int K = graph.clusters;
    if (init.rows() != n || init.cols() != K)
        throw ShapeMismatch("fpc: init assignment shape");
    for (int i = 0; i < n; ++i)
        if (std::abs(init.row(i).sum() - 1.0) > 1e-12)
            throw FpError("fpc: init rows must sum to one");

    const Mat w_sqrt = symmetric_sqrt(graph.W);
    const Vec d = graph.degrees();
    CounterRng rng(config.seed);

    NcutResult out;
    out.trace.variant = TransformKind::matrix_basic;
    out.trace.direction = Direction::minimize;

    const auto t0 = std::chrono::steady_clock::now();
    Mat x = init;
    Mat y(n, K);
    double prev = ncut_value(graph, x);

    for (int it = 1; it <= config.max_iters; ++it) {
        bool had_empty = false;
        for (int k = 0; k < K; ++k) {
            const double vol = d.dot(x.col(k));
            if (vol <= 0.0) {
                // Reseed this cluster's auxiliary direction and keep going.
                Vec r = rng.normal_vector(n);
                y.col(k) = r / std::max(r.norm(), 1e-12);
                ++out.empty_cluster_restarts;
                had_empty = true;
            } else {
                y.col(k) = (w_sqrt * x.col(k)) / vol;
            }
        }

        Mat scores(n, K);
        for (int k = 0; k < K; ++k)
            scores.col(k) = 2.0 * (w_sqrt * y.col(k)) - y.col(k).squaredNorm() * d;
        const Mat x_next = assignment_argmax(scores);

        const bool stable = (x_next - x).cwiseAbs().maxCoeff() < 0.5 && !had_empty;
        x = x_next;
        const double cut = ncut_value(graph, x);
        double surrogate = 0.0;  // association surrogate sum_k 2 y'W^1/2 x - vol ||y||^2
        for (int k = 0; k < K; ++k)
            surrogate += 2.0 * y.col(k).dot(w_sqrt * x.col(k)) -
                         y.col(k).squaredNorm() * d.dot(x.col(k));
        const double elapsed =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        out.trace.records.push_back({it, cut, surrogate, y.norm(), elapsed});
        if (stable) {
            out.trace.status = SolveStatus::converged;
            prev = cut;
            break;
        }
        prev = cut;
    }
    out.assignment = x;
    out.ncut = prev;
    return out;
}

FPProblem build_ncut_problem(const GraphInstance& graph) {
    graph.check_well_formed();
    const int n = graph.points();
    const int K = graph.clusters;
    const Mat W = graph.W;
    const Vec d = graph.degrees();

    FPProblem problem;
    problem.kind = ProblemKind::sum_max;
    problem.dimension = n * K;
    problem.weights = Vec::Ones(K);
    problem.constraint = ConstraintSet::assignment(n, K);

    for (int k = 0; k < K; ++k) {
        RatioSpec r;
        r.numerator = [W, n, k](const Vec& x) {
            const Vec xk = x.segment(static_cast<Eigen::Index>(k) * n, n);
            return xk.dot(W * xk);
        };
        r.denominator = [d, n, k](const Vec& x) {
            return d.dot(x.segment(static_cast<Eigen::Index>(k) * n, n));
        };
        r.grad_numerator = [W, n, K, k](const Vec& x) {
            Vec g = Vec::Zero(static_cast<Eigen::Index>(n) * K);
            const Vec xk = x.segment(static_cast<Eigen::Index>(k) * n, n);
            g.segment(static_cast<Eigen::Index>(k) * n, n) = 2.0 * (W * xk);
            return g;
        };
        r.grad_denominator = [d, n, K, k](const Vec&) {
            Vec g = Vec::Zero(static_cast<Eigen::Index>(n) * K);
            g.segment(static_cast<Eigen::Index>(k) * n, n) = d;
            return g;
        };
        r.curvature = Curvature::generic;  // discrete feasible set
        problem.ratios.push_back(std::move(r));
    }
    return problem;
}

GraphInstance planted_two_block(int points, double intra, double inter,
                                std::uint64_t seed) {
    if (points < 2) throw FpError("planted graph: need at least two points");
    if (!(intra > 0.0 && intra <= 1.0 && inter > 0.0 && inter < intra))
        throw FpError("planted graph: need 0 < inter < intra <= 1");
    // Gaussian-kernel similarities from planted 2-D features: the feature
    // spread reproduces the requested intra level in expectation and the
    // center separation the inter level.
    const double sigma_f = std::sqrt(-std::log(intra) / 4.0);
    const double delta = std::sqrt(std::max(-std::log(inter) + 4.0 * sigma_f * sigma_f, 0.0));

    CounterRng rng(seed);
    Mat features(points, 2);
    const int half = points / 2;
    for (int i = 0; i < points; ++i) {
        const double cx = (i < half) ? 0.0 : delta;
        features(i, 0) = cx + sigma_f * rng.normal();
        features(i, 1) = sigma_f * rng.normal();
    }

    GraphInstance g;
    g.seed = seed;
    g.clusters = 2;
    g.W.resize(points, points);
    for (int i = 0; i < points; ++i)
        for (int j = 0; j < points; ++j) {
            const double dist2 = (features.row(i) - features.row(j)).squaredNorm();
            g.W(i, j) = std::exp(-dist2);
        }
    return g;
}

}  // namespace fp
