#include "fp/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fp {

namespace {

// Projection onto {v >= 0, sum v = 1} by the sort-and-threshold rule.
Vec project_simplex(const Vec& v) {
    const Eigen::Index n = v.size();
    std::vector<double> u(v.data(), v.data() + n);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cumulative = 0.0;
    double theta = 0.0;
    int support = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        cumulative += u[j];
        const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (u[j] - t > 0.0) {
            theta = t;
            support = static_cast<int>(j + 1);
        }
    }
    (void)support;
    return (v.array() - theta).max(0.0);
}

Vec project_assignment(const ConstraintSet& set, const Vec& point) {
    if (point.size() != static_cast<Eigen::Index>(set.rows) * set.cols)
        throw ShapeMismatch("assignment projection: size mismatch");
    Eigen::Map<const Mat> scores(point.data(), set.rows, set.cols);
    Mat out = Mat::Zero(set.rows, set.cols);
    for (int i = 0; i < set.rows; ++i) {
        int best = 0;
        for (int k = 1; k < set.cols; ++k)
            if (scores(i, k) > scores(i, best)) best = k;
        out(i, best) = 1.0;
    }
    return Eigen::Map<const Vec>(out.data(), out.size());
}

}  // namespace

Vec project(const ConstraintSet& set, const Vec& point) {
    switch (set.kind) {
        case SetKind::unconstrained:
            return point;
        case SetKind::box: {
            if (point.size() != set.lower.size())
                throw ShapeMismatch("box projection: size mismatch");
            return point.cwiseMax(set.lower).cwiseMin(set.upper);
        }
        case SetKind::euclidean_ball: {
            const double n = point.norm();
            if (n <= set.radius) return point;
            return point * (set.radius / n);
        }
        case SetKind::per_column_ball: {
            if (point.size() != static_cast<Eigen::Index>(set.rows) * set.cols)
                throw ShapeMismatch("per-column projection: size mismatch");
            Mat m = Eigen::Map<const Mat>(point.data(), set.rows, set.cols);
            for (int j = 0; j < set.cols; ++j) {
                const double n = m.col(j).norm();
                if (n > set.radius) m.col(j) *= set.radius / n;
            }
            return Eigen::Map<const Vec>(m.data(), m.size());
        }
        case SetKind::simplex:
            return project_simplex(point);
        case SetKind::discrete_assignment:
            return project_assignment(set, point);
    }
    throw UnsupportedSet("unknown set kind");
}

CVec project_complex(const ConstraintSet& set, const CVec& point) {
    switch (set.kind) {
        case SetKind::unconstrained:
            return point;
        case SetKind::euclidean_ball: {
            const double n = point.norm();
            if (n <= set.radius) return point;
            return point * (set.radius / n);
        }
        default:
            throw UnsupportedSet("complex projection: set kind not supported");
    }
}

bool contains(const ConstraintSet& set, const Vec& point, double tol) {
    return (project(set, point) - point).norm() <= tol;
}

Vec interior_point(const ConstraintSet& set, int dimension) {
    switch (set.kind) {
        case SetKind::unconstrained:
            return Vec::Zero(dimension);
        case SetKind::box:
            return 0.5 * (set.lower + set.upper);
        case SetKind::euclidean_ball:
            return Vec::Zero(dimension);
        case SetKind::per_column_ball:
            return Vec::Zero(static_cast<Eigen::Index>(set.rows) * set.cols);
        case SetKind::simplex:
            return Vec::Constant(set.rows, 1.0 / set.rows);
        case SetKind::discrete_assignment: {
            Mat a = Mat::Zero(set.rows, set.cols);
            for (int i = 0; i < set.rows; ++i) a(i, i % set.cols) = 1.0;
            return Eigen::Map<const Vec>(a.data(), a.size());
        }
    }
    throw UnsupportedSet("unknown set kind");
}

Vec sample_point(const ConstraintSet& set, int dimension, CounterRng& rng) {
    switch (set.kind) {
        case SetKind::unconstrained:
            return rng.normal_vector(dimension);
        case SetKind::box: {
            Vec v(set.lower.size());
            for (Eigen::Index i = 0; i < v.size(); ++i)
                v[i] = rng.uniform(set.lower[i], set.upper[i]);
            return v;
        }
        case SetKind::euclidean_ball: {
            Vec dir = rng.normal_vector(dimension);
            const double n = dir.norm();
            if (n < 1e-300) return Vec::Zero(dimension);
            const double r = set.radius * std::pow(rng.next_double(), 1.0 / dimension);
            return dir * (r / n);
        }
        case SetKind::per_column_ball: {
            Mat m(set.rows, set.cols);
            for (int j = 0; j < set.cols; ++j) {
                Vec col = rng.normal_vector(set.rows);
                const double n = std::max(col.norm(), 1e-300);
                const double r = set.radius * std::pow(rng.next_double(), 1.0 / set.rows);
                m.col(j) = col * (r / n);
            }
            return Eigen::Map<const Vec>(m.data(), m.size());
        }
        case SetKind::simplex: {
            Vec v(set.rows);
            for (Eigen::Index i = 0; i < v.size(); ++i)
                v[i] = -std::log(1.0 - rng.next_double());
            return v / v.sum();
        }
        case SetKind::discrete_assignment: {
            Mat a = Mat::Zero(set.rows, set.cols);
            for (int i = 0; i < set.rows; ++i)
                a(i, static_cast<int>(rng.below(set.cols))) = 1.0;
            return Eigen::Map<const Vec>(a.data(), a.size());
        }
    }
    throw UnsupportedSet("unknown set kind");
}

}  // namespace fp
