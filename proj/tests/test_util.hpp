#pragma once

// Shared builders for the test suites: small random problems with known
// structure, independent finite-difference checks, and simple oracles.

#include <vector>

#include "fp/numdiff.hpp"
#include "fp/rng.hpp"
#include "fp/types.hpp"

namespace fp::test {

// Ratio with positive affine numerator and denominator on the box
// [0.1, 1]^dim: a(x) = a0 + a.x, b(x) = b0 + b.x with positive coefficients.
inline RatioSpec positive_affine_ratio(CounterRng& rng, int dim) {
    const Vec a = rng.uniform_vector(dim, 0.2, 1.5);
    const Vec b = rng.uniform_vector(dim, 0.2, 1.5);
    const double a0 = rng.uniform(0.1, 1.0);
    const double b0 = rng.uniform(0.3, 1.2);
    RatioSpec r;
    r.numerator = [a, a0](const Vec& x) { return a0 + a.dot(x); };
    r.denominator = [b, b0](const Vec& x) { return b0 + b.dot(x); };
    r.grad_numerator = [a](const Vec&) { return a; };
    r.grad_denominator = [b](const Vec&) { return b; };
    r.curvature = Curvature::concave_convex;
    return r;
}

// Concave quadratic numerator over convex quadratic denominator, both kept
// positive on the box [0, 1]^dim.
inline RatioSpec concave_convex_ratio(CounterRng& rng, int dim) {
    const Vec center_a = rng.uniform_vector(dim, 0.0, 1.0);
    const Vec center_b = rng.uniform_vector(dim, 0.0, 1.0);
    const Vec qa = rng.uniform_vector(dim, 0.2, 1.0);
    const Vec qb = rng.uniform_vector(dim, 0.2, 1.0);
    const double lift = 2.0 + rng.uniform(0.0, 2.0);
    RatioSpec r;
    r.numerator = [center_a, qa, lift](const Vec& x) {
        const Vec d = x - center_a;
        return lift - 0.5 * d.cwiseProduct(qa).dot(d);
    };
    r.denominator = [center_b, qb](const Vec& x) {
        const Vec d = x - center_b;
        return 0.5 + 0.5 * d.cwiseProduct(qb).dot(d);
    };
    r.grad_numerator = [center_a, qa](const Vec& x) {
        return Vec(-(x - center_a).cwiseProduct(qa));
    };
    r.grad_denominator = [center_b, qb](const Vec& x) {
        return Vec((x - center_b).cwiseProduct(qb));
    };
    r.curvature = Curvature::concave_convex;
    return r;
}

inline FPProblem single_ratio_problem(RatioSpec ratio, ConstraintSet set, int dim) {
    FPProblem p;
    p.kind = ProblemKind::single;
    p.ratios.push_back(std::move(ratio));
    p.weights = Vec::Ones(1);
    p.constraint = std::move(set);
    p.dimension = dim;
    return p;
}

inline Vec fd_check_gradient(const ScalarFn& f, const GradFn& g, const Vec& x) {
    return finite_difference_gradient(f, x) - g(x);
}

}  // namespace fp::test
