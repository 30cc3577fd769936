#pragma once

#include "fp/types.hpp"

namespace fp {

// Central finite differences with step 1e-6 * (1 + |x_i|) per coordinate.
// Testing fallback for problems supplied without analytic gradients; the
// solvers themselves always consume analytic gradients.
inline Vec finite_difference_gradient(const ScalarFn& f, const Vec& x) {
    Vec g(x.size());
    Vec xp = x, xm = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double h = 1e-6 * (1.0 + std::abs(x[i]));
        xp[i] = x[i] + h;
        xm[i] = x[i] - h;
        g[i] = (f(xp) - f(xm)) / (2.0 * h);
        xp[i] = x[i];
        xm[i] = x[i];
    }
    return g;
}

inline GradFn finite_difference_gradient_fn(ScalarFn f) {
    return [f = std::move(f)](const Vec& x) { return finite_difference_gradient(f, x); };
}

// Second difference of f along direction d at x: f(x+hd) - 2f(x) + f(x-hd).
// Sign probes curvature (<= 0 concave direction, >= 0 convex direction).
inline double second_difference(const ScalarFn& f, const Vec& x, const Vec& d, double h) {
    return f(x + h * d) - 2.0 * f(x) + f(x - h * d);
}

}  // namespace fp
