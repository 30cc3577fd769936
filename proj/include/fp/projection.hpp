#pragma once

#include "fp/rng.hpp"
#include "fp/types.hpp"

namespace fp {

// Euclidean projection onto the set. Idempotent and non-expansive for the
// convex kinds; for discrete assignments it is the row-wise nearest vertex
// (row argmax, ties to the lowest index).
Vec project(const ConstraintSet& set, const Vec& point);

// Complex block projection; supports unconstrained and euclidean_ball.
CVec project_complex(const ConstraintSet& set, const CVec& point);

bool contains(const ConstraintSet& set, const Vec& point, double tol = 1e-9);

// A deterministic feasible starting point (box midpoint, ball center, ...).
Vec interior_point(const ConstraintSet& set, int dimension);

// Uniform-ish feasible sample for validators and property tests.
Vec sample_point(const ConstraintSet& set, int dimension, CounterRng& rng);

}  // namespace fp
