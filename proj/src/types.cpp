#include "fp/types.hpp"

#include <cmath>
#include <sstream>

namespace fp {

double OuterFunction::operator()(double r) const {
    switch (kind) {
        case OuterKind::identity: return r;
        case OuterKind::log1p:
            if (r <= -1.0) throw DomainError("log1p outer: argument <= -1");
            return std::log1p(r);
        case OuterKind::log_one_minus:
            if (r >= 1.0) throw DomainError("log(1-r) outer: argument >= 1");
            return std::log1p(-r);
        case OuterKind::negated_identity: return -r;
        case OuterKind::custom: return evaluator(r);
    }
    throw FpError("bad OuterKind");
}

double OuterFunction::deriv(double r) const {
    switch (kind) {
        case OuterKind::identity: return 1.0;
        case OuterKind::log1p:
            if (r <= -1.0) throw DomainError("log1p outer: argument <= -1");
            return 1.0 / (1.0 + r);
        case OuterKind::log_one_minus:
            if (r >= 1.0) throw DomainError("log(1-r) outer: argument >= 1");
            return -1.0 / (1.0 - r);
        case OuterKind::negated_identity: return -1.0;
        case OuterKind::custom: return derivative(r);
    }
    throw FpError("bad OuterKind");
}

OuterFunction OuterFunction::identity() {
    return {OuterKind::identity, Monotonicity::nondecreasing, {}, {}};
}
OuterFunction OuterFunction::log1p() {
    return {OuterKind::log1p, Monotonicity::nondecreasing, {}, {}};
}
OuterFunction OuterFunction::log_one_minus() {
    return {OuterKind::log_one_minus, Monotonicity::nonincreasing, {}, {}};
}
OuterFunction OuterFunction::negated_identity() {
    return {OuterKind::negated_identity, Monotonicity::nonincreasing, {}, {}};
}
OuterFunction OuterFunction::custom(std::function<double(double)> f,
                                    std::function<double(double)> df,
                                    Monotonicity mono) {
    OuterFunction out;
    out.kind = OuterKind::custom;
    out.monotonicity = mono;
    out.evaluator = std::move(f);
    out.derivative = std::move(df);
    return out;
}

ConstraintSet ConstraintSet::none() { return {}; }

ConstraintSet ConstraintSet::box_set(Vec lower, Vec upper) {
    if (lower.size() != upper.size()) throw ShapeMismatch("box bounds size mismatch");
    if ((lower.array() > upper.array()).any())
        throw FpError("box: lower bound exceeds upper bound");
    ConstraintSet s;
    s.kind = SetKind::box;
    s.lower = std::move(lower);
    s.upper = std::move(upper);
    return s;
}

ConstraintSet ConstraintSet::ball(double radius) {
    if (radius <= 0.0) throw FpError("ball: radius must be positive");
    ConstraintSet s;
    s.kind = SetKind::euclidean_ball;
    s.radius = radius;
    return s;
}

ConstraintSet ConstraintSet::per_column(double radius, int rows, int cols) {
    if (radius <= 0.0) throw FpError("per-column ball: radius must be positive");
    if (rows < 1 || cols < 1) throw ShapeMismatch("per-column ball: bad shape");
    ConstraintSet s;
    s.kind = SetKind::per_column_ball;
    s.radius = radius;
    s.rows = rows;
    s.cols = cols;
    return s;
}

ConstraintSet ConstraintSet::assignment(int points, int clusters) {
    if (points < 1 || clusters < 1) throw ShapeMismatch("assignment: bad shape");
    ConstraintSet s;
    s.kind = SetKind::discrete_assignment;
    s.rows = points;
    s.cols = clusters;
    return s;
}

ConstraintSet ConstraintSet::simplex_set(int dim) {
    if (dim < 1) throw ShapeMismatch("simplex: bad dimension");
    ConstraintSet s;
    s.kind = SetKind::simplex;
    s.rows = dim;
    return s;
}

void FPProblem::check_well_formed() const {
    const int n = term_count();
    if (n == 0) throw FpError("problem has no ratio terms");
    if (weights.size() != n) throw ShapeMismatch("weights size != ratio count");
    if ((weights.array() <= 0.0).any()) throw FpError("weights must be strictly positive");
    if (!outer.empty() && static_cast<int>(outer.size()) != n)
        throw ShapeMismatch("outer function count != ratio count");
    if (kind == ProblemKind::single && n != 1)
        throw ShapeMismatch("single-ratio problem has more than one term");
    if (dimension < 1) throw ShapeMismatch("problem dimension must be >= 1");
}

void SolverConfig::check() const {
    if (max_iters < 1) throw FpError("config: max_iters must be >= 1");
    if (!(obj_tol > 0.0)) throw FpError("config: obj_tol must be positive");
    if (!(inner_tol > 0.0)) throw FpError("config: inner_tol must be positive");
    if (inner_max_iters < 1) throw FpError("config: inner_max_iters must be >= 1");
}

std::string to_string(TransformKind kind) {
    switch (kind) {
        case TransformKind::dinkelbach: return "dinkelbach";
        case TransformKind::quadratic: return "quadratic";
        case TransformKind::inverse_quadratic: return "inverse-quadratic";
        case TransformKind::am_gm: return "am-gm";
        case TransformKind::unified: return "unified";
        case TransformKind::lagrangian_dual: return "lagrangian-dual";
        case TransformKind::matrix_basic: return "basic";
        case TransformKind::matrix_nonhomogeneous: return "nonhomogeneous";
        case TransformKind::matrix_extrapolated: return "extrapolated";
    }
    return "unknown";
}

double SolverTrace::final_objective() const {
    if (records.empty()) throw FpError("empty trace");
    return records.back().objective;
}

double SolverTrace::worst_violation() const {
    double worst = 0.0;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const double step = records[i].objective - records[i - 1].objective;
        const double adverse = (direction == Direction::maximize) ? -step : step;
        if (adverse > worst) worst = adverse;
    }
    return worst;
}

bool SolverTrace::monotone(double slack) const { return worst_violation() <= slack; }

std::string Diagnostics::str() const {
    std::ostringstream os;
    for (const auto& v : violations) os << "violation: " << v << "\n";
    for (const auto& w : warnings) os << "warning: " << w << "\n";
    return os.str();
}

}  // namespace fp
