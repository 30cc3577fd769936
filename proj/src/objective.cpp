#include "fp/objective.hpp"

#include <cmath>
#include <sstream>

#include "fp/numdiff.hpp"
#include "fp/projection.hpp"

namespace fp {

void evaluate_ratios(const FPProblem& problem, const Vec& x, Vec& A, Vec& B) {
    const int n = problem.term_count();
    A.resize(n);
    B.resize(n);
    for (int i = 0; i < n; ++i) {
        A[i] = problem.ratios[i].numerator(x);
        B[i] = problem.ratios[i].denominator(x);
        if (B[i] < kDenominatorFloor) {
            std::ostringstream os;
            os << "denominator " << i << " = " << B[i] << " below floor";
            throw DegenerateDenominator(os.str());
        }
    }
}

double evaluate_objective(const FPProblem& problem, const Vec& x) {
    problem.check_well_formed();
    if (problem.kind == ProblemKind::matrix)
        throw DomainError("matrix problems are evaluated through MatrixRatioProblem");
    Vec A, B;
    evaluate_ratios(problem, x, A, B);
    const int n = problem.term_count();
    switch (problem.kind) {
        case ProblemKind::single:
            return problem.weights[0] * A[0] / B[0];
        case ProblemKind::max_min: {
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i)
                best = std::min(best, problem.weights[i] * A[i] / B[i]);
            return best;
        }
        case ProblemKind::sum_max: {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += problem.weights[i] * A[i] / B[i];
            return s;
        }
        case ProblemKind::sum_min: {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += problem.weights[i] * A[i] / B[i];
            return -s;
        }
        case ProblemKind::sum_of_functions: {
            if (problem.outer.empty())
                throw FpError("sum_of_functions problem without outer functions");
            double s = 0.0;
            for (int i = 0; i < n; ++i)
                s += problem.weights[i] * problem.outer[i](A[i] / B[i]);
            return s;
        }
        case ProblemKind::log_ratio: {
            double s = 0.0;
            for (int i = 0; i < n; ++i)
                s += problem.weights[i] * std::log1p(A[i] / B[i]);
            return s;
        }
        case ProblemKind::matrix:
            break;
    }
    throw FpError("bad ProblemKind");
}

namespace {

const char* curvature_name(Curvature c) {
    switch (c) {
        case Curvature::concave_convex: return "concave-convex";
        case Curvature::convex_concave: return "convex-concave";
        case Curvature::generic: return "generic";
    }
    return "?";
}

}  // namespace

Diagnostics validate_problem(const FPProblem& problem, int samples, std::uint64_t seed) {
    problem.check_well_formed();
    Diagnostics diag;
    if ((problem.weights.array() <= 0.0).any())
        diag.violations.push_back("nonpositive weight");

    CounterRng rng(seed);
    const int n = problem.term_count();
    // Curvature evidence: most positive / most negative second difference seen.
    std::vector<double> num_max_dd(n, 0.0), num_min_dd(n, 0.0);
    std::vector<double> den_max_dd(n, 0.0), den_min_dd(n, 0.0);
    const double h = 1e-3;
    const double dd_tol = 1e-9;

    for (int s = 0; s < samples; ++s) {
        const Vec x = sample_point(problem.constraint, problem.dimension, rng);
        Vec dir = rng.normal_vector(problem.dimension);
        const double dn = dir.norm();
        if (dn < 1e-300) continue;
        dir /= dn;
        for (int i = 0; i < n; ++i) {
            const RatioSpec& r = problem.ratios[i];
            const double a = r.numerator(x);
            const double b = r.denominator(x);
            if (a < 0.0) {
                std::ostringstream os;
                os << "ratio " << i << ": numerator " << a << " < 0 at sample " << s;
                diag.violations.push_back(os.str());
            }
            if (b <= 0.0) {
                std::ostringstream os;
                os << "ratio " << i << ": denominator " << b << " <= 0 at sample " << s;
                diag.violations.push_back(os.str());
            }
            if (r.curvature != Curvature::generic) {
                const double ddn = second_difference(r.numerator, x, dir, h);
                const double ddd = second_difference(r.denominator, x, dir, h);
                num_max_dd[i] = std::max(num_max_dd[i], ddn);
                num_min_dd[i] = std::min(num_min_dd[i], ddn);
                den_max_dd[i] = std::max(den_max_dd[i], ddd);
                den_min_dd[i] = std::min(den_min_dd[i], ddd);
            }
        }
    }

    for (int i = 0; i < n; ++i) {
        const Curvature c = problem.ratios[i].curvature;
        if (c == Curvature::generic) continue;
        const bool num_should_be_concave = (c == Curvature::concave_convex);
        const bool num_bad = num_should_be_concave ? (num_max_dd[i] > dd_tol)
                                                   : (num_min_dd[i] < -dd_tol);
        const bool den_bad = num_should_be_concave ? (den_min_dd[i] < -dd_tol)
                                                   : (den_max_dd[i] > dd_tol);
        if (num_bad) {
            std::ostringstream os;
            os << "ratio " << i << ": numerator second differences contradict "
               << curvature_name(c) << " tag";
            diag.warnings.push_back(os.str());
        }
        if (den_bad) {
            std::ostringstream os;
            os << "ratio " << i << ": denominator second differences contradict "
               << curvature_name(c) << " tag";
            diag.warnings.push_back(os.str());
        }
    }

    // Outer functions: declared monotonicity and concavity on a sampled grid.
    // Nonconcave outers break the convexity of the inner x subproblem.
    for (std::size_t i = 0; i < problem.outer.size(); ++i) {
        const OuterFunction& f = problem.outer[i];
        const double lo = (f.kind == OuterKind::log1p) ? -0.5 : 0.0;
        const double hi = (f.kind == OuterKind::log_one_minus) ? 0.95 : 4.0;
        const int grid = 41;
        const double step = (hi - lo) / (grid - 1);
        bool mono_bad = false, concave_bad = false;
        double prev = f(lo);
        for (int g = 1; g < grid; ++g) {
            const double r = lo + g * step;
            const double v = f(r);
            const double dv = v - prev;
            if (f.monotonicity == Monotonicity::nondecreasing && dv < -1e-12) mono_bad = true;
            if (f.monotonicity == Monotonicity::nonincreasing && dv > 1e-12) mono_bad = true;
            prev = v;
            if (g >= 2) {
                const double dd = f(r) - 2.0 * f(r - step) + f(r - 2.0 * step);
                if (dd > 1e-10) concave_bad = true;
            }
        }
        if (mono_bad) {
            std::ostringstream os;
            os << "outer " << i << ": sampled values contradict declared monotonicity";
            diag.warnings.push_back(os.str());
        }
        if (concave_bad) {
            std::ostringstream os;
            os << "outer " << i << ": nonconcave outer function";
            diag.warnings.push_back(os.str());
        }
    }
    return diag;
}

}  // namespace fp
