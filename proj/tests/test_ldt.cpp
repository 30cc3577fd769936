#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fp/apps/power_control.hpp"
#include "fp/inner.hpp"
#include "fp/lagrangian_dual.hpp"
#include "fp/objective.hpp"
#include "fp/scalar_transforms.hpp"
#include "test_util.hpp"

using namespace fp;

namespace {

FPProblem constant_log_ratio(std::vector<double> As, std::vector<double> Bs) {
    FPProblem p;
    p.kind = ProblemKind::log_ratio;
    const int n = static_cast<int>(As.size());
    for (int i = 0; i < n; ++i) {
        const double a = As[i], b = Bs[i];
        RatioSpec r;
        r.numerator = [a](const Vec&) { return a; };
        r.denominator = [b](const Vec&) { return b; };
        r.grad_numerator = [](const Vec& x) { return Vec::Zero(x.size()).eval(); };
        r.grad_denominator = [](const Vec& x) { return Vec::Zero(x.size()).eval(); };
        p.ratios.push_back(std::move(r));
    }
    p.weights = Vec::Ones(n);
    p.constraint = ConstraintSet::box_set(Vec::Zero(1), Vec::Ones(1));
    p.dimension = 1;
    return p;
}

FPProblem random_log_ratio(CounterRng& rng, int terms, int dim) {
    FPProblem p;
    p.kind = ProblemKind::log_ratio;
    for (int i = 0; i < terms; ++i)
        p.ratios.push_back(fp::test::positive_affine_ratio(rng, dim));
    p.weights = rng.uniform_vector(terms, 0.5, 2.0);
    p.constraint = ConstraintSet::box_set(Vec::Constant(dim, 0.1), Vec::Ones(dim));
    p.dimension = dim;
    return p;
}

}  // namespace

TEST_CASE("gamma update is the ratio value") {
    CHECK(ldt_gamma_update(Vec::Constant(1, 3.0), Vec::Ones(1))[0] ==
          doctest::Approx(3.0));
    CHECK(ldt_gamma_update(Vec::Zero(1), Vec::Constant(1, 5.0))[0] ==
          doctest::Approx(0.0));
    const Vec gamma = ldt_gamma_update((Vec(2) << 1.0, 2.0).finished(),
                                       (Vec(2) << 2.0, 2.0).finished());
    CHECK(gamma[0] == doctest::Approx(0.5));
    CHECK(gamma[1] == doctest::Approx(1.0));
    CHECK_THROWS_AS(ldt_gamma_update(Vec::Ones(1), Vec::Zero(1)),
                    DegenerateDenominator);
}

TEST_CASE("dual objective touches the log objective at the optimal gamma") {
    const FPProblem p = constant_log_ratio({3.0}, {1.0});
    const Vec x = Vec::Zero(1);
    CHECK(ldt_objective(x, Vec::Constant(1, 3.0), p) ==
          doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(ldt_objective(x, Vec::Zero(1), p) == doctest::Approx(0.75));
}

TEST_CASE("dual objective is a lower bound, tight only at the ratio value") {
    CounterRng rng(71);
    const int dim = 3;
    const FPProblem p = random_log_ratio(rng, 4, dim);
    for (int trial = 0; trial < 100; ++trial) {
        const Vec x = rng.uniform_vector(dim, 0.1, 1.0);
        const Vec gamma_hat = rng.uniform_vector(4, 0.0, 5.0);
        const double truth = evaluate_objective(p, x);
        CHECK(ldt_objective(x, gamma_hat, p) <= truth + 1e-9);
        Vec A, B;
        evaluate_ratios(p, x, A, B);
        CHECK(ldt_objective(x, ldt_gamma_update(A, B), p) ==
              doctest::Approx(truth).epsilon(1e-9));
    }
}

TEST_CASE("dual objective is concave along each gamma coordinate") {
    CounterRng rng(73);
    const FPProblem p = random_log_ratio(rng, 3, 2);
    const Vec x = rng.uniform_vector(2, 0.1, 1.0);
    for (int i = 0; i < 3; ++i) {
        for (int g = 1; g < 30; ++g) {
            Vec gamma = rng.uniform_vector(3, 0.0, 4.0);
            const double h = 0.05;
            Vec lo = gamma, hi = gamma;
            lo[i] -= h;
            hi[i] += h;
            if (lo[i] < 0.0) continue;
            const double dd = ldt_objective(x, hi, p) - 2.0 * ldt_objective(x, gamma, p) +
                              ldt_objective(x, lo, p);
            CHECK(dd <= 1e-10);
        }
    }
}

TEST_CASE("log-ratio driver: single interference-free link fills the power cap") {
    NetworkInstance net;
    net.links = 1;
    net.gain = Mat::Constant(1, 1, 1.0);
    net.noise = 1.0;
    net.power_cap = 10.0;
    net.weights = Vec::Ones(1);
    const FPProblem p = build_power_logratio_problem(net);
    const SolveResult r = logratio_solve(p, default_inner_solver(), {},
                                         Vec::Constant(1, 10.0));
    CHECK(r.x[0] == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(r.value == doctest::Approx(std::log(11.0)).epsilon(1e-9));
    CHECK(r.trace.monotone(1e-10));
}

TEST_CASE("log-ratio driver matches the 2-d grid oracle on the symmetric instance") {
    NetworkInstance net;
    net.links = 2;
    net.gain = Mat::Constant(2, 2, 1.0);
    net.noise = 1.0;
    net.power_cap = 1.0;
    net.weights = Vec::Ones(2);
    const FPProblem p = build_power_logratio_problem(net);
    const OracleResult oracle = grid_oracle(p, 1e-3, Vec::Zero(2), Vec::Ones(2));
    SolverConfig cfg;
    cfg.obj_tol = 1e-13;
    cfg.max_iters = 2000;
    const SolveResult r =
        logratio_solve(p, default_inner_solver(), cfg, Vec::Ones(2));
    CHECK(r.value == doctest::Approx(oracle.best_value).epsilon(1e-4));
    CHECK(r.trace.monotone(1e-10));
}

TEST_CASE("dual-transform and unified routes agree on log-ratio problems") {
    // Two algebraically different decouplings of the same objective: the
    // dual transform moves the ratio out of the logarithm, the unified
    // transform keeps the logarithm and decouples inside it.
    CounterRng rng(83);
    for (int trial = 0; trial < 4; ++trial) {
        const FPProblem p = random_log_ratio(rng, 3, 2);
        SolverConfig cfg;
        cfg.obj_tol = 1e-13;
        cfg.max_iters = 3000;
        const Vec start = Vec::Constant(2, 0.5);
        const SolveResult dual = logratio_solve(p, default_inner_solver(), cfg, start);
        const SolveResult unified =
            unified_qt_solve(p, default_inner_solver(), cfg, start);
        CHECK(dual.value == doctest::Approx(unified.value).epsilon(1e-6));
        CHECK(unified.trace.monotone(1e-10));
    }
}

TEST_CASE("gamma fixed point: final gamma equals the final ratio values") {
    CounterRng rng(79);
    const FPProblem p = random_log_ratio(rng, 3, 2);
    SolverConfig cfg;
    cfg.obj_tol = 1e-14;
    cfg.max_iters = 3000;
    const SolveResult r = logratio_solve(p, default_inner_solver(), cfg,
                                         Vec::Constant(2, 0.5));
    // The gamma used in one more cycle from the converged point must agree
    // with the ratio values after that cycle: the update has a fixed point.
    Vec A, B;
    evaluate_ratios(p, r.x, A, B);
    const Vec gamma_before = ldt_gamma_update(A, B);
    SolverConfig one;
    one.max_iters = 1;
    const SolveResult stepped = logratio_solve(p, default_inner_solver(), one, r.x);
    Vec A2, B2;
    evaluate_ratios(p, stepped.x, A2, B2);
    const Vec gamma_after = ldt_gamma_update(A2, B2);
    CHECK((gamma_before - gamma_after).lpNorm<Eigen::Infinity>() <= 1e-8);
}
