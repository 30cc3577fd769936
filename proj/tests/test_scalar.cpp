#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fp/apps/energy.hpp"
#include "fp/inner.hpp"
#include "fp/objective.hpp"
#include "fp/scalar_transforms.hpp"
#include "test_util.hpp"

using namespace fp;

TEST_CASE("closed-form auxiliary updates") {
    const Vec A9 = Vec::Constant(1, 9.0), B3 = Vec::Constant(1, 3.0);
    CHECK(update_auxiliaries(TransformKind::quadratic, A9, B3)[0] == doctest::Approx(1.0));

    const Vec A2 = Vec::Constant(1, 2.0), B4 = Vec::Constant(1, 4.0);
    CHECK(update_auxiliaries(TransformKind::inverse_quadratic, A2, B4)[0] ==
          doctest::Approx(1.0));

    const Vec A1 = Vec::Constant(1, 1.0), B2 = Vec::Constant(1, 2.0);
    CHECK(update_auxiliaries(TransformKind::am_gm, A1, B2)[0] == doctest::Approx(0.25));

    CHECK_THROWS_AS(update_auxiliaries(TransformKind::quadratic, A9,
                                       Vec::Constant(1, 1e-13)),
                    DegenerateDenominator);
    CHECK_THROWS_AS(update_auxiliaries(TransformKind::inverse_quadratic,
                                       Vec::Constant(1, 0.0), B4),
                    DegenerateDenominator);
}

TEST_CASE("surrogate values at the optimal auxiliaries equal the objective") {
    const Vec w = Vec::Ones(1);
    CHECK(surrogate_value(TransformKind::quadratic, Vec::Constant(1, 9.0),
                          Vec::Constant(1, 3.0), Vec::Constant(1, 1.0), w) ==
          doctest::Approx(3.0));
    CHECK(surrogate_value(TransformKind::inverse_quadratic, Vec::Constant(1, 2.0),
                          Vec::Constant(1, 4.0), Vec::Constant(1, 1.0), w) ==
          doctest::Approx(-0.5));
    CHECK(surrogate_value(TransformKind::am_gm, Vec::Constant(1, 1.0),
                          Vec::Constant(1, 2.0), Vec::Constant(1, 0.25), w) ==
          doctest::Approx(-0.5));
}

TEST_CASE("inverse transform bracket guard returns the -infinity sentinel") {
    // Tiny auxiliary makes the bracket 2 y sqrt(B) - y^2 A collapse.
    const double v = surrogate_value(TransformKind::inverse_quadratic,
                                     Vec::Constant(1, 1.0), Vec::Constant(1, 1.0),
                                     Vec::Constant(1, 1e-14), Vec::Ones(1));
    CHECK(std::isinf(v));
    CHECK(v < 0.0);
}

TEST_CASE("closed-form auxiliaries maximize the single-term surrogate on a grid") {
    CounterRng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const Vec A = Vec::Constant(1, rng.uniform(0.4, 3.0));
        const Vec B = Vec::Constant(1, rng.uniform(0.4, 3.0));
        const Vec w = Vec::Ones(1);
        for (TransformKind kind : {TransformKind::quadratic,
                                   TransformKind::inverse_quadratic,
                                   TransformKind::am_gm}) {
            const Vec star = update_auxiliaries(kind, A, B);
            const double at_star = surrogate_value(kind, A, B, star, w);
            double grid_best = -std::numeric_limits<double>::infinity();
            for (int g = 1; g <= 3000; ++g) {
                const Vec y = Vec::Constant(1, star[0] * (g / 1000.0));
                grid_best = std::max(grid_best, surrogate_value(kind, A, B, y, w));
            }
            CHECK(at_star >= grid_best - 1e-6);
        }
    }
}

TEST_CASE("am-gm equality condition balances the two surrogate halves") {
    CounterRng rng(37);
    for (int trial = 0; trial < 50; ++trial) {
        const double A = rng.uniform(0.1, 5.0);
        const double B = rng.uniform(0.1, 5.0);
        const double y = 1.0 / (2.0 * A * B);
        const double lhs = y * A * A;
        const double rhs = 1.0 / (4.0 * y * B * B);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

namespace {

// Random sum-of-ratios problem with positive affine parts on [0.1, 1]^dim.
FPProblem random_sum_problem(ProblemKind kind, CounterRng& rng, int terms, int dim) {
    FPProblem p;
    p.kind = kind;
    for (int i = 0; i < terms; ++i)
        p.ratios.push_back(fp::test::positive_affine_ratio(rng, dim));
    p.weights = rng.uniform_vector(terms, 0.5, 2.0);
    p.constraint = ConstraintSet::box_set(Vec::Constant(dim, 0.1), Vec::Ones(dim));
    p.dimension = dim;
    return p;
}

double scalar_surrogate_at(const FPProblem& p, TransformKind kind, const Vec& x,
                           const Vec& x_hat) {
    Vec A, B, Ah, Bh;
    evaluate_ratios(p, x, A, B);
    evaluate_ratios(p, x_hat, Ah, Bh);
    const Vec aux = update_auxiliaries(kind, Ah, Bh);
    return surrogate_value(kind, A, B, aux, p.weights);
}

FPProblem quotient_bump_problem() {
    // x / (x^2 + 1) on [0, 2]; maximum 0.5 at x = 1.
    FPProblem p;
    RatioSpec r;
    r.numerator = [](const Vec& x) { return x[0]; };
    r.denominator = [](const Vec& x) { return x[0] * x[0] + 1.0; };
    r.grad_numerator = [](const Vec&) { return Vec::Ones(1).eval(); };
    r.grad_denominator = [](const Vec& x) { return Vec(2.0 * x); };
    r.curvature = Curvature::concave_convex;
    p.kind = ProblemKind::single;
    p.ratios.push_back(std::move(r));
    p.weights = Vec::Ones(1);
    p.constraint = ConstraintSet::box_set(Vec::Zero(1), Vec::Constant(1, 2.0));
    p.dimension = 1;
    return p;
}

}  // namespace

TEST_CASE("minorant sandwich for the scalar transforms") {
    CounterRng rng(41);
    const int dim = 3;
    for (TransformKind kind : {TransformKind::quadratic,
                               TransformKind::inverse_quadratic,
                               TransformKind::am_gm}) {
        const ProblemKind pk = (kind == TransformKind::quadratic) ? ProblemKind::sum_max
                                                                  : ProblemKind::sum_min;
        const FPProblem p = random_sum_problem(pk, rng, 4, dim);
        for (int pair = 0; pair < 100; ++pair) {
            const Vec x = rng.uniform_vector(dim, 0.1, 1.0);
            const Vec x_hat = rng.uniform_vector(dim, 0.1, 1.0);
            const double bound = scalar_surrogate_at(p, kind, x, x_hat);
            CHECK(bound <= evaluate_objective(p, x) + 1e-9);
            const double touch = scalar_surrogate_at(p, kind, x, x);
            CHECK(touch == doctest::Approx(evaluate_objective(p, x)).epsilon(1e-9));
        }
    }
}

TEST_CASE("dinkelbach on x/(x^2+1)") {
    const FPProblem p = quotient_bump_problem();
    SolverConfig cfg;
    const SolveResult full =
        dinkelbach_solve(p, default_inner_solver(), cfg, Vec::Constant(1, 2.0));
    CHECK(full.x[0] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(full.value == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(full.trace.monotone(1e-10));

    // One parametric step from y = 0 (start at x = 0): the subproblem
    // maximizes x over [0, 2], and the next ratio value is 2/5.
    SolverConfig one;
    one.max_iters = 1;
    const SolveResult step =
        dinkelbach_solve(p, default_inner_solver(), one, Vec::Zero(1));
    CHECK(step.x[0] == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(step.trace.records.at(0).aux_norm == doctest::Approx(0.0));
    CHECK(step.value == doctest::Approx(0.4).epsilon(1e-7));
}

TEST_CASE("unguaranteed curvature is accepted with a warning") {
    FPProblem p = quotient_bump_problem();
    p.ratios[0].curvature = Curvature::generic;
    SolverConfig cfg;
    cfg.max_iters = 3;
    const SolveResult r =
        dinkelbach_solve(p, default_inner_solver(), cfg, Vec::Ones(1));
    CHECK(!r.trace.warnings.empty());
}

TEST_CASE("inner solver failures surface as InnerSolverFailure") {
    const FPProblem p = quotient_bump_problem();
    const InnerSolverFn broken = [](const ScalarFn&, const GradFn&,
                                    const ConstraintSet&, const Vec&,
                                    const SolverConfig&) -> Vec {
        throw MaxItersError("inner budget exhausted");
    };
    CHECK_THROWS_AS(dinkelbach_solve(p, broken, {}, Vec::Ones(1)),
                    InnerSolverFailure);
}

TEST_CASE("dinkelbach solves the wireless-link energy-efficiency example") {
    const EnergyEfficiencyResult r = solve_energy_efficiency({1.0, 1.0, 1.0, 10.0});
    CHECK(r.power == doctest::Approx(M_E - 1.0).epsilon(1e-5));
    CHECK(r.efficiency == doctest::Approx(1.0 / M_E).epsilon(1e-8));
    CHECK(r.trace.monotone(1e-10));

    const EnergyEfficiencyResult capped = solve_energy_efficiency({1.0, 1.0, 1.0, 0.5});
    CHECK(capped.power == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("random energy-efficiency parameters agree with golden section") {
    CounterRng rng(67);
    for (int trial = 0; trial < 10; ++trial) {
        EnergyEfficiencyParams params;
        params.channel_gain = rng.uniform(0.3, 3.0);
        params.noise = rng.uniform(0.3, 2.0);
        params.circuit_power = rng.uniform(0.3, 2.0);
        params.power_cap = rng.uniform(2.0, 20.0);
        const EnergyEfficiencyResult r = solve_energy_efficiency(params);
        const double snr = params.channel_gain / params.noise;
        const double p_gold = golden_section_max(
            [&](double p) {
                return std::log1p(snr * p) / (p + params.circuit_power);
            },
            0.0, params.power_cap, 1e-10);
        const double ee_gold = std::log1p(snr * p_gold) / (p_gold + params.circuit_power);
        CHECK(r.efficiency == doctest::Approx(ee_gold).epsilon(1e-6));
    }
}

TEST_CASE("generalized dinkelbach on symmetric two-ratio instance") {
    FPProblem p;
    for (int i = 0; i < 2; ++i) {
        RatioSpec r;
        if (i == 0) {
            r.numerator = [](const Vec& x) { return x[0]; };
            r.grad_numerator = [](const Vec&) { return Vec::Ones(1).eval(); };
        } else {
            r.numerator = [](const Vec& x) { return 2.0 - x[0]; };
            r.grad_numerator = [](const Vec&) { return Vec::Constant(1, -1.0).eval(); };
        }
        r.denominator = [](const Vec&) { return 1.0; };
        r.grad_denominator = [](const Vec&) { return Vec::Zero(1).eval(); };
        r.curvature = Curvature::concave_convex;
        p.ratios.push_back(r);
    }
    p.kind = ProblemKind::max_min;
    p.weights = Vec::Ones(2);
    p.constraint = ConstraintSet::box_set(Vec::Zero(1), Vec::Constant(1, 2.0));
    p.dimension = 1;

    const SolveResult r = maxmin_dinkelbach_solve(p, default_inner_solver(), {},
                                                  Vec::Constant(1, 0.3));
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.trace.monotone(1e-10));
}

TEST_CASE("generalized dinkelbach matches the grid oracle on random affine ratios") {
    CounterRng rng(53);
    for (int trial = 0; trial < 5; ++trial) {
        FPProblem p = random_sum_problem(ProblemKind::max_min, rng, 3, 2);
        p.weights = Vec::Ones(3);
        const OracleResult oracle =
            grid_oracle(p, 1e-3, Vec::Constant(2, 0.1), Vec::Ones(2));
        SolverConfig cfg;
        cfg.obj_tol = 1e-12;
        const SolveResult r = maxmin_dinkelbach_solve(p, default_inner_solver(), cfg,
                                                      Vec::Constant(2, 0.5));
        CHECK(r.value == doctest::Approx(oracle.best_value).epsilon(1e-4));
    }
}

TEST_CASE("unified transform agrees with dinkelbach on a single ratio") {
    FPProblem p = quotient_bump_problem();
    p.kind = ProblemKind::sum_max;
    SolverConfig cfg;
    cfg.obj_tol = 1e-12;
    const SolveResult qt =
        unified_qt_solve(p, default_inner_solver(), cfg, Vec::Constant(1, 2.0));
    p.kind = ProblemKind::single;
    const SolveResult dk =
        dinkelbach_solve(p, default_inner_solver(), cfg, Vec::Constant(1, 2.0));
    CHECK(qt.value == doctest::Approx(dk.value).epsilon(1e-6));
    CHECK(qt.trace.monotone(1e-10));
}

TEST_CASE("unified transform pushes single-cell secrecy power to the cap") {
    // ln(1 + 10 p) - ln(1 + 0.5 p) has positive slope for all p >= 0.
    FPProblem p;
    RatioSpec legit;
    legit.numerator = [](const Vec& x) { return x[0]; };
    legit.denominator = [](const Vec&) { return 0.1; };
    legit.grad_numerator = [](const Vec&) { return Vec::Ones(1).eval(); };
    legit.grad_denominator = [](const Vec&) { return Vec::Zero(1).eval(); };
    legit.curvature = Curvature::concave_convex;
    RatioSpec eve;  // 0.5 p / (0.5 p + 1) inside ln(1 - r)
    eve.numerator = [](const Vec& x) { return 0.5 * x[0]; };
    eve.denominator = [](const Vec& x) { return 0.5 * x[0] + 1.0; };
    eve.grad_numerator = [](const Vec&) { return Vec::Constant(1, 0.5).eval(); };
    eve.grad_denominator = [](const Vec&) { return Vec::Constant(1, 0.5).eval(); };
    eve.curvature = Curvature::convex_concave;
    p.kind = ProblemKind::sum_of_functions;
    p.ratios = {legit, eve};
    p.outer = {OuterFunction::log1p(), OuterFunction::log_one_minus()};
    p.weights = Vec::Ones(2);
    p.constraint = ConstraintSet::box_set(Vec::Zero(1), Vec::Constant(1, 10.0));
    p.dimension = 1;

    const SolveResult r =
        unified_qt_solve(p, default_inner_solver(), {}, Vec::Constant(1, 10.0));
    CHECK(r.x[0] == doctest::Approx(10.0).epsilon(1e-9));
    const double expected = std::log1p(100.0) - std::log1p(5.0);
    CHECK(r.value == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("unified sandwich holds for mixed outer functions") {
    CounterRng rng(59);
    const int dim = 2;
    FPProblem p;
    p.kind = ProblemKind::sum_of_functions;
    p.dimension = dim;
    p.constraint = ConstraintSet::box_set(Vec::Constant(dim, 0.1), Vec::Ones(dim));
    p.ratios.push_back(fp::test::positive_affine_ratio(rng, dim));
    p.outer.push_back(OuterFunction::log1p());
    {
        RatioSpec inner = fp::test::positive_affine_ratio(rng, dim);
        RatioSpec bounded;  // a / (a + b) < 1
        const ScalarFn na = inner.numerator, nb = inner.denominator;
        const GradFn ga = inner.grad_numerator, gb = inner.grad_denominator;
        bounded.numerator = na;
        bounded.denominator = [na, nb](const Vec& x) { return na(x) + nb(x); };
        bounded.grad_numerator = ga;
        bounded.grad_denominator = [ga, gb](const Vec& x) { return Vec(ga(x) + gb(x)); };
        bounded.curvature = Curvature::convex_concave;
        p.ratios.push_back(bounded);
        p.outer.push_back(OuterFunction::log_one_minus());
    }
    p.weights = Vec::Ones(2);

    auto unified_surrogate = [&](const Vec& x, const Vec& x_hat) {
        Vec A, B, Ah, Bh;
        evaluate_ratios(p, x, A, B);
        evaluate_ratios(p, x_hat, Ah, Bh);
        const double y = std::sqrt(Ah[0]) / Bh[0];
        const double s_plus = 2.0 * y * std::sqrt(A[0]) - y * y * B[0];
        const double yt = std::sqrt(Bh[1]) / Ah[1];
        const double bracket = 2.0 * yt * std::sqrt(B[1]) - yt * yt * A[1];
        if (bracket < 1e-12) return -std::numeric_limits<double>::infinity();
        return p.outer[0](s_plus) + p.outer[1](1.0 / bracket);
    };
    for (int pair = 0; pair < 100; ++pair) {
        const Vec x = rng.uniform_vector(dim, 0.1, 1.0);
        const Vec x_hat = rng.uniform_vector(dim, 0.1, 1.0);
        CHECK(unified_surrogate(x, x_hat) <= evaluate_objective(p, x) + 1e-9);
        CHECK(unified_surrogate(x, x) ==
              doctest::Approx(evaluate_objective(p, x)).epsilon(1e-9));
    }
}

TEST_CASE("charnes-cooper lift round-trips and flags the z boundary") {
    const FPProblem p = fp::test::single_ratio_problem(
        [] {
            RatioSpec r;
            r.numerator = [](const Vec& x) { return 1.0 + x[0]; };
            r.denominator = [](const Vec&) { return 2.0; };
            r.grad_numerator = [](const Vec&) { return Vec::Ones(1).eval(); };
            r.grad_denominator = [](const Vec&) { return Vec::Zero(1).eval(); };
            return r;
        }(),
        ConstraintSet::box_set(Vec::Zero(1), Vec::Ones(1)), 1);
    const LiftedSingleRatio lift = charnes_cooper_lift(p);

    const Vec x = Vec::Constant(1, 1.0);
    const auto [z, q] = lift.lift(x);
    CHECK(z == doctest::Approx(0.5));
    CHECK(q[0] == doctest::Approx(0.5));
    const Vec back = lift.recover(z, q);
    CHECK(back[0] == x[0]);

    CHECK_THROWS_AS(lift.constraint(0.0, q), DomainError);
    CHECK_THROWS_AS(lift.objective(-1.0, q), DomainError);
}

TEST_CASE("charnes-cooper grid search reproduces the energy-efficiency optimum") {
    const FPProblem p = build_energy_efficiency_problem({1.0, 1.0, 1.0, 10.0});
    const LiftedSingleRatio lift = charnes_cooper_lift(p);
    // Feasible (z, q) region: z = 1/(p+1) in [1/11, 1], q = p z in [0, 10/11].
    const OracleResult r = grid_maximize(
        [&](const Vec& zq) {
            const double z = zq[0];
            if (z < 1e-6) return -1.0;
            const Vec q = Vec::Constant(1, zq[1]);
            const double x = zq[1] / z;
            if (x < 0.0 || x > 10.0) return -1.0;
            if (lift.constraint(z, q) > 1.0 + 1e-9) return -1.0;
            return lift.objective(z, q);
        },
        (Vec(2) << 0.05, 0.0).finished(), (Vec(2) << 1.0, 0.95).finished(), 1e-3);
    CHECK(r.best_value == doctest::Approx(1.0 / M_E).epsilon(1e-3));
}
