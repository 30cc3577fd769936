#include "fp/bench/scenarios.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <thread>

#include "fp/apps/aoi.hpp"
#include "fp/apps/beamforming.hpp"
#include "fp/apps/clustering.hpp"
#include "fp/apps/energy.hpp"
#include "fp/apps/pilot.hpp"
#include "fp/apps/power_control.hpp"
#include "fp/apps/scheduling.hpp"
#include "fp/apps/secrecy.hpp"
#include "fp/apps/svm.hpp"
#include "fp/bench/csv.hpp"
#include "fp/bench/network_gen.hpp"
#include "fp/inner.hpp"
#include "fp/matrix_transforms.hpp"
#include "fp/scalar_transforms.hpp"

namespace fp::bench {

namespace {

namespace fs = std::filesystem;

std::string trace_path(const ScenarioConfig& cfg, std::uint64_t seed,
                       const std::string& method) {
    return (fs::path(cfg.out_dir) /
            (cfg.scenario + "_seed" + std::to_string(seed) + "_" + method + ".csv"))
        .string();
}

TransformKind parse_variant(const std::string& name, TransformKind fallback) {
    if (name.empty()) return fallback;
    if (name == "quadratic") return TransformKind::quadratic;
    if (name == "inverse-quadratic") return TransformKind::inverse_quadratic;
    if (name == "am-gm") return TransformKind::am_gm;
    if (name == "dinkelbach") return TransformKind::dinkelbach;
    if (name == "unified") return TransformKind::unified;
    if (name == "lagrangian-dual") return TransformKind::lagrangian_dual;
    if (name == "basic") return TransformKind::matrix_basic;
    if (name == "nonhomogeneous") return TransformKind::matrix_nonhomogeneous;
    if (name == "extrapolated") return TransformKind::matrix_extrapolated;
    throw ConfigError("unknown variant: " + name);
}

// Per-seed fan-out with deterministic aggregation (rows land in seed order).
void for_each_seed(const std::vector<std::uint64_t>& seeds,
                   const std::function<std::vector<SummaryRow>(std::uint64_t)>& work,
                   std::vector<SummaryRow>& rows) {
    std::vector<std::vector<SummaryRow>> slots(seeds.size());
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(hw, seeds.size());
    std::exception_ptr error;
    std::mutex error_mutex;
    std::atomic<std::size_t> next{0};
    auto runner = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= seeds.size()) return;
            try {
                slots[idx] = work(seeds[idx]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        runner();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(runner);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    for (auto& slot : slots) rows.insert(rows.end(), slot.begin(), slot.end());
}

std::string status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::max_iters: return "max-iters";
        case SolveStatus::degenerate: return "degenerate";
    }
    return "?";
}

struct ScenarioOutcome {
    std::vector<SummaryRow> rows;
    bool degenerate = false;
};

SolverConfig solver_config(const ScenarioConfig& cfg) {
    SolverConfig sc;
    sc.max_iters = cfg.params.get_int("solver.max_iters", sc.max_iters);
    sc.obj_tol = cfg.params.get_double("solver.obj_tol", sc.obj_tol);
    sc.inner_tol = cfg.params.get_double("solver.inner_tol", sc.inner_tol);
    return sc;
}

// ---- scenario bodies -------------------------------------------------------

ScenarioOutcome run_ee(const ScenarioConfig& cfg) {
    EnergyEfficiencyParams params;
    params.channel_gain = cfg.params.get_double("ee.gain", 1.0);
    params.noise = cfg.params.get_double("ee.noise", 1.0);
    params.circuit_power = cfg.params.get_double("ee.circuit", 1.0);
    params.power_cap = cfg.params.get_double("ee.cap", 10.0);
    const SolverConfig sc = solver_config(cfg);

    ScenarioOutcome out;
    for_each_seed(cfg.seeds, [&](std::uint64_t seed) {
        std::vector<SummaryRow> rows;
        const EnergyEfficiencyResult r = solve_energy_efficiency(params, sc);
        emit_trace_csv(r.trace, trace_path(cfg, seed, "dinkelbach"));
        rows.push_back({seed, "dinkelbach", r.efficiency, r.trace.iterations(),
                        status_name(r.trace.status)});
        const double snr = params.channel_gain / params.noise;
        const double p_gold = golden_section_max(
            [&](double p) { return std::log1p(snr * p) / (p + params.circuit_power); },
            0.0, params.power_cap, 1e-9);
        rows.push_back({seed, "golden-section",
                        std::log1p(snr * p_gold) / (p_gold + params.circuit_power), 0,
                        "converged"});
        return rows;
    }, out.rows);
    return out;
}

ScenarioOutcome run_aoi(const ScenarioConfig& cfg) {
    const int K = cfg.params.get_int("aoi.K", 4);
    const double mu = cfg.params.get_double("aoi.mu", 1.0);
    SolverConfig sc = solver_config(cfg);
    sc.variant = parse_variant(cfg.variant, TransformKind::inverse_quadratic);

    ScenarioOutcome out;
    for_each_seed(cfg.seeds, [&](std::uint64_t seed) {
        std::vector<SummaryRow> rows;
        const AoiResult r = solve_aoi(K, mu, sc);
        emit_trace_csv(r.trace, trace_path(cfg, seed, to_string(sc.variant)));
        rows.push_back({seed, "fp-" + to_string(sc.variant), r.sum_aoi,
                        r.trace.iterations(), status_name(r.trace.status)});
        rows.push_back({seed, "equal-rate", equal_rate_baseline(K, mu), 0, "converged"});
        rows.push_back({seed, "max-rate", max_rate_baseline(K, mu), 0, "converged"});
        return rows;
    }, out.rows);
    return out;
}

ScenarioOutcome run_secrecy(const ScenarioConfig& cfg) {
    NetworkInstance net = secrecy_benchmark_instance();
    const SolverConfig sc = solver_config(cfg);

    ScenarioOutcome out;
    for_each_seed(cfg.seeds, [&](std::uint64_t seed) {
        std::vector<SummaryRow> rows;
        const SecrecyResult r = solve_secrecy(net, sc);
        emit_trace_csv(r.trace, trace_path(cfg, seed, "unified"));
        rows.push_back({seed, "fp-unified", r.sum_secrecy_rate, r.trace.iterations(),
                        status_name(r.trace.status)});
        if (r.trace.status == SolveStatus::degenerate) out.degenerate = true;
        if (cfg.oracle) {
            const double res = cfg.params.get_double("secrecy.resolution", 1e-3);
            const OracleResult oracle = grid_maximize(
                [&](const Vec& p) { return secrecy_objective(net, p); },
                Vec::Zero(2), Vec::Constant(2, net.power_cap), res);
            rows.push_back({seed, "grid-oracle", oracle.best_value, 0, "converged"});
        }
        return rows;
    }, out.rows);
    return out;
}

ScenarioOutcome run_power(const ScenarioConfig& cfg) {
    TopologyParams topo;
    topo.cells = cfg.params.get_int("power.cells", 3);
    topo.spacing_km = cfg.params.get_double("power.spacing_km", 0.8);
    topo.power_dbm = cfg.params.get_double("power.power_dbm", 43.0);
    topo.noise_dbm = cfg.params.get_double("power.noise_dbm", -100.0);
    const SolverConfig sc = solver_config(cfg);

    ScenarioOutcome out;
    for_each_seed(cfg.seeds, [&](std::uint64_t seed) {
        std::vector<SummaryRow> rows;
        const NetworkInstance net = generate_network(topo, seed);
        const PowerControlResult r = solve_power_control(net, sc);
        emit_trace_csv(r.trace, trace_path(cfg, seed, "fp"));
        rows.push_back({seed, "fp-closed-form", r.sum_rate, r.trace.iterations(),
                        status_name(r.trace.status)});
        rows.push_back({seed, "full-power", full_power_rate(net), 0, "converged"});
        CounterRng rng(seed ^ 0x9e3779b9u);
        rows.push_back({seed, "random-power", random_power_rate(net, rng), 0, "converged"});
        return rows;
    }, out.rows);
    return out;
}

ScenarioOutcome run_ncut(const ScenarioConfig& cfg) {
    const int n = cfg.params.get_int("ncut.points", 10);
    const double intra = cfg.params.get_double("ncut.intra", 0.9);
    const double inter = cfg.params.get_double("ncut.inter", 0.05);
    SolverConfig sc = solver_config(cfg);

    ScenarioOutcome out;
    for_each_seed(cfg.seeds, [&](std::uint64_t seed) {
        std::vector<SummaryRow> rows;
        const GraphInstance graph = planted_two_block(n, intra, inter, seed);
        CounterRng rng(seed + 17);
        Mat init = Mat::Zero(n, graph.clusters);
        for (int i = 0; i < n; ++i)
            init(i, static_cast<int>(rng.below(graph.clusters))) = 1.0;
        SolverConfig run_cfg = sc;
        run_cfg.seed = seed;
        const NcutResult r = solve_ncut_fpc(graph, init, run_cfg);
        emit_trace_csv(r.trace, trace_path(cfg, seed, "fpc"));
        rows.push_back({seed, "fpc", r.ncut, r.trace.iterations(),
                        status_name(r.trace.status)});
        if (cfg.oracle) {
            const OracleResult oracle = enumerate_assignments(
                n, graph.clusters, [&](const Mat& a) {
                    if ((a.colwise().sum().array() < 0.5).any())
                        return -std::numeric_limits<double>::infinity();
                    return -ncut_value(graph, a);
                });
            rows.push_back({seed, "enumeration", -oracle.best_value, 0, "converged"});
        }
        return rows;
    }, out.rows);
    return out;
}

ScenarioOutcome run_pilot(const ScenarioConfig& cfg) {
    const int L = cfg.params.get_int("pilot.cells", 3);
    const int N = cfg.params.get_int("pilot.antennas", 4);
    const int K = cfg.params.get_int("pilot.users", 3);
    const int tau = cfg.params.get_int("pilot.tau", 4);
    const double rho = cfg.params.get_double("pilot.rho", 1.0);
    const double noise = cfg.params.get_double("pilot.noise", 1e-2);
    SolverConfig sc = solver_config(cfg);
    sc.variant = parse_variant(cfg.variant, TransformKind::matrix_basic);

    ScenarioOutcome out;
    for_each_seed(cfg.seeds, [&](std::uint64_t seed) {
        std::vector<SummaryRow> rows;
        const NetworkInstance net =
            generate_pilot_network(L, N, K, tau, rho, noise, seed);
        const PilotResult r = solve_pilot_fpp(net, sc);
        emit_trace_csv(r.trace, trace_path(cfg, seed, to_string(sc.variant)));
        rows.push_back({seed, "fpp", r.objective, r.trace.iterations(),
                        status_name(r.trace.status)});
        rows.push_back({seed, "fpp-mse", channel_estimation_mse(net, r.pilots), 0,
                        status_name(r.trace.status)});
        CounterRng rng_orth(seed);
        const auto orth = orthogonal_pilots(net, rng_orth);
        rows.push_back({seed, "orthogonal-mse", channel_estimation_mse(net, orth), 0,
                        "converged"});
        CounterRng rng_rand(seed + 1);
        const auto rnd = random_pilots(net, rng_rand);
        rows.push_back({seed, "random-mse", channel_estimation_mse(net, rnd), 0,
                        "converged"});
        return rows;
    }, out.rows);
    return out;
}

ScenarioOutcome run_beamform(const ScenarioConfig& cfg) {
    const int L = cfg.params.get_int("beamform.cells", 2);
    const int K = cfg.params.get_int("beamform.users", 1);
    const int M = cfg.params.get_int("beamform.tx", 2);
    const int N = cfg.params.get_int("beamform.rx", 2);
    const int d = cfg.params.get_int("beamform.streams", 1);
    const double P = cfg.params.get_double("beamform.power", 10.0);
    const double noise = cfg.params.get_double("beamform.noise", 1.0);
    const SolverConfig sc = solver_config(cfg);

    ScenarioOutcome out;
    for_each_seed(cfg.seeds, [&](std::uint64_t seed) {
        std::vector<SummaryRow> rows;
        const NetworkInstance net =
            generate_mimo_network(L, K, M, N, d, P, noise, seed);
        for (const auto& [variant, name] :
             {std::pair{BeamVariant::wmmse, "wmmse"},
              std::pair{BeamVariant::fplinq, "fplinq"}}) {
            const BeamResult r = solve_beamforming(net, variant, sc);
            emit_trace_csv(r.trace, trace_path(cfg, seed, name));
            rows.push_back({seed, name, r.weighted_sum_rate, r.trace.iterations(),
                            status_name(r.trace.status)});
        }
        return rows;
    }, out.rows);
    return out;
}

ScenarioOutcome run_schedule(const ScenarioConfig& cfg) {
    const int cells = cfg.params.get_int("schedule.cells", 3);
    const int cands = cfg.params.get_int("schedule.candidates", 3);
    const SolverConfig sc = solver_config(cfg);

    ScenarioOutcome out;
    for_each_seed(cfg.seeds, [&](std::uint64_t seed) {
        std::vector<SummaryRow> rows;
        const UplinkInstance net = random_uplink_instance(cells, cands, seed);
        const ScheduleResult r = schedule_uplink_fplinq(net, sc);
        emit_trace_csv(r.trace, trace_path(cfg, seed, "fplinq"));
        rows.push_back({seed, "fplinq-schedule", r.weighted_sum_rate,
                        r.trace.iterations(), status_name(r.trace.status)});
        return rows;
    }, out.rows);
    return out;
}

ScenarioOutcome run_svm(const ScenarioConfig& cfg) {
    const int points = cfg.params.get_int("svm.points", 8);
    const SolverConfig sc = solver_config(cfg);

    ScenarioOutcome out;
    for_each_seed(cfg.seeds, [&](std::uint64_t seed) {
        std::vector<SummaryRow> rows;
        // Separable-by-construction sample: label by a planted boundary and
        // push the two classes apart.
        CounterRng rng(seed);
        Mat data(points, 2);
        std::vector<int> labels(points);
        const double theta = rng.uniform(0.0, 2.0 * M_PI);
        const Vec normal = (Vec(2) << std::cos(theta), std::sin(theta)).finished();
        for (int i = 0; i < points; ++i) {
            // Drop onto the planted boundary, then push to the labeled side.
            Vec v = rng.uniform_vector(2, -1.0, 1.0);
            const double side = (i % 2 == 0) ? 1.0 : -1.0;
            v -= v.dot(normal) * normal;
            v += side * rng.uniform(0.2, 1.0) * normal;
            data.row(i) = v.transpose();
            labels[i] = (side > 0) ? 1 : -1;
        }
        const SvmResult r = solve_svm_margin(data, labels, sc);
        emit_trace_csv(r.trace, trace_path(cfg, seed, "dinkelbach"));
        rows.push_back({seed, "fp-maxmin", r.margin, r.trace.iterations(),
                        status_name(r.trace.status)});
        if (cfg.oracle) {
            const double res = cfg.params.get_double("svm.resolution", 1e-3);
            const OracleResult oracle = grid_maximize(
                [&](const Vec& tb) {
                    const Vec w = (Vec(2) << std::cos(tb[0]), std::sin(tb[0])).finished();
                    return svm_margin(data, labels, w, tb[1]);
                },
                (Vec(2) << 0.0, -2.0).finished(),
                (Vec(2) << 2.0 * M_PI, 2.0).finished(), res);
            rows.push_back({seed, "grid-oracle", oracle.best_value, 0, "converged"});
        }
        return rows;
    }, out.rows);
    return out;
}

ScenarioOutcome run_rates(const ScenarioConfig& cfg) {
    const int L = cfg.params.get_int("rates.cells", 2);
    const int K = cfg.params.get_int("rates.users", 2);
    const int tau = cfg.params.get_int("rates.tau", 3);
    const int iters = cfg.params.get_int("rates.iters", 2000);
    const int fit_lo = cfg.params.get_int("rates.fit_lo", 10);
    const int fit_hi = cfg.params.get_int("rates.fit_hi", 200);

    ScenarioOutcome out;
    for_each_seed(cfg.seeds, [&](std::uint64_t seed) {
        std::vector<SummaryRow> rows;
        const NetworkInstance net = generate_pilot_network(
            L, 1, K, tau, cfg.params.get_double("rates.rho", 1.0),
            cfg.params.get_double("rates.noise", 1e-2), seed);
        const RateStudy study = convergence_rate_study(net, iters, fit_lo, fit_hi);
        rows.push_back({seed, "slope-basic", study.slope_basic, iters, "converged"});
        rows.push_back({seed, "slope-nonhomogeneous", study.slope_nonhomogeneous,
                        iters, "converged"});
        rows.push_back({seed, "slope-extrapolated", study.slope_extrapolated, iters,
                        "converged"});

        const std::string path = trace_path(cfg, seed, "gaps");
        std::ofstream gaps(path);
        if (!gaps) throw IoError("cannot write " + path);
        gaps << "iter,gap_basic,gap_nonhomogeneous,gap_extrapolated\n";
        for (std::size_t k = 0; k < study.gap_basic.size(); ++k)
            gaps << (k + 1) << ',' << format_full(study.gap_basic[k]) << ','
                 << format_full(study.gap_nonhomogeneous[k]) << ','
                 << format_full(study.gap_extrapolated[k]) << '\n';
        return rows;
    }, out.rows);
    return out;
}

}  // namespace

double loglog_slope(const std::vector<double>& gaps, int fit_lo, int fit_hi,
                    double floor) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (int k = fit_lo; k <= fit_hi && k <= static_cast<int>(gaps.size()); ++k) {
        const double gap = std::max(gaps[k - 1], floor);
        const double lx = std::log(static_cast<double>(k));
        const double ly = std::log(gap);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
    }
    if (count < 2) throw FpError("loglog_slope: not enough points");
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

RateStudy convergence_rate_study(const NetworkInstance& pilot_net, int iters,
                                 int fit_lo, int fit_hi) {
    const MatrixRatioProblem problem = build_pilot_problem(pilot_net);
    const BlockVec start = fpp_start(pilot_net);

    SolverConfig cfg;
    cfg.max_iters = iters;
    cfg.obj_tol = std::numeric_limits<double>::denorm_min();  // no early exit short of an exact freeze

    RateStudy study;
    std::vector<std::pair<TransformKind, std::vector<double>*>> runs = {
        {TransformKind::matrix_basic, &study.gap_basic},
        {TransformKind::matrix_nonhomogeneous, &study.gap_nonhomogeneous},
        {TransformKind::matrix_extrapolated, &study.gap_extrapolated},
    };
    std::vector<std::vector<double>> values(runs.size());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < runs.size(); ++v) {
        const MatrixSolveResult r = solve_matrix_fp(problem, runs[v].first, cfg, start);
        values[v].reserve(r.trace.records.size());
        for (const TraceRecord& rec : r.trace.records) {
            values[v].push_back(rec.objective);
            best = std::max(best, rec.objective);
        }
    }
    study.best_value = best;
    const double floor = 1e-16 * std::max(1.0, std::abs(best));
    for (std::size_t v = 0; v < runs.size(); ++v) {
        runs[v].second->resize(values[v].size());
        for (std::size_t k = 0; k < values[v].size(); ++k)
            (*runs[v].second)[k] = std::max(best - values[v][k], floor);
    }
    study.slope_basic = loglog_slope(study.gap_basic, fit_lo, fit_hi, floor);
    study.slope_nonhomogeneous =
        loglog_slope(study.gap_nonhomogeneous, fit_lo, fit_hi, floor);
    study.slope_extrapolated =
        loglog_slope(study.gap_extrapolated, fit_lo, fit_hi, floor);
    return study;
}

int run_scenario(const ScenarioConfig& cfg) {
    try {
        cfg.check();
        std::filesystem::create_directories(cfg.out_dir);
        ScenarioOutcome outcome;
        if (cfg.scenario == "ee") outcome = run_ee(cfg);
        else if (cfg.scenario == "aoi") outcome = run_aoi(cfg);
        else if (cfg.scenario == "secrecy") outcome = run_secrecy(cfg);
        else if (cfg.scenario == "power") outcome = run_power(cfg);
        else if (cfg.scenario == "ncut") outcome = run_ncut(cfg);
        else if (cfg.scenario == "pilot") outcome = run_pilot(cfg);
        else if (cfg.scenario == "beamform") outcome = run_beamform(cfg);
        else if (cfg.scenario == "schedule") outcome = run_schedule(cfg);
        else if (cfg.scenario == "svm") outcome = run_svm(cfg);
        else if (cfg.scenario == "rates") outcome = run_rates(cfg);
        else throw ConfigError("unknown scenario: " + cfg.scenario);

        const fs::path dir(cfg.out_dir);
        emit_summary_csv(outcome.rows, (dir / "summary.csv").string());
        emit_summary_table(outcome.rows, (dir / "summary.txt").string());
        return outcome.degenerate ? kExitDegenerate : kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DegenerateDenominator& e) {
        std::cerr << "solver degeneracy: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const SingularDenominator& e) {
        std::cerr << "solver degeneracy: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const FpError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    }
}

int run_scenario_file(const std::string& path) {
    try {
        const KeyValues kv = KeyValues::parse_file(path);
        return run_scenario(scenario_from_keyvalues(kv));
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
}

}  // namespace fp::bench
