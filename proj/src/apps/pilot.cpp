#include "fp/apps/pilot.hpp"

#include <cmath>

#include "fp/projection.hpp"

namespace fp {

namespace {

void check_pilot_instance(const NetworkInstance& net) {
    if (net.cells < 1 || net.users_per_cell < 1)
        throw FpError("pilot: need at least one cell and user");
    if (net.pilot_len < 1) throw FpError("pilot: pilot length must be >= 1");
    if (net.pilot_power <= 0.0) throw FpError("pilot: power cap must be positive");
    if (net.noise < 0.0) throw FpError("pilot: negative noise");
    if (static_cast<int>(net.beta.size()) != net.cells)
        throw ShapeMismatch("pilot: beta tensor cell count");
    for (const Mat& b : net.beta)
        if (b.rows() != net.cells || b.cols() != net.users_per_cell)
            throw ShapeMismatch("pilot: beta matrix shape");
}

CMat received_covariance(const NetworkInstance& net, int i, const std::vector<CMat>& S) {
    const int tau = net.pilot_len;
    CMat D = net.noise * CMat::Identity(tau, tau);
    for (int j = 0; j < net.cells; ++j)
        for (int k = 0; k < net.users_per_cell; ++k) {
            const CVec s = S[j].col(k);
            D.noalias() += net.beta[i](j, k) * (s * s.adjoint());
        }
    return D;
}

}  // namespace

MatrixRatioProblem build_pilot_problem(const NetworkInstance& net) {
    check_pilot_instance(net);
    const int L = net.cells;
    const int K = net.users_per_cell;
    const int tau = net.pilot_len;
    const int n = L * K;  // one block per pilot vector

    MatrixRatioProblem p;
    p.A.resize(n);
    p.B.assign(n, std::vector<CMat>(n));
    p.noise.resize(n);
    p.weights = Vec::Ones(n);
    p.block_constraints.assign(n, ConstraintSet::ball(std::sqrt(net.pilot_power)));

    const CMat eye = CMat::Identity(tau, tau);
    for (int i = 0; i < L; ++i)
        for (int k = 0; k < K; ++k) {
            const int term = i * K + k;
            p.A[term] = net.beta[i](i, k) * eye;
            p.noise[term] = net.noise * eye;
            for (int j = 0; j < L; ++j)
                for (int q = 0; q < K; ++q)
                    p.B[term][j * K + q] = std::sqrt(net.beta[i](j, q)) * eye;
        }
    return p;
}

double pilot_objective(const NetworkInstance& net, const std::vector<CMat>& S) {
    check_pilot_instance(net);
    double total = 0.0;
    for (int i = 0; i < net.cells; ++i) {
        const CMat D = received_covariance(net, i, S);
        const Eigen::LLT<CMat> llt(D);
        if (llt.info() != Eigen::Success)
            throw SingularDenominator("pilot: received covariance not positive definite");
        for (int k = 0; k < net.users_per_cell; ++k) {
            const CVec s = S[i].col(k);
            const double beta = net.beta[i](i, k);
            total += beta * beta * s.dot(llt.solve(s)).real();
        }
    }
    return total;
}

double channel_estimation_mse(const NetworkInstance& net, const std::vector<CMat>& S) {
    check_pilot_instance(net);
    double beta_sum = 0.0;
    for (int i = 0; i < net.cells; ++i)
        for (int k = 0; k < net.users_per_cell; ++k) beta_sum += net.beta[i](i, k);
    const double quality = pilot_objective(net, S);
    return net.rx_antennas > 0 ? net.rx_antennas * (beta_sum - quality)
                               : (beta_sum - quality);
}

std::vector<CMat> orthogonal_pilots(const NetworkInstance& net, CounterRng& rng) {
    check_pilot_instance(net);
    const int tau = net.pilot_len;
    const int K = net.users_per_cell;
    // tau orthonormal sequences (DFT columns) scaled to full power; each cell
    // takes a random subset of K of them.
    CMat dft(tau, tau);
    for (int a = 0; a < tau; ++a)
        for (int b = 0; b < tau; ++b)
            dft(a, b) = std::polar(1.0 / std::sqrt(static_cast<double>(tau)),
                                   2.0 * M_PI * a * b / tau);
    std::vector<CMat> S(net.cells, CMat::Zero(tau, K));
    for (int i = 0; i < net.cells; ++i) {
        std::vector<int> perm(tau);
        for (int t = 0; t < tau; ++t) perm[t] = t;
        for (int t = tau - 1; t > 0; --t)
            std::swap(perm[t], perm[rng.below(static_cast<std::uint64_t>(t) + 1)]);
        for (int k = 0; k < K; ++k)
            S[i].col(k) = std::sqrt(net.pilot_power) * dft.col(perm[k % tau]);
    }
    return S;
}

std::vector<CMat> random_pilots(const NetworkInstance& net, CounterRng& rng) {
    check_pilot_instance(net);
    std::vector<CMat> S(net.cells);
    for (int i = 0; i < net.cells; ++i) {
        S[i] = rng.complex_normal_matrix(net.pilot_len, net.users_per_cell);
        for (int k = 0; k < net.users_per_cell; ++k) {
            const double norm = std::max(S[i].col(k).norm(), 1e-300);
            S[i].col(k) *= std::sqrt(net.pilot_power) / norm;
        }
    }
    return S;
}

BlockVec pilots_to_blocks(const NetworkInstance& net, const std::vector<CMat>& S) {
    BlockVec x(static_cast<std::size_t>(net.cells) * net.users_per_cell);
    for (int i = 0; i < net.cells; ++i)
        for (int k = 0; k < net.users_per_cell; ++k)
            x[static_cast<std::size_t>(i) * net.users_per_cell + k] = S[i].col(k);
    return x;
}

std::vector<CMat> blocks_to_pilots(const NetworkInstance& net, const BlockVec& blocks) {
    std::vector<CMat> S(net.cells, CMat::Zero(net.pilot_len, net.users_per_cell));
    for (int i = 0; i < net.cells; ++i)
        for (int k = 0; k < net.users_per_cell; ++k)
            S[i].col(k) = blocks[static_cast<std::size_t>(i) * net.users_per_cell + k];
    return S;
}

BlockVec fpp_start(const NetworkInstance& net) {
    CounterRng rng(net.seed);
    BlockVec x = pilots_to_blocks(net, orthogonal_pilots(net, rng));
    const ConstraintSet cap = ConstraintSet::ball(std::sqrt(net.pilot_power));
    const double eps = 1e-4 * std::sqrt(net.pilot_power);
    for (auto& block : x) {
        for (Eigen::Index k = 0; k < block.size(); ++k)
            block[k] += eps * rng.complex_normal();
        block = project_complex(cap, block);
    }
    return x;
}

PilotResult solve_pilot_fpp(const NetworkInstance& net, const SolverConfig& config) {
    const MatrixRatioProblem problem = build_pilot_problem(net);

    SolverConfig cfg = config;
    if (cfg.variant != TransformKind::matrix_basic &&
        cfg.variant != TransformKind::matrix_nonhomogeneous &&
        cfg.variant != TransformKind::matrix_extrapolated)
        cfg.variant = TransformKind::matrix_basic;

    MatrixSolveResult r = solve_matrix_fp(problem, cfg.variant, cfg, fpp_start(net));

    PilotResult out;
    out.pilots = blocks_to_pilots(net, r.x);
    out.objective = r.value;
    out.trace = std::move(r.trace);
    return out;
}

}  // namespace fp
