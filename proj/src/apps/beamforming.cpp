#include "fp/apps/beamforming.hpp"

#include <chrono>
#include <cmath>

#include "fp/matrix_transforms.hpp"
#include "fp/rng.hpp"

namespace fp {

namespace {

void check_mimo_instance(const NetworkInstance& net) {
    if (net.cells < 1 || net.users_per_cell < 1)
        throw FpError("beamforming: need at least one cell and user");
    if (net.tx_antennas < 1 || net.rx_antennas < 1 || net.streams < 1)
        throw FpError("beamforming: bad antenna/stream counts");
    if (net.streams > std::min(net.tx_antennas, net.rx_antennas))
        throw FpError("beamforming: more streams than antennas");
    if (net.noise <= 0.0 || net.power_cap <= 0.0)
        throw FpError("beamforming: noise and power must be positive");
    const std::size_t expected = static_cast<std::size_t>(net.cells) *
                                 net.users_per_cell * net.cells;
    if (net.channels.size() != expected)
        throw ShapeMismatch("beamforming: channel tensor size");
}

int user_count(const NetworkInstance& net) { return net.cells * net.users_per_cell; }
int cell_of(const NetworkInstance& net, int u) { return u / net.users_per_cell; }

Vec user_weights(const NetworkInstance& net) {
    const int U = user_count(net);
    return net.weights.size() == U ? net.weights : Vec::Ones(U);
}

// Total received covariance Phi_u = sigma^2 I + sum_u' H V V^H H^H and the
// per-user signal factors sqrtA_u = H_u,cell(u) V_u.
void mimo_factors(const NetworkInstance& net, const std::vector<CMat>& V,
                  std::vector<CMat>& Phi, std::vector<CMat>& sqrtA) {
    const int U = user_count(net);
    const int N = net.rx_antennas;
    Phi.assign(U, net.noise * CMat::Identity(N, N));
    sqrtA.resize(U);
    for (int u = 0; u < U; ++u) {
        for (int v = 0; v < U; ++v) {
            const CMat HV = net.channel(u, cell_of(net, v)) * V[v];
            Phi[u].noalias() += HV * HV.adjoint();
        }
        sqrtA[u] = net.channel(u, cell_of(net, u)) * V[u];
    }
}

CMat solve_hpd(const CMat& M, const CMat& rhs) {
    const Eigen::LLT<CMat> llt(M);
    if (llt.info() != Eigen::Success)
        throw SingularDenominator("beamforming: covariance not positive definite");
    return llt.solve(rhs);
}

double logdet_identity_plus(const CMat& M) {
    Eigen::SelfAdjointEigenSolver<CMat> es(CMat::Identity(M.rows(), M.cols()) + M);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw DomainError("beamforming: I + Gamma not positive definite");
    return es.eigenvalues().array().log().sum();
}

// Per-BS beamformer update V_q = (C + nu I)^{-1} G_q with the smallest
// nu >= 0 meeting the sum-power budget; bisection on [0, 1e6] run to
// interval collapse so the block step stays an exact surrogate maximizer.
void solve_bs_block(const CMat& C, const std::vector<CMat>& G, double budget,
                    std::vector<CMat>& V_out) {
    Eigen::SelfAdjointEigenSolver<CMat> es(C);
    const Vec lam = es.eigenvalues();
    const CMat U = es.eigenvectors();
    std::vector<CMat> Gt(G.size());
    for (std::size_t q = 0; q < G.size(); ++q) Gt[q] = U.adjoint() * G[q];

    auto power_at = [&](double nu) {
        double p = 0.0;
        for (const CMat& g : Gt)
            for (Eigen::Index m = 0; m < g.rows(); ++m) {
                const double denom = lam[m] + nu;
                if (denom <= 0.0) return std::numeric_limits<double>::infinity();
                p += g.row(m).squaredNorm() / (denom * denom);
            }
        return p;
    };

    double nu = 0.0;
    if (!(power_at(0.0) <= budget)) {
        double lo = 0.0, hi = 1e6;
        while (power_at(hi) > budget) hi *= 2.0;
        for (int it = 0; it < 200 && (hi - lo) > 1e-14 * std::max(1.0, hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (power_at(mid) > budget) lo = mid;
            else hi = mid;
        }
        nu = hi;
    }
    for (std::size_t q = 0; q < G.size(); ++q) {
        CMat w = Gt[q];
        for (Eigen::Index m = 0; m < w.rows(); ++m) w.row(m) /= (lam[m] + nu);
        V_out[q] = U * w;
    }
}

}  // namespace

double weighted_sum_rate_mimo(const NetworkInstance& net, const std::vector<CMat>& V) {
    check_mimo_instance(net);
    std::vector<CMat> Phi, sqrtA;
    mimo_factors(net, V, Phi, sqrtA);
    const Vec w = user_weights(net);
    double rate = 0.0;
    for (int u = 0; u < user_count(net); ++u) {
        const CMat B = Phi[u] - sqrtA[u] * sqrtA[u].adjoint();
        rate += w[u] * logdet_identity_plus(sqrtA[u].adjoint() * solve_hpd(B, sqrtA[u]));
    }
    return rate;
}

std::vector<CMat> beam_gamma_update(const NetworkInstance& net,
                                    const std::vector<CMat>& V) {
    std::vector<CMat> Phi, sqrtA;
    mimo_factors(net, V, Phi, sqrtA);
    std::vector<CMat> Gamma(user_count(net));
    for (int u = 0; u < user_count(net); ++u) {
        const CMat B = Phi[u] - sqrtA[u] * sqrtA[u].adjoint();
        Gamma[u] = sqrtA[u].adjoint() * solve_hpd(B, sqrtA[u]);
    }
    return Gamma;
}

std::vector<CMat> beam_y_update_wmmse(const NetworkInstance& net,
                                      const std::vector<CMat>& V) {
    std::vector<CMat> Phi, sqrtA;
    mimo_factors(net, V, Phi, sqrtA);
    std::vector<CMat> Y(user_count(net));
    for (int u = 0; u < user_count(net); ++u) Y[u] = solve_hpd(Phi[u], sqrtA[u]);
    return Y;
}

std::vector<CMat> beam_y_update_fplinq(const NetworkInstance& net,
                                       const std::vector<CMat>& V,
                                       const std::vector<CMat>& Gamma) {
    std::vector<CMat> Phi, sqrtA;
    mimo_factors(net, V, Phi, sqrtA);
    const Vec w = user_weights(net);
    std::vector<CMat> Y(user_count(net));
    for (int u = 0; u < user_count(net); ++u) {
        if (Gamma[u].rows() != net.streams) throw ShapeMismatch("fplinq: Gamma shape");
        const CMat eye_plus_half = hermitian_sqrt(
            CMat(CMat::Identity(net.streams, net.streams) + Gamma[u]));
        Y[u] = solve_hpd(Phi[u], CMat(std::sqrt(w[u]) * sqrtA[u] * eye_plus_half));
    }
    return Y;
}

double beam_fr_value(const NetworkInstance& net, const std::vector<CMat>& V,
                     const std::vector<CMat>& Gamma) {
    std::vector<CMat> Phi, sqrtA;
    mimo_factors(net, V, Phi, sqrtA);
    const Vec w = user_weights(net);
    double total = 0.0;
    for (int u = 0; u < user_count(net); ++u) {
        const CMat ratio = sqrtA[u].adjoint() * solve_hpd(Phi[u], sqrtA[u]);
        const CMat eye_plus = CMat::Identity(net.streams, net.streams) + Gamma[u];
        total += w[u] * (logdet_identity_plus(Gamma[u]) - Gamma[u].trace().real() +
                         (eye_plus * ratio).trace().real());
    }
    return total;
}

double beam_fq1_value(const NetworkInstance& net, const std::vector<CMat>& V,
                      const std::vector<CMat>& Gamma, const std::vector<CMat>& Y) {
    std::vector<CMat> Phi, sqrtA;
    mimo_factors(net, V, Phi, sqrtA);
    const Vec w = user_weights(net);
    double total = 0.0;
    for (int u = 0; u < user_count(net); ++u) {
        const CMat eye_plus = CMat::Identity(net.streams, net.streams) + Gamma[u];
        const CMat quad = sqrtA[u].adjoint() * Y[u] + Y[u].adjoint() * sqrtA[u] -
                          Y[u].adjoint() * Phi[u] * Y[u];
        total += w[u] * (logdet_identity_plus(Gamma[u]) - Gamma[u].trace().real() +
                         (eye_plus * quad).trace().real());
    }
    return total;
}

double beam_fq2_value(const NetworkInstance& net, const std::vector<CMat>& V,
                      const std::vector<CMat>& Gamma, const std::vector<CMat>& Y) {
    std::vector<CMat> Phi, sqrtA;
    mimo_factors(net, V, Phi, sqrtA);
    const Vec w = user_weights(net);
    double total = 0.0;
    for (int u = 0; u < user_count(net); ++u) {
        const CMat eye_plus = CMat::Identity(net.streams, net.streams) + Gamma[u];
        const CMat sqrtAp = std::sqrt(w[u]) * sqrtA[u] * hermitian_sqrt(eye_plus);
        total += w[u] * (logdet_identity_plus(Gamma[u]) - Gamma[u].trace().real());
        total += 2.0 * (sqrtAp.adjoint() * Y[u]).trace().real() -
                 (Y[u].adjoint() * Phi[u] * Y[u]).trace().real();
    }
    return total;
}

double beamforming_pg_residual(const NetworkInstance& net, const std::vector<CMat>& V) {
    check_mimo_instance(net);
    std::vector<CMat> Phi, sqrtA;
    mimo_factors(net, V, Phi, sqrtA);
    const Vec w = user_weights(net);
    const int U = user_count(net);
    const int K = net.users_per_cell;

    // grad_q f = sum_u w_u H^H Phi^{-1} H V_q - sum_{u != q} w_u H^H B_u^{-1} H V_q
    std::vector<CMat> grad(U, CMat::Zero(net.tx_antennas, net.streams));
    for (int q = 0; q < U; ++q) {
        const int j = cell_of(net, q);
        for (int u = 0; u < U; ++u) {
            const CMat& H = net.channel(u, j);
            grad[q].noalias() += w[u] * (H.adjoint() * solve_hpd(Phi[u], CMat(H * V[q])));
            if (u != q) {
                const CMat B = Phi[u] - sqrtA[u] * sqrtA[u].adjoint();
                grad[q].noalias() -= w[u] * (H.adjoint() * solve_hpd(B, CMat(H * V[q])));
            }
        }
    }

    double dist2 = 0.0;
    for (int j = 0; j < net.cells; ++j) {
        double power = 0.0;
        std::vector<CMat> stepped(K);
        for (int k = 0; k < K; ++k) {
            const int q = j * K + k;
            stepped[k] = V[q] + grad[q];
            power += stepped[k].squaredNorm();
        }
        const double scale = power > net.power_cap
                                 ? std::sqrt(net.power_cap / power)
                                 : 1.0;
        for (int k = 0; k < K; ++k) {
            const int q = j * K + k;
            dist2 += (scale * stepped[k] - V[q]).squaredNorm();
        }
    }
    return std::sqrt(dist2);
}

std::vector<CMat> full_power_beams(const NetworkInstance& net) {
    check_mimo_instance(net);
    CounterRng rng(net.seed + 7);
    const int U = user_count(net);
    std::vector<CMat> V(U);
    for (int j = 0; j < net.cells; ++j) {
        double power = 0.0;
        for (int k = 0; k < net.users_per_cell; ++k) {
            const int q = j * net.users_per_cell + k;
            V[q] = rng.complex_normal_matrix(net.tx_antennas, net.streams);
            power += V[q].squaredNorm();
        }
        const double scale = std::sqrt(net.power_cap / power);
        for (int k = 0; k < net.users_per_cell; ++k)
            V[j * net.users_per_cell + k] *= scale;
    }
    return V;
}

BeamResult solve_beamforming(const NetworkInstance& net, BeamVariant variant,
                             const SolverConfig& config) {
    check_mimo_instance(net);
    config.check();
    const int U = user_count(net);
    const int K = net.users_per_cell;
    const Vec w = user_weights(net);

    std::vector<CMat> V = full_power_beams(net);
    BeamResult out;
    out.trace.variant = TransformKind::matrix_basic;
    out.trace.direction = Direction::maximize;

    const auto t0 = std::chrono::steady_clock::now();
    double prev = weighted_sum_rate_mimo(net, V);

    for (int it = 1; it <= config.max_iters; ++it) {
        const std::vector<CMat> Gamma = beam_gamma_update(net, V);
        std::vector<CMat> Y;
        if (variant == BeamVariant::wmmse) Y = beam_y_update_wmmse(net, V);
        else Y = beam_y_update_fplinq(net, V, Gamma);

        for (int j = 0; j < net.cells; ++j) {
            CMat C = CMat::Zero(net.tx_antennas, net.tx_antennas);
            for (int u = 0; u < U; ++u) {
                const CMat& H = net.channel(u, j);
                if (variant == BeamVariant::wmmse) {
                    const CMat eye_plus =
                        CMat::Identity(net.streams, net.streams) + Gamma[u];
                    C.noalias() += w[u] * (H.adjoint() * Y[u] * eye_plus *
                                           Y[u].adjoint() * H);
                } else {
                    C.noalias() += H.adjoint() * Y[u] * Y[u].adjoint() * H;
                }
            }
            std::vector<CMat> G(K);
            for (int k = 0; k < K; ++k) {
                const int q = j * K + k;
                const CMat& H = net.channel(q, j);
                if (variant == BeamVariant::wmmse) {
                    const CMat eye_plus =
                        CMat::Identity(net.streams, net.streams) + Gamma[q];
                    G[k] = w[q] * (H.adjoint() * Y[q] * eye_plus);
                } else {
                    const CMat eye_plus_half = hermitian_sqrt(
                        CMat(CMat::Identity(net.streams, net.streams) + Gamma[q]));
                    G[k] = std::sqrt(w[q]) * (H.adjoint() * Y[q] * eye_plus_half);
                }
            }
            std::vector<CMat> V_block(K);
            solve_bs_block(C, G, net.power_cap, V_block);
            for (int k = 0; k < K; ++k) V[j * K + k] = V_block[k];
        }

        const double rate = weighted_sum_rate_mimo(net, V);
        const double surrogate = (variant == BeamVariant::wmmse)
                                     ? beam_fq1_value(net, V, Gamma, Y)
                                     : beam_fq2_value(net, V, Gamma, Y);
        double aux_norm = 0.0;
        for (const auto& y : Y) aux_norm += y.squaredNorm();
        const double elapsed =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        out.trace.records.push_back({it, rate, surrogate, std::sqrt(aux_norm), elapsed});
        if (std::abs(rate - prev) <= config.obj_tol) {
            prev = rate;
            out.trace.status = SolveStatus::converged;
            break;
        }
        prev = rate;
    }
    out.V = V;
    out.weighted_sum_rate = prev;
    out.pg_residual = beamforming_pg_residual(net, V);
    return out;
}

}  // namespace fp
