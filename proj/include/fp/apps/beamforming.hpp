#pragma once

#include <vector>

#include "fp/apps/instances.hpp"
#include "fp/types.hpp"

namespace fp {

// Multicell MIMO downlink beamforming for the weighted sum rate
//   sum_u w_u logdet(I + sqrtA_u^H B_u^{-1} sqrtA_u),
// with sqrtA_u = H_uu V_u and B_u the interference-plus-noise covariance.
// Two quadratic-transform decouplings of the dual-transformed objective:
// `wmmse` keeps the ratio A / (A + B); `fplinq` moves the weight and
// (I + Gamma) into the numerator so discrete selections decouple.
enum class BeamVariant { wmmse, fplinq };

struct BeamResult {
    std::vector<CMat> V;  // per global user, M x d
    double weighted_sum_rate = 0.0;
    double pg_residual = 0.0;
    SolverTrace trace;
};

double weighted_sum_rate_mimo(const NetworkInstance& net, const std::vector<CMat>& V);

BeamResult solve_beamforming(const NetworkInstance& net, BeamVariant variant,
                             const SolverConfig& config = {});

// ||V - P(V + grad f)||_F with the per-BS sum-power projection; a stationarity
// measure for converged beamformers.
double beamforming_pg_residual(const NetworkInstance& net, const std::vector<CMat>& V);

// Building blocks exposed for the equivalence tests.
std::vector<CMat> beam_gamma_update(const NetworkInstance& net,
                                    const std::vector<CMat>& V);
std::vector<CMat> beam_y_update_wmmse(const NetworkInstance& net,
                                      const std::vector<CMat>& V);
std::vector<CMat> beam_y_update_fplinq(const NetworkInstance& net,
                                       const std::vector<CMat>& V,
                                       const std::vector<CMat>& Gamma);
double beam_fr_value(const NetworkInstance& net, const std::vector<CMat>& V,
                     const std::vector<CMat>& Gamma);
double beam_fq1_value(const NetworkInstance& net, const std::vector<CMat>& V,
                      const std::vector<CMat>& Gamma, const std::vector<CMat>& Y);
double beam_fq2_value(const NetworkInstance& net, const std::vector<CMat>& V,
                      const std::vector<CMat>& Gamma, const std::vector<CMat>& Y);

std::vector<CMat> full_power_beams(const NetworkInstance& net);

}  // namespace fp
