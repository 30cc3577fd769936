#pragma once

#include "fp/apps/instances.hpp"
#include "fp/types.hpp"

namespace fp::bench {

// 128.1 + 37.6 log10(d_km), in dB.
double pathloss_db(double distance_km);

// x dBm = 10^(x/10) mW.
double dbm_to_mw(double dbm);

struct TopologyParams {
    int cells = 3;
    double spacing_km = 0.8;       // BS-to-BS distance on the torus grid
    double power_dbm = 43.0;
    double noise_dbm = -100.0;
    bool shadowing = true;
    double shadow_std_db = 8.0;
    double min_distance_km = 0.01;
};

// Interfering-link instance: BSs on a torus grid, one user per cell placed
// uniformly, gains from pathloss plus log-normal shadowing. Deterministic
// given the seed.
NetworkInstance generate_network(const TopologyParams& params, std::uint64_t seed);

// Same layout with an independently drawn eavesdropper per cell.
NetworkInstance generate_secrecy_network(const TopologyParams& params,
                                         std::uint64_t seed);

// Multicell pilot instance: large-scale gains beta = phi / d^3 with 8 dB
// log-normal phi, normalized so the strongest in-cell gain is one.
NetworkInstance generate_pilot_network(int cells, int antennas, int users_per_cell,
                                       int pilot_len, double pilot_power,
                                       double noise, std::uint64_t seed);

// Random i.i.d. complex normal MIMO downlink instance.
NetworkInstance generate_mimo_network(int cells, int users_per_cell, int tx_antennas,
                                      int rx_antennas, int streams, double power_cap,
                                      double noise, std::uint64_t seed);

}  // namespace fp::bench
