#pragma once

#include <string>
#include <vector>

#include "fp/types.hpp"

namespace fp {

// Synthetic wireless instance shared by the power-control, secrecy, pilot
// and beamforming builders. Gains and powers are in linear units (mW).
struct NetworkInstance {
    int links = 0;
    Mat gain;       // gain(i, j) = |h_ij|^2, receiver i / transmitter j
    Mat eve_gain;   // eavesdropper gains |h~_ij|^2; empty when unused
    double noise = 1.0;
    double eve_noise = 1.0;
    double power_cap = 1.0;
    Vec weights;
    std::uint64_t seed = 0;

    // MIMO downlink (beamforming): channel(u, j) is the N x M channel from
    // BS j to global user u = i * users_per_cell + k.
    int cells = 0;
    int users_per_cell = 0;
    int tx_antennas = 0;
    int rx_antennas = 0;
    int streams = 0;
    std::vector<CMat> channels;  // size cells*users_per_cell*cells, row-major (u, j)

    // Pilot design: beta[i](j, k) is the large-scale gain from user (j, k)
    // to BS i; pilot_len is tau, pilot_power the per-pilot cap rho.
    int pilot_len = 0;
    double pilot_power = 0.0;
    std::vector<Mat> beta;

    const CMat& channel(int user_global, int bs) const {
        return channels[static_cast<std::size_t>(user_global) * cells + bs];
    }
};

// Weighted undirected similarity graph for clustering.
struct GraphInstance {
    Mat W;  // symmetric, entries in [0, 1]
    int clusters = 0;
    std::uint64_t seed = 0;

    int points() const { return static_cast<int>(W.rows()); }
    Vec degrees() const { return W.rowwise().sum(); }
    void check_well_formed() const;
};

// Line-oriented text serialization (key = value; matrices as row-major comma
// lists, complex entries as re;im pairs). Round-trips bit-exactly.
void save_network(const NetworkInstance& net, const std::string& path);
NetworkInstance load_network(const std::string& path);
void save_graph(const GraphInstance& graph, const std::string& path);
GraphInstance load_graph(const std::string& path);

}  // namespace fp
