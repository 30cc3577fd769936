#include "fp/bench/network_gen.hpp"

#include <cmath>

#include "fp/rng.hpp"

namespace fp::bench {

double pathloss_db(double distance_km) {
    if (distance_km <= 0.0) throw BadTopology("pathloss: distance must be positive");
    return 128.1 + 37.6 * std::log10(distance_km);
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

namespace {

struct TorusLayout {
    int gx = 1, gy = 1;
    double width = 0.0, height = 0.0;

    static TorusLayout make(int cells, double spacing) {
        TorusLayout t;
        t.gx = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(cells))));
        t.gy = (cells + t.gx - 1) / t.gx;
        t.width = t.gx * spacing;
        t.height = t.gy * spacing;
        return t;
    }

    double distance(double ax, double ay, double bx, double by) const {
        double dx = std::abs(ax - bx);
        double dy = std::abs(ay - by);
        dx = std::min(dx, width - dx);
        dy = std::min(dy, height - dy);
        return std::sqrt(dx * dx + dy * dy);
    }
};

void check_topology(const TopologyParams& params) {
    if (params.cells < 1) throw BadTopology("topology: cell count must be >= 1");
    if (params.spacing_km <= 0.0) throw BadTopology("topology: spacing must be positive");
}

// Positions of BSs and one user per cell; users uniform in their cell square.
void place(const TopologyParams& params, CounterRng& rng, std::vector<double>& bs_x,
           std::vector<double>& bs_y, std::vector<double>& ue_x,
           std::vector<double>& ue_y) {
    const TorusLayout t = TorusLayout::make(params.cells, params.spacing_km);
    bs_x.resize(params.cells);
    bs_y.resize(params.cells);
    ue_x.resize(params.cells);
    ue_y.resize(params.cells);
    for (int i = 0; i < params.cells; ++i) {
        bs_x[i] = (i % t.gx + 0.5) * params.spacing_km;
        bs_y[i] = (i / t.gx + 0.5) * params.spacing_km;
        ue_x[i] = bs_x[i] + rng.uniform(-0.5, 0.5) * params.spacing_km;
        ue_y[i] = bs_y[i] + rng.uniform(-0.5, 0.5) * params.spacing_km;
    }
}

Mat gain_matrix(const TopologyParams& params, CounterRng& rng,
                const std::vector<double>& rx_x, const std::vector<double>& rx_y,
                const std::vector<double>& tx_x, const std::vector<double>& tx_y) {
    const TorusLayout t = TorusLayout::make(params.cells, params.spacing_km);
    Mat g(params.cells, params.cells);
    for (int i = 0; i < params.cells; ++i)
        for (int j = 0; j < params.cells; ++j) {
            const double d = std::max(t.distance(rx_x[i], rx_y[i], tx_x[j], tx_y[j]),
                                      params.min_distance_km);
            double pl = pathloss_db(d);
            if (params.shadowing) pl += params.shadow_std_db * rng.normal();
            g(i, j) = std::pow(10.0, -pl / 10.0);
        }
    return g;
}

}  // namespace

NetworkInstance generate_network(const TopologyParams& params, std::uint64_t seed) {
    check_topology(params);
    CounterRng rng(seed);
    std::vector<double> bs_x, bs_y, ue_x, ue_y;
    place(params, rng, bs_x, bs_y, ue_x, ue_y);

    NetworkInstance net;
    net.seed = seed;
    net.links = params.cells;
    net.noise = dbm_to_mw(params.noise_dbm);
    net.power_cap = dbm_to_mw(params.power_dbm);
    net.weights = Vec::Ones(params.cells);
    net.gain = gain_matrix(params, rng, ue_x, ue_y, bs_x, bs_y);
    return net;
}

NetworkInstance generate_secrecy_network(const TopologyParams& params,
                                         std::uint64_t seed) {
    check_topology(params);
    CounterRng rng(seed);
    std::vector<double> bs_x, bs_y, ue_x, ue_y;
    place(params, rng, bs_x, bs_y, ue_x, ue_y);
    std::vector<double> ev_x(params.cells), ev_y(params.cells);
    for (int i = 0; i < params.cells; ++i) {
        ev_x[i] = bs_x[i] + rng.uniform(-0.5, 0.5) * params.spacing_km;
        ev_y[i] = bs_y[i] + rng.uniform(-0.5, 0.5) * params.spacing_km;
    }

    NetworkInstance net;
    net.seed = seed;
    net.links = params.cells;
    net.noise = dbm_to_mw(params.noise_dbm);
    net.eve_noise = dbm_to_mw(params.noise_dbm);
    net.power_cap = dbm_to_mw(params.power_dbm);
    net.weights = Vec::Ones(params.cells);
    net.gain = gain_matrix(params, rng, ue_x, ue_y, bs_x, bs_y);
    net.eve_gain = gain_matrix(params, rng, ev_x, ev_y, bs_x, bs_y);
    return net;
}

NetworkInstance generate_pilot_network(int cells, int antennas, int users_per_cell,
                                       int pilot_len, double pilot_power,
                                       double noise, std::uint64_t seed) {
    if (cells < 1 || users_per_cell < 1 || pilot_len < 1 || antennas < 1)
        throw BadTopology("pilot network: bad sizes");
    TopologyParams params;
    params.cells = cells;
    params.spacing_km = 1.0;
    CounterRng rng(seed);
    const TorusLayout t = TorusLayout::make(cells, params.spacing_km);

    std::vector<double> bs_x(cells), bs_y(cells);
    for (int i = 0; i < cells; ++i) {
        bs_x[i] = (i % t.gx + 0.5) * params.spacing_km;
        bs_y[i] = (i / t.gx + 0.5) * params.spacing_km;
    }

    NetworkInstance net;
    net.seed = seed;
    net.cells = cells;
    net.users_per_cell = users_per_cell;
    net.rx_antennas = antennas;
    net.pilot_len = pilot_len;
    net.pilot_power = pilot_power;
    net.noise = noise;
    net.beta.assign(cells, Mat(cells, users_per_cell));

    // Users uniform in a cell-interior disc; keeps every user distinctly
    // closer to its own BS than to foreign ones under the cubic pathloss.
    std::vector<double> ux(cells * users_per_cell), uy(cells * users_per_cell);
    for (int j = 0; j < cells; ++j)
        for (int k = 0; k < users_per_cell; ++k) {
            const double radius = 0.35 * std::sqrt(rng.next_double());
            const double angle = rng.uniform(0.0, 2.0 * M_PI);
            ux[j * users_per_cell + k] = bs_x[j] + radius * std::cos(angle);
            uy[j * users_per_cell + k] = bs_y[j] + radius * std::sin(angle);
        }
    double beta_peak = 0.0;
    for (int i = 0; i < cells; ++i)
        for (int j = 0; j < cells; ++j)
            for (int k = 0; k < users_per_cell; ++k) {
                const double d = std::max(
                    t.distance(bs_x[i], bs_y[i], ux[j * users_per_cell + k],
                               uy[j * users_per_cell + k]),
                    0.05);
                const double shadow = std::pow(10.0, 0.8 * rng.normal());  // 8 dB
                net.beta[i](j, k) = shadow / (d * d * d);
                if (i == j) beta_peak = std::max(beta_peak, net.beta[i](j, k));
            }
    for (int i = 0; i < cells; ++i) net.beta[i] /= beta_peak;
    return net;
}

NetworkInstance generate_mimo_network(int cells, int users_per_cell, int tx_antennas,
                                      int rx_antennas, int streams, double power_cap,
                                      double noise, std::uint64_t seed) {
    if (cells < 1 || users_per_cell < 1 || tx_antennas < 1 || rx_antennas < 1 ||
        streams < 1)
        throw BadTopology("mimo network: bad sizes");
    CounterRng rng(seed);
    NetworkInstance net;
    net.seed = seed;
    net.cells = cells;
    net.users_per_cell = users_per_cell;
    net.tx_antennas = tx_antennas;
    net.rx_antennas = rx_antennas;
    net.streams = streams;
    net.power_cap = power_cap;
    net.noise = noise;
    net.weights = Vec::Ones(cells * users_per_cell);
    const int U = cells * users_per_cell;
    net.channels.resize(static_cast<std::size_t>(U) * cells);
    for (int u = 0; u < U; ++u)
        for (int j = 0; j < cells; ++j)
            net.channels[static_cast<std::size_t>(u) * cells + j] =
                rng.complex_normal_matrix(rx_antennas, tx_antennas);
    return net;
}

}  // namespace fp::bench
