#include "fp/apps/instances.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace fp {

void GraphInstance::check_well_formed() const {
    if (W.rows() != W.cols()) throw ShapeMismatch("graph: W not square");
    if ((W - W.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw FpError("graph: W not symmetric");
    if (W.minCoeff() < 0.0 || W.maxCoeff() > 1.0 + 1e-12)
        throw FpError("graph: similarities must lie in [0, 1]");
    if (clusters < 1) throw FpError("graph: cluster count must be >= 1");
    if ((W.rowwise().sum().array() <= 0.0).any())
        throw FpError("graph: zero-degree vertex");
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_matrix(const Mat& m) {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i || j) os << ',';
            os << fmt_double(m(i, j));
        }
    return os.str();
}

std::string fmt_cmatrix(const CMat& m) {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i || j) os << ',';
            os << fmt_double(m(i, j).real()) << ';' << fmt_double(m(i, j).imag());
        }
    return os.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

Mat parse_matrix(const std::string& s, int rows, int cols) {
    const auto parts = split(s, ',');
    if (static_cast<int>(parts.size()) != rows * cols)
        throw IoError("matrix entry count mismatch");
    Mat m(rows, cols);
    int idx = 0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = std::stod(parts[idx++]);
    return m;
}

CMat parse_cmatrix(const std::string& s, int rows, int cols) {
    const auto parts = split(s, ',');
    if (static_cast<int>(parts.size()) != rows * cols)
        throw IoError("complex matrix entry count mismatch");
    CMat m(rows, cols);
    int idx = 0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const auto pair = split(parts[idx++], ';');
            if (pair.size() != 2) throw IoError("complex entry needs re;im");
            m(i, j) = {std::stod(pair[0]), std::stod(pair[1])};
        }
    return m;
}

std::map<std::string, std::string> read_kv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t\r");
            return (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

const std::string& need(const std::map<std::string, std::string>& kv,
                        const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw IoError("missing key: " + key);
    return it->second;
}

}  // namespace

void save_network(const NetworkInstance& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "format = fp-network-v1\n";
    out << "links = " << net.links << "\n";
    out << "noise = " << fmt_double(net.noise) << "\n";
    out << "eve_noise = " << fmt_double(net.eve_noise) << "\n";
    out << "power_cap = " << fmt_double(net.power_cap) << "\n";
    out << "seed = " << net.seed << "\n";
    if (net.gain.size()) out << "gain = " << fmt_matrix(net.gain) << "\n";
    if (net.eve_gain.size()) out << "eve_gain = " << fmt_matrix(net.eve_gain) << "\n";
    if (net.weights.size())
        out << "weights = " << fmt_matrix(net.weights.transpose()) << "\n";
    out << "cells = " << net.cells << "\n";
    out << "users_per_cell = " << net.users_per_cell << "\n";
    out << "tx_antennas = " << net.tx_antennas << "\n";
    out << "rx_antennas = " << net.rx_antennas << "\n";
    out << "streams = " << net.streams << "\n";
    for (std::size_t c = 0; c < net.channels.size(); ++c)
        out << "channel_" << c << " = " << fmt_cmatrix(net.channels[c]) << "\n";
    out << "pilot_len = " << net.pilot_len << "\n";
    out << "pilot_power = " << fmt_double(net.pilot_power) << "\n";
    for (std::size_t b = 0; b < net.beta.size(); ++b)
        out << "beta_" << b << " = " << fmt_matrix(net.beta[b]) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

NetworkInstance load_network(const std::string& path) {
    const auto kv = read_kv(path);
    if (need(kv, "format") != "fp-network-v1") throw IoError("bad network format tag");
    NetworkInstance net;
    net.links = std::stoi(need(kv, "links"));
    net.noise = std::stod(need(kv, "noise"));
    net.eve_noise = std::stod(need(kv, "eve_noise"));
    net.power_cap = std::stod(need(kv, "power_cap"));
    net.seed = std::stoull(need(kv, "seed"));
    if (kv.count("gain")) net.gain = parse_matrix(kv.at("gain"), net.links, net.links);
    if (kv.count("eve_gain"))
        net.eve_gain = parse_matrix(kv.at("eve_gain"), net.links, net.links);
    if (kv.count("weights")) {
        const auto parts = split(kv.at("weights"), ',');
        net.weights.resize(static_cast<Eigen::Index>(parts.size()));
        for (std::size_t i = 0; i < parts.size(); ++i)
            net.weights[static_cast<Eigen::Index>(i)] = std::stod(parts[i]);
    }
    net.cells = std::stoi(need(kv, "cells"));
    net.users_per_cell = std::stoi(need(kv, "users_per_cell"));
    net.tx_antennas = std::stoi(need(kv, "tx_antennas"));
    net.rx_antennas = std::stoi(need(kv, "rx_antennas"));
    net.streams = std::stoi(need(kv, "streams"));
    const int nchan = net.cells * net.users_per_cell * net.cells;
    for (int c = 0; c < nchan; ++c) {
        const std::string key = "channel_" + std::to_string(c);
        if (!kv.count(key)) break;
        net.channels.push_back(parse_cmatrix(kv.at(key), net.rx_antennas, net.tx_antennas));
    }
    net.pilot_len = std::stoi(need(kv, "pilot_len"));
    net.pilot_power = std::stod(need(kv, "pilot_power"));
    for (int b = 0;; ++b) {
        const std::string key = "beta_" + std::to_string(b);
        if (!kv.count(key)) break;
        net.beta.push_back(parse_matrix(kv.at(key), net.cells, net.users_per_cell));
    }
    return net;
}

void save_graph(const GraphInstance& graph, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "format = fp-graph-v1\n";
    out << "points = " << graph.points() << "\n";
    out << "clusters = " << graph.clusters << "\n";
    out << "seed = " << graph.seed << "\n";
    out << "similarity = " << fmt_matrix(graph.W) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

GraphInstance load_graph(const std::string& path) {
    const auto kv = read_kv(path);
    if (need(kv, "format") != "fp-graph-v1") throw IoError("bad graph format tag");
    GraphInstance g;
    const int n = std::stoi(need(kv, "points"));
    g.clusters = std::stoi(need(kv, "clusters"));
    g.seed = std::stoull(need(kv, "seed"));
    g.W = parse_matrix(need(kv, "similarity"), n, n);
    return g;
}

}  // namespace fp
