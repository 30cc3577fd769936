#include "fp/bench/config.hpp"

#include <fstream>
#include <sstream>

namespace fp::bench {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t\r");
    return (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
}

const char* kScenarios[] = {"ee", "svm", "aoi", "secrecy", "power",
                            "ncut", "pilot", "beamform", "schedule", "rates"};

}  // namespace

KeyValues KeyValues::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_text(buffer.str());
}

KeyValues KeyValues::parse_text(const std::string& text) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        const std::string full = section.empty() ? key : section + "." + key;
        kv.values_[full] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::string KeyValues::get(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::string KeyValues::require(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing config key: " + key);
    return it->second;
}

int KeyValues::get_int(const std::string& key, int fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        return std::stoi(it->second);
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": not an integer");
    }
}

double KeyValues::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": not a number");
    }
}

bool KeyValues::get_bool(const std::string& key, bool fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw ConfigError("config key " + key + ": not a boolean");
}

std::vector<std::uint64_t> KeyValues::get_seeds(
    const std::string& key, std::vector<std::uint64_t> fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<std::uint64_t> seeds;
    std::istringstream in(it->second);
    std::string token;
    while (std::getline(in, token, ',')) {
        token = trim(token);
        if (token.empty()) continue;
        // a:b expands to the inclusive range
        const auto colon = token.find(':');
        try {
            if (colon != std::string::npos) {
                const std::uint64_t a = std::stoull(token.substr(0, colon));
                const std::uint64_t b = std::stoull(token.substr(colon + 1));
                for (std::uint64_t s = a; s <= b; ++s) seeds.push_back(s);
            } else {
                seeds.push_back(std::stoull(token));
            }
        } catch (const std::exception&) {
            throw ConfigError("config key " + key + ": bad seed list");
        }
    }
    if (seeds.empty()) throw ConfigError("config key " + key + ": empty seed list");
    return seeds;
}

void ScenarioConfig::check() const {
    bool known = false;
    for (const char* s : kScenarios)
        if (scenario == s) known = true;
    if (!known) throw ConfigError("unknown or missing scenario tag: '" + scenario + "'");
    if (seeds.empty()) throw ConfigError("scenario needs at least one seed");
}

ScenarioConfig scenario_from_keyvalues(const KeyValues& kv) {
    ScenarioConfig cfg;
    cfg.scenario = kv.get("scenario", kv.get("scenario.name", ""));
    cfg.seeds = kv.get_seeds("scenario.seeds", kv.get_seeds("seeds", {1}));
    cfg.variant = kv.get("scenario.variant", kv.get("variant", ""));
    cfg.out_dir = kv.get("scenario.out", kv.get("out", "."));
    cfg.oracle = kv.get_bool("scenario.oracle", kv.get_bool("oracle", false));
    cfg.params = kv;
    cfg.check();
    return cfg;
}

}  // namespace fp::bench
