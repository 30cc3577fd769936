#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fp/types.hpp"

namespace fp::bench {

// Flat key = value text with [section] headers; keys are stored as
// "section.key" ("" section for the preamble). '#' starts a comment line.
class KeyValues {
public:
    static KeyValues parse_file(const std::string& path);
    static KeyValues parse_text(const std::string& text);

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    std::string require(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<std::uint64_t> get_seeds(const std::string& key,
                                         std::vector<std::uint64_t> fallback) const;
    void set(const std::string& key, const std::string& value) { values_[key] = value; }

private:
    std::map<std::string, std::string> values_;
};

struct ScenarioConfig {
    std::string scenario;
    std::vector<std::uint64_t> seeds{1};
    std::string variant;      // transform tag, empty = scenario default
    std::string out_dir = ".";
    bool oracle = false;
    KeyValues params;

    void check() const;
};

ScenarioConfig scenario_from_keyvalues(const KeyValues& kv);

}  // namespace fp::bench
