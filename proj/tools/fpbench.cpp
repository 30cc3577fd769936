#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fp/bench/config.hpp"
#include "fp/bench/scenarios.hpp"

// Benchmark harness: one subcommand per scenario, or a bare --config run
// whose file names the scenario itself. Exit codes: 0 success, 2 config
// error, 3 solver degeneracy.
int main(int argc, char** argv) {
    CLI::App app{"fractional-programming benchmark harness"};
    app.require_subcommand(0, 1);

    std::string config_path, out_dir, variant, seed_spec;
    bool oracle = false;
    app.add_option("--config", config_path, "scenario config file");

    for (const std::string name : {"ee", "svm", "aoi", "secrecy", "power", "ncut",
                                   "pilot", "beamform", "schedule", "rates"}) {
        CLI::App* sub = app.add_subcommand(name, name + " scenario");
        sub->add_option("--config", config_path, "scenario config file");
        sub->add_option("--seed", seed_spec, "seed or comma/colon list (a:b inclusive)");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--variant", variant, "transform variant");
        sub->add_flag("--oracle", oracle, "enable brute-force verification");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        fp::bench::KeyValues kv;
        if (!config_path.empty()) kv = fp::bench::KeyValues::parse_file(config_path);
        if (app.get_subcommands().size() == 1) {
            kv.set("scenario", app.get_subcommands()[0]->get_name());
        } else if (config_path.empty()) {
            std::cerr << "config error: need a scenario subcommand or --config\n";
            return fp::bench::kExitConfig;
        }
        if (!seed_spec.empty()) kv.set("seeds", seed_spec);
        if (!out_dir.empty()) kv.set("out", out_dir);
        if (!variant.empty()) kv.set("variant", variant);
        if (oracle) kv.set("oracle", "true");
        return fp::bench::run_scenario(fp::bench::scenario_from_keyvalues(kv));
    } catch (const fp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return fp::bench::kExitConfig;
    } catch (const fp::IoError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return fp::bench::kExitConfig;
    }
}
