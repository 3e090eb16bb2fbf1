#include <iostream>

#include <CLI11.hpp>

#include "bohmlab/errors.hpp"
#include "bohmlab/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"bohm-lab: 1-D quantum hydrodynamics scenarios"};
    app.require_subcommand(1);

    std::string scenario_name, config_path, out_dir;
    std::uint64_t seed = 0;

    auto* run = app.add_subcommand("run", "run a named scenario");
    run->add_option("scenario", scenario_name, "scenario name (see `bohm-lab list`)")
        ->required();
    run->add_option("--config", config_path, "config file overriding the defaults");
    auto* out_opt = run->add_option("--out", out_dir, "output directory");
    auto* seed_opt = run->add_option("--seed", seed, "random seed");

    auto* list = app.add_subcommand("list", "list available scenarios");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "parse and validate a config file");
    validate->add_option("config", validate_path, "config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (list->parsed()) {
            for (const auto& name : bohmlab::cli::scenario_names())
                std::cout << name << "  -  " << bohmlab::cli::scenario_description(name)
                          << '\n';
            return 0;
        }
        if (validate->parsed()) {
            auto s = bohmlab::cli::load_config(validate_path);
            std::cout << "OK: scenario '" << s.name << "', output '"
                      << s.output_dir.string() << "', seed " << s.seed << '\n';
            return 0;
        }
        // run
        bohmlab::cli::Scenario s;
        if (!config_path.empty()) {
            s = bohmlab::cli::load_config(config_path);
            if (s.name != scenario_name) s.name = scenario_name;
        } else {
            s.name = scenario_name;
        }
        if (out_opt->count() > 0) s.output_dir = out_dir;
        if (seed_opt->count() > 0) s.seed = seed;
        s.validate();
        return bohmlab::cli::run_scenario(s);
    } catch (const bohmlab::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const bohmlab::ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const bohmlab::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
