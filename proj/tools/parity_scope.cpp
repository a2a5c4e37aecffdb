#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "parityscope/commands.hpp"
#include "parityscope/errors.hpp"
#include "parityscope/parallel.hpp"

using namespace pscope;

int main(int argc, char** argv) {
    CLI::App app{"Dispersive parity readout of three qubits on two resonators"};
    app.require_subcommand(1);

    std::string config_path;
    std::string preset;
    std::string out_dir;
    std::string hw = "all";
    bool quiet = false;

    auto add_common = [&](CLI::App* sub, bool with_hw) {
        sub->add_option("--config", config_path, "Scenario document (JSON)");
        sub->add_option("--preset", preset, "Shipped scenario name (see scenario-list)");
        sub->add_option("--out", out_dir, "Directory for CSV/JSON reports");
        sub->add_flag("--quiet", quiet, "Suppress console summaries");
        if (with_hw)
            sub->add_option("--hw", hw, "Hamming weight 0..3 or all")
                ->check(CLI::IsMember({"0", "1", "2", "3", "all"}));
    };
    auto* dispersive = app.add_subcommand("dispersive", "Dispersive parameters, parity verdict and Purcell times");
    auto* simulate = app.add_subcommand("simulate", "Cavity trajectories, reflection and information summary");
    auto* sweep = app.add_subcommand("sweep", "Information gains over chi sweeps");
    auto* validate = app.add_subcommand("validate", "Exact-diagonalization checks of the perturbative formulas");
    auto* list = app.add_subcommand("scenario-list", "List shipped presets");
    add_common(dispersive, false);
    add_common(simulate, true);
    add_common(sweep, false);
    add_common(validate, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        WorkerScope workers(worker_count());
        if (list->parsed()) return cmd_scenario_list(std::cout);

        if (!config_path.empty() && !preset.empty())
            throw Error(ErrorKind::Config, "use either --config or --preset, not both");
        ScenarioConfig config;
        if (!config_path.empty()) {
            config = load_scenario_file(config_path);
        } else if (!preset.empty()) {
            config = load_preset(preset);
        } else if (validate->parsed()) {
            config.name = "default";
        } else {
            throw Error(ErrorKind::Config, "a scenario is required (--config or --preset)");
        }

        CommandOptions options;
        if (!out_dir.empty()) options.out_dir = out_dir;
        options.quiet = quiet;
        options.hamming = hw == "all" ? -1 : std::stoi(hw);

        if (dispersive->parsed()) return cmd_dispersive(config, options, std::cout);
        if (simulate->parsed()) return cmd_simulate(config, options, std::cout);
        if (sweep->parsed()) return cmd_sweep(config, options, std::cout);
        return cmd_validate(config, options, std::cout);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
