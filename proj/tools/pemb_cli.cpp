// Command-line front end: synthesize the electrical analog of a beam, run the
// coupled modal simulation, or sanity-check a configuration.
//
// Exit codes: 0 success, 1 validation failure (config schema, preconditions,
// timestep contract), 2 runtime or numeric failure.

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pemb/pemb.hpp"

namespace {

pemb::ProjectConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pemb::config_error("<file>", "cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return pemb::parse_config_text(buf.str());
}

std::vector<int> parse_mode_list(const std::string& csv) {
    std::vector<int> modes;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            const int m = std::stoi(item);
            if (m < 1) throw std::invalid_argument("mode");
            modes.push_back(m);
        } catch (const std::exception&) {
            throw pemb::config_error("--modes", "expected comma-separated positive integers");
        }
    }
    if (modes.empty()) throw pemb::config_error("--modes", "empty mode list");
    return modes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"beam-to-circuit synthesis and piezo-electromechanical simulation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string modes_csv;
    double rho_override = -1.0;
    bool rho_set = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "project configuration file (JSON)")
            ->required();
        cmd->add_option("--out", out_dir, "output directory (overrides config)");
    };

    CLI::App* synth = app.add_subcommand("synth", "write the analog netlist and feasibility report");
    add_common(synth);

    CLI::App* simulate = app.add_subcommand("simulate", "integrate the coupled modal dynamics");
    add_common(simulate);
    simulate->add_option("--modes", modes_csv, "comma-separated mode list (overrides config)");
    simulate->add_option("--rho", rho_override, "coupling parameter override")
        ->check(CLI::NonNegativeNumber)
        ->each([&](const std::string&) { rho_set = true; });

    CLI::App* check = app.add_subcommand("check", "report bandwidth, controllable modes, losslessness");
    add_common(check);

    CLI11_PARSE(app, argc, argv);

    try {
        pemb::ProjectConfig cfg = load_config(config_path);
        if (!out_dir.empty()) cfg.output_directory = out_dir;
        if (!modes_csv.empty()) cfg.simulation.modes = parse_mode_list(modes_csv);
        if (rho_set) cfg.simulation.rho_override = rho_override;

        if (synth->parsed()) {
            const pemb::SynthResult res = pemb::run_synth(cfg);
            std::cout << "netlist written to " << res.netlist_path.string() << "\n";
            std::cout << res.feasibility.to_string() << "\n";
            std::cout << "report written to " << res.feasibility_path.string() << "\n";
        } else if (simulate->parsed()) {
            const pemb::SimResult res = pemb::run_simulate(cfg);
            for (const auto& p : res.csv_paths)
                std::cout << "trajectory written to " << p.string() << "\n";
            std::ifstream summary(res.summary_path);
            std::cout << summary.rdbuf();
            std::cout << "summary written to " << res.summary_path.string() << "\n";
        } else if (check->parsed()) {
            const pemb::CheckResult res = pemb::run_check(cfg);
            std::cout << res.text;
            std::cout << "report written to " << res.path.string() << "\n";
        }
        return 0;
    } catch (const pemb::timestep_error& e) {
        std::fprintf(stderr, "error: %s (required dt <= %.11e)\n", e.what(), e.required_dt());
        return 1;
    } catch (const pemb::config_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const pemb::unimplemented_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const pemb::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const pemb::singularity_error& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "runtime error: %s\n", e.what());
        return 2;
    }
}
