// Copyright 2026 The rotbloch Authors
// SPDX-License-Identifier: Apache-2.0

// rotbloch: Bloch oscillations of laser-kicked rotors.
//
//   rotbloch populations  --kick-strength 5 --pulse-period-ps 8.36 --out pops.csv
//   rotbloch alignment    --kick-strength 3,5 --detuning=-0.002,-0.004
//   rotbloch period-sweep --kick-strength 5 --detuning=-0.002,-0.003,-0.004
//   rotbloch semiclassical --kick-strength 3,5,7 --detuning=-0.001,-0.002
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include "rotbloch/errors.hpp"
#include "rotbloch/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Override {
    const char* flag;
    const char* key;
    const char* help;
    std::string value;
};

void write_table(const rotbloch::Table& table, const rotbloch::ExperimentConfig& config) {
    const auto emit = [&](std::ostream& out) {
        if (config.format == rotbloch::OutputFormat::json) {
            rotbloch::write_json(out, table);
        } else {
            rotbloch::write_csv(out, table);
        }
    };
    if (config.out.empty()) {
        emit(std::cout);
        return;
    }
    std::ofstream file(config.out, std::ios::binary);
    if (!file) throw rotbloch::ConfigError("cannot open output file " + config.out);
    emit(file);
    if (!file) throw std::runtime_error("failed writing " + config.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bloch oscillations in the rotation of periodically kicked linear molecules"};
    app.require_subcommand(1);

    std::string config_path;
    unsigned threads = 0;
    bool seedless = false;
    std::vector<Override> overrides{
        {"--revival-time-ps", "revival_time_ps", "Rotational revival time in ps"},
        {"--pulse-period-ps", "pulse_period_ps", "Pulse spacing in ps (replaces --detuning)"},
        {"--temperature-K", "temperature_K", "Rotational temperature in K"},
        {"--even-weight", "even_weight", "Nuclear-spin weight of even J"},
        {"--odd-weight", "odd_weight", "Nuclear-spin weight of odd J"},
        {"--kick-strength", "kick_strength", "Kick strength(s) P, comma separated"},
        {"--detuning", "detuning", "Detuning(s) delta, comma separated"},
        {"--pulses", "pulses", "Number of pulses N"},
        {"--jmax", "jmax", "Initial basis cutoff j_max"},
        {"--buffer", "buffer", "Truncation buffer above j_max"},
        {"--samples", "samples", "Delay samples per revival for population alignment"},
        {"--weight-cutoff", "weight_cutoff", "Discarded thermal population"},
        {"--jmax-ceiling", "jmax_ceiling", "Largest j_max the window may grow to"},
        {"--fit-degree", "fit_degree", "Polynomial degree for period extraction"},
        {"--out", "out", "Output file (default: stdout)"},
        {"--format", "format", "Output format: csv or json"},
    };

    const std::vector<std::pair<const char*, const char*>> commands{
        {"populations", "Thermally averaged J populations after each pulse"},
        {"alignment", "Population alignment per pulse for each (P, delta) pair"},
        {"period-sweep", "Quantum and semiclassical oscillation periods versus detuning"},
        {"semiclassical", "Semiclassical periods for each (P, delta) pair"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "Flat key = value config file");
        sub->add_option("--threads", threads, "Worker threads (0 = all cores)");
        sub->add_flag("--seedless", seedless, "Accepted for compatibility; runs are deterministic");
        for (auto& o : overrides) sub->add_option(o.flag, o.value, o.help);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        const std::string command = app.get_subcommands().front()->get_name();
        rotbloch::ExperimentConfig config;
        if (!config_path.empty()) config = rotbloch::load_config(config_path);
        for (const auto& o : overrides) {
            if (!o.value.empty()) rotbloch::set_config_value(config, o.key, o.value);
        }
        // The subcommand decides the experiment, whatever the file says.
        rotbloch::set_config_value(config, "kind", command);

        const rotbloch::Table table = rotbloch::run_experiment(config, threads);
        for (const auto& warning : table.warnings) std::cerr << "warning: " << warning << '\n';
        write_table(table, config);
    } catch (const rotbloch::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const rotbloch::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
