// Copyright 2026 The rotbloch Authors
// SPDX-License-Identifier: Apache-2.0

#include "rotbloch/experiment.hpp"

#include "rotbloch/errors.hpp"
#include "rotbloch/lattice_models.hpp"
#include "rotbloch/observables.hpp"
#include "rotbloch/period.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rotbloch {

std::string_view to_string(ExperimentKind kind) noexcept {
    switch (kind) {
        case ExperimentKind::populations: return "populations";
        case ExperimentKind::alignment_series: return "alignment_series";
        case ExperimentKind::period_sweep: return "period_sweep";
        case ExperimentKind::semiclassical_sweep: return "semiclassical_sweep";
    }
    return "unknown";
}

std::string_view to_string(OutputFormat format) noexcept {
    return format == OutputFormat::json ? "json" : "csv";
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string quoted(std::string_view key) { return "'" + std::string(key) + "'"; }

double parse_double(std::string_view key, std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ConfigError("invalid number " + quoted(text) + " for " + quoted(key));
    }
    return value;
}

int parse_int(std::string_view key, std::string_view text) {
    text = trim(text);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError("invalid integer " + quoted(text) + " for " + quoted(key));
    }
    return value;
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
    std::vector<double> values;
    while (true) {
        const auto comma = text.find(',');
        values.push_back(parse_double(key, text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return values;
}

std::string join(const std::vector<double>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ",";
        s += format_number(values[i]);
    }
    return s;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

}  // namespace

void set_config_value(ExperimentConfig& c, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    if (key == "kind") {
        if (value == "populations") {
            c.kind = ExperimentKind::populations;
        } else if (value == "alignment_series" || value == "alignment") {
            c.kind = ExperimentKind::alignment_series;
        } else if (value == "period_sweep" || value == "period-sweep") {
            c.kind = ExperimentKind::period_sweep;
        } else if (value == "semiclassical_sweep" || value == "semiclassical") {
            c.kind = ExperimentKind::semiclassical_sweep;
        } else {
            throw ConfigError("unknown experiment kind " + quoted(value));
        }
    } else if (key == "revival_time_ps") {
        c.revival_time_ps = parse_double(key, value);
    } else if (key == "even_weight") {
        c.even_weight = parse_double(key, value);
    } else if (key == "odd_weight") {
        c.odd_weight = parse_double(key, value);
    } else if (key == "temperature_K") {
        c.temperature_k = parse_double(key, value);
    } else if (key == "kick_strength") {
        c.kick_strengths = parse_list(key, value);
    } else if (key == "detuning") {
        c.detunings = parse_list(key, value);
    } else if (key == "pulse_period_ps") {
        c.pulse_period_ps =
            value.empty() ? std::nullopt : std::optional<double>(parse_double(key, value));
    } else if (key == "pulses") {
        c.pulses = parse_int(key, value);
    } else if (key == "jmax") {
        c.j_max = parse_int(key, value);
    } else if (key == "buffer") {
        c.buffer = parse_int(key, value);
    } else if (key == "samples") {
        c.samples = parse_int(key, value);
    } else if (key == "weight_cutoff") {
        c.weight_cutoff = parse_double(key, value);
    } else if (key == "leakage_tolerance") {
        c.leakage_tolerance = parse_double(key, value);
    } else if (key == "jmax_ceiling") {
        c.j_max_ceiling = parse_int(key, value);
    } else if (key == "fit_degree") {
        c.fit_degree = parse_int(key, value);
    } else if (key == "semiclassical_dn") {
        c.semiclassical_dn = parse_double(key, value);
    } else if (key == "semiclassical_n_max") {
        c.semiclassical_n_max = parse_double(key, value);
    } else if (key == "out") {
        c.out = std::string(value);
    } else if (key == "format") {
        if (value == "csv") {
            c.format = OutputFormat::csv;
        } else if (value == "json") {
            c.format = OutputFormat::json;
        } else {
            throw ConfigError("unknown output format " + quoted(value));
        }
    } else {
        throw ConfigError("unknown config key " + quoted(key));
    }
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
    int line_number = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_number;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_number) + ": expected 'key = value'");
        }
        set_config_value(base, line.substr(0, eq), line.substr(eq + 1));
    }
    return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), std::move(base));
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& c) {
    return {
        {"kind", std::string(to_string(c.kind))},
        {"revival_time_ps", format_number(c.revival_time_ps)},
        {"even_weight", format_number(c.even_weight)},
        {"odd_weight", format_number(c.odd_weight)},
        {"temperature_K", format_number(c.temperature_k)},
        {"kick_strength", join(c.kick_strengths)},
        {"detuning", join(c.detunings)},
        {"pulse_period_ps", c.pulse_period_ps ? format_number(*c.pulse_period_ps) : ""},
        {"pulses", std::to_string(c.pulses)},
        {"jmax", std::to_string(c.j_max)},
        {"buffer", std::to_string(c.buffer)},
        {"samples", std::to_string(c.samples)},
        {"weight_cutoff", format_number(c.weight_cutoff)},
        {"leakage_tolerance", format_number(c.leakage_tolerance)},
        {"jmax_ceiling", std::to_string(c.j_max_ceiling)},
        {"fit_degree", std::to_string(c.fit_degree)},
        {"semiclassical_dn", format_number(c.semiclassical_dn)},
        {"semiclassical_n_max", format_number(c.semiclassical_n_max)},
        {"out", c.out},
        {"format", std::string(to_string(c.format))},
    };
}

std::string serialize_config(const ExperimentConfig& config) {
    std::string text;
    for (const auto& [key, value] : config_entries(config)) text += key + " = " + value + "\n";
    return text;
}

void ExperimentConfig::validate() const {
    require(revival_time_ps > 0.0, "revival_time_ps must be positive");
    require(even_weight >= 0.0 && odd_weight >= 0.0 && even_weight + odd_weight > 0.0,
            "spin weights must be >= 0 and not both zero");
    require(temperature_k >= 0.0, "temperature_K must be >= 0");
    require(!kick_strengths.empty(), "kick_strength needs at least one value");
    for (double p : kick_strengths) require(p >= 0.0, "kick_strength values must be >= 0");
    require(pulse_period_ps || !detunings.empty(), "detuning needs at least one value");
    for (double d : effective_detunings()) require(d > -1.0, "detuning values must exceed -1");
    require(pulses >= 1, "pulses must be >= 1");
    require(j_max >= 1, "jmax must be >= 1");
    require(buffer >= 2, "buffer must be >= 2");
    require(samples >= 1, "samples must be >= 1");
    require(weight_cutoff > 0.0 && weight_cutoff < 1.0, "weight_cutoff must lie in (0, 1)");
    require(leakage_tolerance > 0.0, "leakage_tolerance must be positive");
    require(j_max_ceiling >= j_max, "jmax_ceiling must be >= jmax");
    require(fit_degree >= 2, "fit_degree must be >= 2");
    require(semiclassical_dn > 0.0 && semiclassical_dn <= 0.01,
            "semiclassical_dn must lie in (0, 0.01]");
    require(semiclassical_n_max > 0.0, "semiclassical_n_max must be positive");
    if (kind == ExperimentKind::period_sweep) {
        require(pulses >= fit_degree + 2, "period_sweep needs pulses >= fit_degree + 2");
        require(kick_strengths.size() == 1, "period_sweep takes a single kick_strength");
    }
    if (kind == ExperimentKind::populations) {
        require(kick_strengths.size() == 1 && effective_detunings().size() == 1,
                "populations takes a single kick_strength and detuning");
    }
}

MoleculeSpec ExperimentConfig::molecule() const {
    return MoleculeSpec::from_revival_time(Picoseconds{revival_time_ps}, even_weight, odd_weight,
                                           temperature_k);
}

std::vector<double> ExperimentConfig::effective_detunings() const {
    if (pulse_period_ps) return {*pulse_period_ps / revival_time_ps - 1.0};
    return detunings;
}

// ---------------------------------------------------------------------------
// Drivers
// ---------------------------------------------------------------------------

namespace {

Table table_with_metadata(const ExperimentConfig& config) {
    Table table;
    table.metadata.emplace_back("rotbloch_version", std::string(kVersion));
    for (auto& entry : config_entries(config)) {
        // Where the table is written does not affect its contents.
        if (entry.first == "out") continue;
        table.metadata.push_back(std::move(entry));
    }
    return table;
}

std::string pair_label(double p, double delta) {
    return "P=" + format_number(p) + ",delta=" + format_number(delta);
}

struct EnsembleRun {
    std::vector<EnsembleMember> ensemble;
    std::vector<StroboscopicRecord> records;
};

EnsembleRun run_ensemble(const ExperimentConfig& config, double p, double delta,
                         unsigned threads) {
    EnsembleRun run;
    run.ensemble = thermal_ensemble(config.molecule(), config.weight_cutoff);
    const PulseTrainSpec train{p, delta, config.pulses};
    run.records = propagate_ensemble(run.ensemble, train, config.windows(), config.propagation(),
                                     threads);
    return run;
}

// A driver always runs its own kind, whatever the config was loaded as.
ExperimentConfig as_kind(ExperimentConfig config, ExperimentKind kind) {
    config.kind = kind;
    config.validate();
    return config;
}

}  // namespace

Table run_populations(const ExperimentConfig& requested, unsigned threads) {
    const ExperimentConfig config = as_kind(requested, ExperimentKind::populations);
    const EnsembleRun run = run_ensemble(config, config.kick_strengths.front(),
                                         config.effective_detunings().front(), threads);
    const PopulationHistory history = population_history(run.records, run.ensemble);

    Table table = table_with_metadata(config);
    table.columns.emplace_back("n");
    for (int j = 0; j <= history.j_top(); ++j) table.columns.push_back("J" + std::to_string(j));
    for (int n = 0; n <= history.pulse_count(); ++n) {
        std::vector<std::optional<double>> row{static_cast<double>(n)};
        for (int j = 0; j <= history.j_top(); ++j) row.emplace_back(history.populations(n, j));
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table run_alignment_series(const ExperimentConfig& requested, unsigned threads) {
    const ExperimentConfig config = as_kind(requested, ExperimentKind::alignment_series);
    Table table = table_with_metadata(config);
    table.columns.emplace_back("n");
    std::vector<AlignmentSeries> columns;
    for (double p : config.kick_strengths) {
        for (double delta : config.effective_detunings()) {
            const EnsembleRun run = run_ensemble(config, p, delta, threads);
            columns.push_back(alignment_series(run.records, run.ensemble, config.samples));
            table.columns.push_back("alignment[" + pair_label(p, delta) + "]");
        }
    }
    for (int n = 0; n <= config.pulses; ++n) {
        std::vector<std::optional<double>> row{static_cast<double>(n)};
        for (const auto& series : columns) {
            row.emplace_back(n == 0 ? series.initial
                                    : series.values[static_cast<std::size_t>(n - 1)]);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table run_period_sweep(const ExperimentConfig& requested, unsigned threads) {
    const ExperimentConfig config = as_kind(requested, ExperimentKind::period_sweep);
    const double p = config.kick_strengths.front();
    Table table = table_with_metadata(config);
    table.columns = {"delta", "period_quantum", "period_semiclassical", "fit_residual"};

    bool any_period = false;
    for (double delta : config.effective_detunings()) {
        std::vector<std::optional<double>> row{delta, std::nullopt, std::nullopt, std::nullopt};
        const EnsembleRun run = run_ensemble(config, p, delta, threads);
        const AlignmentSeries series = alignment_series(run.records, run.ensemble, config.samples);
        try {
            const PeriodEstimate estimate = extract_period(series, config.fit_degree);
            row[1] = estimate.period;
            row[3] = estimate.fit_residual;
        } catch (const NoExtremumError&) {
            table.warnings.push_back("no quantum period resolved for " + pair_label(p, delta));
        }
        row[2] = semiclassical_period(p, delta, config.semiclassical_n_max, config.semiclassical_dn);
        if (!row[2]) {
            table.warnings.push_back("no semiclassical period within n_max for " +
                                     pair_label(p, delta));
        }
        any_period = any_period || row[1] || row[2];
        table.rows.push_back(std::move(row));
    }
    if (!any_period) throw NoExtremumError("no period could be resolved for any detuning");
    return table;
}

Table run_semiclassical_sweep(const ExperimentConfig& requested) {
    const ExperimentConfig config = as_kind(requested, ExperimentKind::semiclassical_sweep);
    Table table = table_with_metadata(config);
    table.columns.emplace_back("delta");
    for (double p : config.kick_strengths) {
        table.columns.push_back("period[P=" + format_number(p) + "]");
    }
    for (double delta : config.effective_detunings()) {
        std::vector<std::optional<double>> row{delta};
        for (double p : config.kick_strengths) {
            row.push_back(
                semiclassical_period(p, delta, config.semiclassical_n_max, config.semiclassical_dn));
            if (!row.back()) {
                table.warnings.push_back("no semiclassical period within n_max for " +
                                         pair_label(p, delta));
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table run_experiment(const ExperimentConfig& config, unsigned threads) {
    switch (config.kind) {
        case ExperimentKind::populations: return run_populations(config, threads);
        case ExperimentKind::alignment_series: return run_alignment_series(config, threads);
        case ExperimentKind::period_sweep: return run_period_sweep(config, threads);
        case ExperimentKind::semiclassical_sweep: return run_semiclassical_sweep(config);
    }
    throw ConfigError("unknown experiment kind");
}

}  // namespace rotbloch
