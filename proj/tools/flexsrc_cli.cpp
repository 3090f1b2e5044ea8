// Command-line front end for the experiment pipeline.
//
//   flexsrc simulate    --example 1 --out runs/ex1
//   flexsrc reconstruct --example 1 --out runs/ex1 --delta 0.05
//   flexsrc pipeline    --config my.cfg --set theta_max=1.5pi
//   flexsrc table       --example 1 --out runs/table
//
// Settings are applied in order: --example preset, --config file, --set
// overrides, then the dedicated flags. Errors go to stderr as one JSON object.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "flexsrc/experiment.hpp"

namespace {

using flexsrc::ExperimentConfig;

struct Options {
    std::optional<int> example;
    std::string config_file;
    std::vector<std::string> sets;
    std::optional<std::string> out;
    std::optional<std::string> data;
    std::optional<long long> seed;
    std::optional<double> delta;
    std::optional<std::string> deltas;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--example", o.example, "Preset for numerical example 1, 2 or 3")->check(CLI::Range(1, 3));
    cmd->add_option("--config", o.config_file, "Key-value config file")->check(CLI::ExistingFile);
    cmd->add_option("--set", o.sets, "Override one setting, key=value (repeatable)");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--data", o.data, "Measurement data directory (default <out>/data)");
    cmd->add_option("--seed", o.seed, "Noise seed");
    cmd->add_option("--delta", o.delta, "Noise level in [0, 1)");
}

ExperimentConfig build_config(const Options& o) {
    ExperimentConfig cfg = o.example ? flexsrc::example_config(*o.example) : ExperimentConfig{};
    if (!o.config_file.empty()) flexsrc::apply_config_file(cfg, o.config_file);
    for (const std::string& s : o.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + s + "'");
        flexsrc::apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    if (o.out) cfg.output_dir = *o.out;
    if (o.data) cfg.data_dir = *o.data;
    if (o.seed) flexsrc::apply_setting(cfg, "seed", std::to_string(*o.seed));
    if (o.delta) {
        cfg.delta = *o.delta;
        cfg.delta_assumed = false;
    }
    if (o.deltas) flexsrc::apply_setting(cfg, "table_deltas", *o.deltas);
    cfg.validate();
    return cfg;
}

int fail(const std::string& type, const std::string& message, int code) {
    nlohmann::ordered_json j{{"error", message}, {"type", type}};
    std::cerr << j.dump() << '\n';
    return code;
}

void print_result(const flexsrc::ReconstructionResult& r) {
    nlohmann::ordered_json j{{"rel_l2", r.report.rel_l2},
                             {"rel_h1", r.report.rel_h1 ? nlohmann::ordered_json(*r.report.rel_h1) : nullptr},
                             {"N", r.report.N_used},
                             {"delta", r.report.delta},
                             {"reconstruct_s", r.report.wall_time_s}};
    std::cout << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-frequency source reconstruction for the biharmonic wave equation"};
    app.require_subcommand(1);
    Options o;
    auto* simulate = app.add_subcommand("simulate", "Generate measurement data for the configured truncation");
    auto* reconstruct = app.add_subcommand("reconstruct", "Invert existing data and write field, coefficients, report");
    auto* pipeline = app.add_subcommand("pipeline", "simulate (reusing cached data) then reconstruct");
    auto* table = app.add_subcommand("table", "Errors over a list of noise levels");
    for (auto* c : {simulate, reconstruct, pipeline, table}) add_common(c, o);
    table->add_option("--deltas", o.deltas, "Comma-separated noise levels");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), 2);
    }

    try {
        const ExperimentConfig cfg = build_config(o);
        if (simulate->parsed()) {
            const int n = cfg.truncation_order();
            const flexsrc::SimulationSummary s = flexsrc::run_simulate(cfg, n);
            nlohmann::ordered_json j{{"data_dir", flexsrc::simulation_dir(cfg).string()},
                                     {"N", n},
                                     {"files_written", s.files_written},
                                     {"files_reused", s.files_reused},
                                     {"simulate_s", s.wall_time_s}};
            std::cout << j.dump(2) << '\n';
        } else if (reconstruct->parsed()) {
            print_result(flexsrc::run_reconstruct(cfg));
        } else if (pipeline->parsed()) {
            print_result(flexsrc::run_pipeline(cfg));
        } else if (table->parsed()) {
            std::cout << flexsrc::format_table(flexsrc::run_table(cfg));
        }
    } catch (const std::invalid_argument& e) {
        return fail("invalid_argument", e.what(), 1);
    } catch (const std::exception& e) {
        return fail("runtime_error", e.what(), 1);
    }
    return 0;
}
