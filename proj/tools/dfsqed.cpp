// dfsqed: run one named experiment and write its report.
//
//   dfsqed <experiment> [--config PATH] [--out PATH] [--format json|csv] [--seed N]
//
// Exit status: 0 pass, 1 experiment failed (report still written), 2 bad
// configuration or arguments.

#include "dfsqed/experiments.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

int config_error(const std::string& msg) {
    std::cerr << "dfsqed: configuration error: " << msg << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decoherence-free cavity QED experiments"};
    std::string experiment, config_path, out_path, format;
    std::uint64_t seed = 0;
    app.add_option("experiment", experiment, "Experiment name")->required()->check(CLI::IsMember(dfsqed::experiment_names()));
    app.add_option("--config", config_path, "Configuration file (key = value)");
    app.add_option("--out", out_path, "Output path; stdout when omitted");
    auto* fmt = app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    auto* seed_opt = app.add_option("--seed", seed, "Sampling seed");
    app.set_version_flag("--version", std::string(dfsqed::kVersion));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    dfsqed::ExperimentConfig cfg;
    try {
        std::string text;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) return config_error("cannot read " + config_path);
            std::ostringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        cfg = dfsqed::parse_config(text, experiment);
        if (cfg.experiment != experiment)
            return config_error("config names experiment '" + cfg.experiment + "' but '" + experiment + "' was requested");
        if (*fmt) cfg.format = format;
        if (*seed_opt) cfg.seed = seed;
        if (!out_path.empty()) cfg.output = out_path;
        dfsqed::validate_config(cfg);
    } catch (const dfsqed::ConfigError& e) {
        return config_error(e.what());
    } catch (const std::invalid_argument& e) {
        return config_error(e.what());
    }

    const auto start = std::chrono::steady_clock::now();
    dfsqed::ExperimentOutcome outcome;
    try {
        outcome = dfsqed::run_experiment(cfg);
    } catch (const std::invalid_argument& e) {
        return config_error(e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string body = cfg.format == "csv" ? outcome.csv : dfsqed::render_json(outcome.report);
    if (cfg.output.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(cfg.output, std::ios::binary);
        if (!out) return config_error("cannot write " + cfg.output);
        out << body;
    }
    std::fprintf(stderr, "%s: %s in %.3f s\n", experiment.c_str(), outcome.pass ? "PASS" : "FAIL", seconds);
    return outcome.pass ? 0 : 1;
}
