#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mitigate/errors.hpp"
#include "mitigate/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Backdoor mitigation experiment runner"};

    std::string experiment;
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::string out;

    app.add_option("experiment", experiment,
                   "Experiment kind (global-fourier | local-linear-basic | local-linear-advanced "
                   "| local-poly | robust-mean | security-suite | rounding-wrap | "
                   "poly-lower-bound-demo)")
        ->required();
    app.add_option("--config", config_path, "JSON config file")->required();
    app.add_option("--seed", seed, "Master seed override");
    app.add_option("--trials", trials, "Trial count override");
    app.add_option("--out", out, "CSV output path override");
    app.add_option("--set", overrides, "Dotted-path config override, e.g. params.tau=0.25");

    CLI11_PARSE(app, argc, argv);

    try {
        std::ifstream in(config_path);
        if (!in) throw mitigate::IOError("cannot open config file: " + config_path);
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& e) {
            throw mitigate::ConfigError("config is not valid JSON: " + std::string(e.what()));
        }

        doc["experiment"] = experiment;
        if (seed) doc["seed"] = *seed;
        if (trials) doc["trials"] = *trials;
        if (!out.empty()) doc["out"] = out;
        for (const std::string& ov : overrides) mitigate::apply_override(doc, ov);

        mitigate::ExperimentConfig cfg = mitigate::parse_config(doc);
        mitigate::MitigationReport report = mitigate::run_experiment(cfg);

        if (!cfg.out.empty()) {
            mitigate::write_report(report, cfg.out);
            std::cerr << "wrote " << report.rows.size() << " rows to " << cfg.out << "\n";
        } else {
            std::cout << report.csv();
        }
        std::cout << report.summary.dump(2) << "\n";
        return 0;
    } catch (const mitigate::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
