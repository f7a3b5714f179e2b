#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mitigate/distributions.hpp"
#include "mitigate/oracle.hpp"

namespace mitigate {

// Attack arm description as it appears in the config. "none" is the clean
// arm: the oracle is the ground truth itself.
struct AttackSpec {
    std::string id;
    std::string kind;  // none | missing_coefficient | targeted_ball | linear_bias | eps_mass | flat_bump
    CharacterIndex s_i = 0;         // missing_coefficient
    Point center;                   // targeted_ball
    double radius = 0.0;
    double payload = 0.0;
    Point anchor;                   // linear_bias
    double c = 0.0;
    double eps = 0.0;               // eps_mass
    double offset = 0.0;
    std::uint64_t attack_seed = 0;
};

struct DomainSpec {
    std::string kind = "ball";  // ball | box | cube
    int n = 0;
    double half_width = 0.0;  // box
};

struct ExperimentConfig {
    std::string experiment;
    MitigationParams params;
    LabelModel label_model;
    DomainSpec domain;
    std::vector<AttackSpec> attacks;
    Point x_star;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::string out;

    int degree = 0;               // local-poly and the lower-bound demo

    std::string base_experiment;  // security-suite only
    std::vector<Point> probes;    // cutoff dissimilarity probes
    double rounding_beta = 0.0;   // 0 disables rounding of real outputs

    // robust-mean knobs
    double rm_mu = 0.0;
    double rm_noise_a = 0.0;
    double rm_contam_eps = 0.0;
    double rm_contam_value = 0.0;
    bool rm_symmetric = true;
    std::size_t rm_m = 0;

    // rounding-wrap knobs
    double rw_y = 0.0;
    double rw_jitter = 0.0;

    std::size_t demo_draws = 10000;  // poly-lower-bound-demo

    nlohmann::json raw;  // as parsed, for provenance in the summary
};

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config_file(const std::string& path);

// Dotted-path override, value parsed as a JSON literal when possible,
// otherwise taken as a string. "params.tau=0.25" style.
void apply_override(nlohmann::json& doc, const std::string& assignment);

// Fail-fast theorem-precondition validation; throws ConfigError naming the
// violated inequality. No trial runs on an invalid regime.
void validate_config(const ExperimentConfig& cfg);

struct ReportRow {
    std::string experiment;
    std::string attack;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double value = 0.0;       // y* / mu-hat; NaN where not applicable
    std::string coeff_set;    // sorted hex masks joined by '+', empty otherwise
    double loss = 0.0;        // per-trial loss or absolute error
    std::uint64_t queries = 0;
    std::uint64_t samples = 0;
    std::size_t accepted = 0;
    std::size_t discarded = 0;
};

struct MitigationReport {
    static constexpr int kSchemaVersion = 1;
    std::vector<ReportRow> rows;  // ordered by (attack index, trial index)
    nlohmann::json summary;

    std::string csv() const;
};

std::string serialize_coeff_set(const std::set<CharacterIndex>& s);

MitigationReport run_experiment(const ExperimentConfig& cfg);

// >= 2 attack arms over one planted ground truth: per-arm accuracy, cross-arm
// dissimilarity on matched substreams, and bias statistics.
MitigationReport security_suite(const ExperimentConfig& cfg);

// Writes rows to cfg.out and the summary to cfg.out + ".summary.json".
void write_report(const MitigationReport& report, const std::string& out_path);

}  // namespace mitigate
