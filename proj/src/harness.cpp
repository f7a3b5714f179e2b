#include "mitigate/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mitigate/adversary.hpp"
#include "mitigate/global.hpp"
#include "mitigate/local_linear.hpp"
#include "mitigate/local_poly.hpp"
#include "mitigate/parallel.hpp"
#include "mitigate/robust.hpp"

namespace mitigate {

using nlohmann::json;

namespace {

Point parse_point(const json& arr) {
    if (!arr.is_array()) throw ConfigError("expected a coordinate array");
    Point p;
    for (const auto& v : arr) p.push_back(v.get<double>());
    return p;
}

CharacterIndex parse_mask(const json& v) {
    if (v.is_number_unsigned() || v.is_number_integer()) return v.get<std::uint64_t>();
    if (v.is_string()) return std::stoull(v.get<std::string>(), nullptr, 0);
    throw ConfigError("character index must be an integer or a hex string");
}

NoiseModel parse_noise(const json& doc) {
    std::string kind = doc.value("kind", "none");
    if (kind == "none") return NoiseModel::none();
    if (kind == "bounded_uniform") return NoiseModel::bounded_uniform(doc.at("a").get<double>());
    if (kind == "scaled_rademacher") return NoiseModel::scaled_rademacher(doc.at("a").get<double>());
    if (kind == "truncated_gaussian")
        return NoiseModel::truncated_gaussian(doc.at("sigma").get<double>(),
                                              doc.at("cut").get<double>());
    throw ConfigError("unknown noise kind: " + kind);
}

LabelModel parse_label_model(const json& doc, int n) {
    NoiseModel noise = doc.contains("noise") ? parse_noise(doc.at("noise")) : NoiseModel::none();
    std::string kind = doc.value("kind", "affine");
    if (kind == "affine") {
        std::vector<double> w(static_cast<std::size_t>(n), 0.0);
        if (doc.contains("weights")) {
            w.clear();
            for (const auto& v : doc.at("weights")) w.push_back(v.get<double>());
        }
        return LabelModel::affine(std::move(w), doc.value("intercept", 0.0), noise);
    }
    if (kind == "fourier_heavy") {
        FourierSpectrum spec;
        if (doc.contains("generator")) {
            const json& gen = doc.at("generator");
            RandomStream rng(gen.value("seed", 1ULL));
            std::string gkind = gen.value("kind", "tau_heavy");
            if (gkind == "tau_heavy")
                spec = make_tau_heavy(n, gen.at("t").get<int>(), gen.at("tau").get<double>(), rng);
            else if (gkind == "shallow_tree")
                spec = make_shallow_tree(n, gen.at("d").get<int>(), rng);
            else
                throw ConfigError("unknown spectrum generator: " + gkind);
        } else {
            spec.n = n;
            for (const auto& [key, val] : doc.at("coeffs").items())
                spec.coeffs[std::stoull(key, nullptr, 0)] = val.get<double>();
        }
        return LabelModel::fourier_heavy(std::move(spec), noise);
    }
    if (kind == "polynomial") {
        std::vector<MonomialTerm> terms;
        for (const auto& t : doc.at("terms")) {
            MonomialTerm term;
            term.coefficient = t.at("coefficient").get<double>();
            for (const auto& e : t.at("exponents")) term.exponents.push_back(e.get<int>());
            terms.push_back(std::move(term));
        }
        return LabelModel::polynomial(std::move(terms), noise);
    }
    throw ConfigError("unknown label model kind: " + kind);
}

AttackSpec parse_attack(const json& doc, std::size_t index) {
    AttackSpec a;
    a.kind = doc.value("kind", "none");
    a.id = doc.value("id", a.kind + "#" + std::to_string(index));
    if (doc.contains("s")) a.s_i = parse_mask(doc.at("s"));
    if (doc.contains("center")) a.center = parse_point(doc.at("center"));
    a.radius = doc.value("radius", 0.0);
    a.payload = doc.value("payload", 0.0);
    if (doc.contains("anchor")) a.anchor = parse_point(doc.at("anchor"));
    a.c = doc.value("c", 0.0);
    a.eps = doc.value("eps", 0.0);
    a.offset = doc.value("offset", 0.0);
    a.attack_seed = doc.value("attack_seed", 0ULL);
    return a;
}

std::shared_ptr<const ConvexBody> make_body(const DomainSpec& d) {
    if (d.kind == "ball") return std::make_shared<BallBody>(d.n);
    if (d.kind == "box") return std::make_shared<BoxBody>(d.n, d.half_width);
    if (d.kind == "cube") return nullptr;
    throw ConfigError("unknown domain kind: " + d.kind);
}

// Attack oracle over the ground truth h. Cube experiments get a mask fast
// path so heavy-support recovery stays cheap.
FunctionOracle make_attack_oracle(const AttackSpec& a, const ExperimentConfig& cfg,
                                  const std::shared_ptr<const ConvexBody>& body) {
    const LabelModel& model = cfg.label_model;
    RealFn h = [model](const Point& x) { return model.evaluate_clean(x); };
    const bool cube = cfg.domain.kind == "cube";
    const int n = cfg.domain.n;

    if (a.kind == "none") {
        if (cube && model.kind == LabelModel::Kind::FourierHeavy) return model.spectrum.as_oracle();
        return FunctionOracle(std::move(h));
    }
    if (a.kind == "missing_coefficient") {
        if (model.kind != LabelModel::Kind::FourierHeavy)
            throw ConfigError("missing_coefficient needs a fourier_heavy label model");
        return missing_coefficient_attack(model.spectrum, a.s_i).oracle;
    }
    if (a.kind == "targeted_ball") {
        if (!body) throw ConfigError("targeted_ball needs a continuous domain");
        return targeted_ball_attack(std::move(h), *body, a.center, a.radius, a.payload,
                                    cfg.params.epsilon, a.attack_seed ^ 0x5eedULL)
            .oracle;
    }
    if (a.kind == "linear_bias") {
        Point anchor = a.anchor;
        if (anchor.empty()) anchor.assign(static_cast<std::size_t>(n), 0.0);
        return linear_bias_attack(std::move(h), std::move(anchor), a.c);
    }
    if (a.kind == "eps_mass") {
        if (cube && model.kind == LabelModel::Kind::FourierHeavy) {
            FourierSpectrum spec = model.spectrum;
            double eps = a.eps, offset = a.offset;
            std::uint64_t seed = a.attack_seed;
            return FunctionOracle(n, [spec, eps, offset, seed, n](std::uint64_t mask) {
                double base = spec.evaluate_mask(mask);
                return eps_mass_member(cube_point(mask, n), eps, seed) ? base + offset : base;
            });
        }
        return eps_mass_offset_attack(std::move(h), a.eps, a.offset, a.attack_seed);
    }
    throw ConfigError("unknown attack kind: " + a.kind);
}

double binomial_se(double p, std::size_t trials) {
    if (trials == 0) return 0.0;
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(trials));
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Exact square loss between two sparse spectra under the uniform cube law,
// via Parseval on their difference.
double spectral_square_loss(const FourierSpectrum& g, const FourierSpectrum& h) {
    double acc = 0.0;
    std::set<CharacterIndex> keys;
    for (const auto& [s, c] : g.coeffs) keys.insert(s);
    for (const auto& [s, c] : h.coeffs) keys.insert(s);
    for (CharacterIndex s : keys) {
        double d = g.coefficient(s) - h.coefficient(s);
        acc += d * d;
    }
    return acc;
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
    ExperimentConfig cfg;
    cfg.raw = doc;
    cfg.experiment = doc.value("experiment", "");
    cfg.trials = doc.value("trials", 0ULL);
    cfg.seed = doc.value("seed", 1ULL);
    cfg.out = doc.value("out", "");

    const json& p = doc.contains("params") ? doc.at("params") : json::object();
    cfg.params.n = p.value("n", 0);
    cfg.params.s = p.value("s", 0);
    cfg.params.tau = p.value("tau", 0.0);
    cfg.params.eps0 = p.value("eps0", 0.0);
    cfg.params.eps1 = p.value("eps1", 0.0);
    cfg.params.delta0 = p.value("delta0", 0.0);
    cfg.params.delta1 = p.value("delta1", 0.0);
    cfg.params.epsilon = p.value("epsilon", 0.0);

    cfg.domain.kind = doc.contains("domain") ? doc.at("domain").value("kind", "ball")
                                             : std::string("ball");
    cfg.domain.n = doc.contains("domain") ? doc.at("domain").value("n", cfg.params.n)
                                          : cfg.params.n;
    if (doc.contains("domain")) cfg.domain.half_width = doc.at("domain").value("half_width", 0.0);

    if (doc.contains("label_model"))
        cfg.label_model = parse_label_model(doc.at("label_model"), cfg.domain.n);
    else
        cfg.label_model =
            LabelModel::affine(std::vector<double>(static_cast<std::size_t>(cfg.domain.n), 0.0), 0.0);

    if (doc.contains("attacks")) {
        std::size_t i = 0;
        for (const auto& a : doc.at("attacks")) cfg.attacks.push_back(parse_attack(a, i++));
    }
    if (cfg.attacks.empty()) {
        AttackSpec clean;
        clean.kind = "none";
        clean.id = "clean";
        cfg.attacks.push_back(clean);
    }

    if (doc.contains("x_star")) cfg.x_star = parse_point(doc.at("x_star"));
    if (cfg.x_star.empty() && cfg.domain.kind != "cube")
        cfg.x_star.assign(static_cast<std::size_t>(cfg.domain.n), 0.0);

    cfg.degree = doc.value("degree", 0);
    cfg.base_experiment = doc.value("base_experiment", "");
    cfg.rounding_beta = doc.value("rounding_beta", 0.0);
    if (doc.contains("probes"))
        for (const auto& pr : doc.at("probes")) cfg.probes.push_back(parse_point(pr));

    if (doc.contains("robust_mean")) {
        const json& r = doc.at("robust_mean");
        cfg.rm_mu = r.value("mu", 0.0);
        cfg.rm_noise_a = r.value("noise_a", 1.0);
        cfg.rm_contam_eps = r.value("contam_eps", 0.0);
        cfg.rm_contam_value = r.value("contam_value", 0.0);
        cfg.rm_symmetric = r.value("symmetric", true);
        cfg.rm_m = r.value("m", 10000ULL);
    }
    if (doc.contains("rounding_wrap")) {
        const json& r = doc.at("rounding_wrap");
        cfg.rw_y = r.value("y", 0.0);
        cfg.rw_jitter = r.value("jitter", 0.0);
    }
    cfg.demo_draws = doc.value("demo_draws", 10000ULL);
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IOError("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_config(doc);
}

void apply_override(json& doc, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must look like path.to.key=value: " + assignment);
    std::string path = assignment.substr(0, eq);
    std::string value = assignment.substr(eq + 1);

    json* node = &doc;
    std::size_t pos = 0;
    while (true) {
        auto dot = path.find('.', pos);
        std::string key = path.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        if (key.empty()) throw ConfigError("empty key in override path: " + assignment);
        if (dot == std::string::npos) {
            json parsed = json::parse(value, nullptr, false);
            (*node)[key] = parsed.is_discarded() ? json(value) : parsed;
            return;
        }
        node = &(*node)[key];
        pos = dot + 1;
    }
}

void validate_config(const ExperimentConfig& cfg) {
    const MitigationParams& p = cfg.params;
    const std::string& kind =
        cfg.experiment == "security-suite" ? cfg.base_experiment : cfg.experiment;

    if (cfg.experiment == "security-suite" && cfg.attacks.size() < 2)
        throw ConfigError("security-suite requires >= 2 attack arms");

    if (kind == "global-fourier") {
        if (cfg.domain.kind != "cube") throw ConfigError("global-fourier runs on the hypercube");
        if (cfg.label_model.kind != LabelModel::Kind::FourierHeavy)
            throw ConfigError("global-fourier needs a fourier_heavy label model");
        if (p.tau <= 0.0) throw ConfigError("tau > 0 violated");
        if (p.s < 1) throw ConfigError("s >= 1 violated");
        if (p.eps0 > (p.tau / 6.0) * (p.tau / 6.0) + 1e-15)
            throw ConfigError("eps0 <= (tau/6)^2 violated");
        if (p.eps1 <= p.eps0) throw ConfigError("eps1 > eps0 violated");
        return;
    }
    if (kind == "local-linear-basic" || kind == "local-linear-advanced") {
        if (cfg.domain.kind == "cube") throw ConfigError("linear mitigation needs a convex body");
        if (p.s < 1) throw ConfigError("s >= 1 violated");
        if (p.delta1 <= 0.0) throw ConfigError("delta1 > 0 violated");
        if (p.epsilon > 0.01) throw ConfigError("eps <= 1/100 violated");
        if (kind == "local-linear-advanced" && p.epsilon > 0.0) {
            double sigma_n = std::sqrt(cfg.label_model.noise.variance_proxy());
            double cap = (p.delta1 / p.n) / std::sqrt(2.0 * std::log(2.0 / p.epsilon));
            if (sigma_n > cap + 1e-15)
                throw ConfigError("sigma_n <= (delta/n) * (2 ln(2/eps))^{-1/2} violated");
        }
        return;
    }
    if (kind == "local-poly") {
        if (cfg.domain.kind == "cube") throw ConfigError("poly mitigation needs a convex body");
        if (cfg.degree < 1) throw ConfigError("d >= 1 violated");
        if (p.s < 1) throw ConfigError("s >= 1 violated");
        if (p.epsilon > 1.0 / (20.0 * cfg.degree)) throw ConfigError("eps <= 1/(20 d) violated");
        return;
    }
    if (kind == "robust-mean") {
        if (cfg.rm_m < 4) throw ConfigError("m >= 4 violated");
        return;
    }
    if (kind == "rounding-wrap") {
        if (cfg.rounding_beta <= 0.0) throw ConfigError("beta > 0 violated");
        if (p.delta1 <= 0.0) throw ConfigError("delta1 > 0 violated");
        if (cfg.rw_jitter >= p.delta1) throw ConfigError("jitter < delta1 violated");
        return;
    }
    if (kind == "poly-lower-bound-demo") {
        if (cfg.degree < 2 || cfg.degree % 2 != 0) throw ConfigError("d even and >= 2 violated");
        return;
    }
    throw ConfigError("unknown experiment kind: " + kind);
}

std::string serialize_coeff_set(const std::set<CharacterIndex>& s) {
    std::ostringstream out;
    bool first = true;
    for (CharacterIndex c : s) {
        if (!first) out << '+';
        first = false;
        out << "0x" << std::hex << c << std::dec;
    }
    return out.str();
}

namespace {

// One arm of one experiment kind. Trial t always uses substream(seed, t), so
// arms are matched draw for draw and the report is independent of scheduling.
std::vector<ReportRow> run_arm(const ExperimentConfig& cfg, const std::string& kind,
                               const AttackSpec& attack) {
    std::vector<ReportRow> rows(cfg.trials);
    std::shared_ptr<const ConvexBody> body =
        cfg.domain.kind == "cube" ? nullptr : make_body(cfg.domain);
    const LabelModel& model = cfg.label_model;

    auto base_row = [&](std::size_t t) {
        ReportRow row;
        row.experiment = kind;
        row.attack = attack.id;
        row.trial = t;
        row.seed = cfg.seed;
        row.value = std::nan("");
        return row;
    };

    if (kind == "global-fourier") {
        LabeledSampler sampler = make_cube_sampler(model, cfg.domain.n);
        for_each_index(static_cast<std::int64_t>(cfg.trials), true, [&](std::int64_t ti) {
            auto t = static_cast<std::size_t>(ti);
            RandomStream rng = substream(cfg.seed, t);
            // per-trial oracle keeps the query ledger race-free
            FunctionOracle f = make_attack_oracle(attack, cfg, body);
            ReportRow row = base_row(t);
            GlobalMitigationOutput out = fourier_heavy_mitigate(f, sampler, cfg.params, rng);
            row.coeff_set = serialize_coeff_set(out.recovered_set);
            row.loss = spectral_square_loss(out.g, model.spectrum);
            row.queries = out.queries_used;
            row.samples = out.samples_used;
            row.accepted = out.recovered_set.size();
            rows[t] = row;
        });
        return rows;
    }

    if (kind == "local-linear-basic" || kind == "local-linear-advanced" || kind == "local-poly") {
        const double h_star = model.evaluate_clean(cfg.x_star);
        for_each_index(static_cast<std::int64_t>(cfg.trials), true, [&](std::int64_t ti) {
            auto t = static_cast<std::size_t>(ti);
            RandomStream rng = substream(cfg.seed, t);
            // per-trial oracle so query counters never race across trials
            FunctionOracle f = make_attack_oracle(attack, cfg, body);
            ReportRow row = base_row(t);
            LocalEstimate est;
            if (kind == "local-linear-basic") {
                BasicLinearConfig lc;
                lc.s = cfg.params.s;
                lc.delta = cfg.params.delta1;
                lc.eps = cfg.params.epsilon;
                est = basic_linear_mitigate(f, *body, cfg.x_star, lc, rng);
            } else if (kind == "local-linear-advanced") {
                AdvancedLinearConfig lc;
                lc.s = cfg.params.s;
                lc.sigma = std::sqrt(model.noise.variance_proxy());
                lc.delta = cfg.params.delta1;
                lc.eps = cfg.params.epsilon;
                LabeledSampler sampler = make_body_sampler(model, body);
                est = advanced_linear_mitigate(f, sampler, *body, cfg.x_star, lc, rng);
            } else {
                PolyConfig pc;
                pc.n = cfg.domain.n;
                pc.d = cfg.degree;
                pc.s = cfg.params.s;
                pc.delta1 = cfg.params.delta1;
                pc.eps = cfg.params.epsilon;
                est = poly_mitigate(f, *body, cfg.x_star, pc, rng);
            }
            row.value = est.y_star;
            row.loss = std::fabs(est.y_star - h_star);
            row.queries = est.queries;
            row.samples = est.samples;
            row.accepted = est.accepted;
            row.discarded = est.discarded;
            rows[t] = row;
        });
        return rows;
    }

    if (kind == "robust-mean") {
        for_each_index(static_cast<std::int64_t>(cfg.trials), true, [&](std::int64_t ti) {
            auto t = static_cast<std::size_t>(ti);
            RandomStream rng = substream(cfg.seed, t);
            std::vector<double> values;
            values.reserve(cfg.rm_m);
            for (std::size_t i = 0; i < cfg.rm_m; ++i) {
                if (rng.uniform() < cfg.rm_contam_eps) {
                    double v = cfg.rm_contam_value;
                    if (cfg.rm_symmetric && rng.rademacher() < 0.0) v = -v;
                    values.push_back(v);
                } else {
                    values.push_back(cfg.rm_mu + rng.uniform(-cfg.rm_noise_a, cfg.rm_noise_a));
                }
            }
            ReportRow row = base_row(t);
            row.value = mean_of_medians(values).estimate;
            row.loss = std::fabs(row.value - cfg.rm_mu);
            row.samples = cfg.rm_m;
            rows[t] = row;
        });
        return rows;
    }

    if (kind == "rounding-wrap") {
        for_each_index(static_cast<std::int64_t>(cfg.trials), true, [&](std::int64_t ti) {
            auto t = static_cast<std::size_t>(ti);
            RandomStream rng = substream(cfg.seed, t);
            RoundingConfig rc = RoundingConfig::make(cfg.rounding_beta, cfg.params.delta1, rng);
            double y1 = cfg.rw_y;
            double y2 = cfg.rw_y + rng.uniform(-cfg.rw_jitter, cfg.rw_jitter);
            double r1 = randomized_round(y1, rc);
            double r2 = randomized_round(y2, rc);
            ReportRow row = base_row(t);
            row.value = r1;
            row.loss = std::fabs(r1 - y1);
            row.accepted = r1 == r2 ? 1 : 0;
            rows[t] = row;
        });
        return rows;
    }

    if (kind == "poly-lower-bound-demo") {
        auto [h0, h1] = flat_bump_polynomials(cfg.domain.n, cfg.degree);
        const double threshold = std::pow(static_cast<double>(cfg.domain.n),
                                          -static_cast<double>(cfg.degree) / 4.0);
        for_each_index(static_cast<std::int64_t>(cfg.trials), true, [&](std::int64_t ti) {
            auto t = static_cast<std::size_t>(ti);
            RandomStream rng = substream(cfg.seed, t);
            std::size_t hits = 0;
            for (std::size_t i = 0; i < cfg.demo_draws; ++i) {
                Point x = body->sample_uniform(rng);
                if (std::fabs(h1(x) - h0(x)) >= threshold) ++hits;
            }
            ReportRow row = base_row(t);
            row.value = static_cast<double>(hits) / static_cast<double>(cfg.demo_draws);
            row.samples = cfg.demo_draws;
            rows[t] = row;
        });
        return rows;
    }

    throw ConfigError("unknown experiment kind: " + kind);
}

json arm_summary(const ExperimentConfig& cfg, const std::string& kind,
                 const std::vector<ReportRow>& rows) {
    json s;
    s["trials"] = rows.size();
    if (rows.empty()) {
        s["empty"] = true;
        return s;
    }
    double mean_value = 0.0, mean_loss = 0.0;
    std::size_t finite_values = 0;
    for (const ReportRow& r : rows) {
        if (std::isfinite(r.value)) {
            mean_value += r.value;
            ++finite_values;
        }
        mean_loss += r.loss;
    }
    mean_loss /= static_cast<double>(rows.size());
    s["mean_loss"] = mean_loss;
    if (finite_values > 0) {
        mean_value /= static_cast<double>(finite_values);
        double var = 0.0;
        for (const ReportRow& r : rows)
            if (std::isfinite(r.value)) var += (r.value - mean_value) * (r.value - mean_value);
        var /= static_cast<double>(finite_values);
        s["mean_value"] = mean_value;
        s["value_se"] = std::sqrt(var / static_cast<double>(finite_values));
    }

    if (kind == "global-fourier") {
        std::string planted =
            serialize_coeff_set(cfg.label_model.spectrum.heavy_set(cfg.params.tau));
        std::size_t exact = 0, within_eps1 = 0;
        for (const ReportRow& r : rows) {
            if (r.coeff_set == planted) ++exact;
            if (r.loss <= cfg.params.eps1) ++within_eps1;
        }
        double p = static_cast<double>(exact) / static_cast<double>(rows.size());
        s["planted_set"] = planted;
        s["p_exact_recovery"] = p;
        s["p_exact_recovery_se"] = binomial_se(p, rows.size());
        s["p_loss_within_eps1"] =
            static_cast<double>(within_eps1) / static_cast<double>(rows.size());
    }
    if (kind == "local-linear-basic" || kind == "local-linear-advanced" || kind == "local-poly") {
        double radius = kind == "local-linear-basic" ? 0.9 * cfg.params.delta1 : cfg.params.delta1;
        std::size_t failures = 0;
        for (const ReportRow& r : rows)
            if (r.loss >= radius) ++failures;
        double p = static_cast<double>(failures) / static_cast<double>(rows.size());
        s["failure_radius"] = radius;
        s["failure_rate"] = p;
        s["failure_rate_se"] = binomial_se(p, rows.size());
    }
    if (kind == "rounding-wrap") {
        std::size_t agree = 0;
        for (const ReportRow& r : rows) agree += r.accepted;
        double p = 1.0 - static_cast<double>(agree) / static_cast<double>(rows.size());
        s["disagreement_rate"] = p;
        s["disagreement_rate_se"] = binomial_se(p, rows.size());
    }
    return s;
}

}  // namespace

std::string MitigationReport::csv() const {
    std::ostringstream out;
    out << "schema_version,experiment,attack,trial,seed,value,coeff_set,loss,queries,samples,"
           "accepted,discarded\n";
    for (const ReportRow& r : rows) {
        out << kSchemaVersion << ',' << r.experiment << ',' << r.attack << ',' << r.trial << ','
            << r.seed << ',' << fmt_double(r.value) << ',' << r.coeff_set << ','
            << fmt_double(r.loss) << ',' << r.queries << ',' << r.samples << ',' << r.accepted
            << ',' << r.discarded << '\n';
    }
    return out.str();
}

MitigationReport run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    if (cfg.experiment == "security-suite") return security_suite(cfg);

    auto started = std::chrono::steady_clock::now();
    MitigationReport report;
    json arms = json::object();
    for (const AttackSpec& attack : cfg.attacks) {
        std::vector<ReportRow> rows = run_arm(cfg, cfg.experiment, attack);
        arms[attack.id] = arm_summary(cfg, cfg.experiment, rows);
        report.rows.insert(report.rows.end(), rows.begin(), rows.end());
    }
    auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            started);

    report.summary["schema_version"] = MitigationReport::kSchemaVersion;
    report.summary["experiment"] = cfg.experiment;
    report.summary["seed"] = cfg.seed;
    report.summary["trials"] = cfg.trials;
    report.summary["empty"] = cfg.trials == 0;
    report.summary["arms"] = arms;
    report.summary["wall_ms"] = elapsed.count();
    return report;
}

MitigationReport security_suite(const ExperimentConfig& cfg) {
    validate_config(cfg);
    auto started = std::chrono::steady_clock::now();

    MitigationReport report;
    std::vector<std::vector<ReportRow>> per_arm;
    json arms = json::object();
    for (const AttackSpec& attack : cfg.attacks) {
        std::vector<ReportRow> rows = run_arm(cfg, cfg.base_experiment, attack);
        arms[attack.id] = arm_summary(cfg, cfg.base_experiment, rows);
        per_arm.push_back(rows);
        report.rows.insert(report.rows.end(), rows.begin(), rows.end());
    }

    // Cross-arm dissimilarity on matched substreams. Coefficient sets compare
    // as strings through the empirical TV; real outputs compare through the
    // matched-pair cutoff rate at delta1, optionally after rounding onto a
    // shared grid.
    json cross = json::array();
    for (std::size_t a = 0; a < per_arm.size(); ++a) {
        for (std::size_t b = a + 1; b < per_arm.size(); ++b) {
            json entry;
            entry["arm_a"] = cfg.attacks[a].id;
            entry["arm_b"] = cfg.attacks[b].id;
            if (cfg.base_experiment == "global-fourier") {
                std::vector<std::string> sa, sb;
                for (const ReportRow& r : per_arm[a]) sa.push_back(r.coeff_set);
                for (const ReportRow& r : per_arm[b]) sb.push_back(r.coeff_set);
                entry["empirical_tv"] = cfg.trials == 0 ? 0.0 : empirical_tv_discrete(sa, sb);
            } else {
                std::size_t exceed = 0;
                std::vector<double> ra, rb;
                for (std::size_t t = 0; t < cfg.trials; ++t) {
                    double va = per_arm[a][t].value;
                    double vb = per_arm[b][t].value;
                    if (std::fabs(va - vb) > cfg.params.delta1) ++exceed;
                    ra.push_back(va);
                    rb.push_back(vb);
                }
                entry["matched_cutoff_rate"] =
                    cfg.trials == 0 ? 0.0
                                    : static_cast<double>(exceed) / static_cast<double>(cfg.trials);
                if (cfg.rounding_beta > 0.0 && cfg.trials > 0) {
                    // shared offset per trial so rounding itself cannot split
                    // the arms
                    std::vector<double> qa, qb;
                    for (std::size_t t = 0; t < cfg.trials; ++t) {
                        RandomStream rng = substream(cfg.seed + 0x9000, t);
                        RoundingConfig rc =
                            RoundingConfig::make(cfg.rounding_beta, cfg.params.delta1, rng);
                        qa.push_back(randomized_round(ra[t], rc));
                        qb.push_back(randomized_round(rb[t], rc));
                    }
                    entry["rounded_tv"] = empirical_tv_discrete(qa, qb);
                }
                double mean_diff = 0.0;
                for (std::size_t t = 0; t < cfg.trials; ++t) mean_diff += ra[t] - rb[t];
                if (cfg.trials > 0) mean_diff /= static_cast<double>(cfg.trials);
                entry["mean_output_difference"] = mean_diff;
            }
            cross.push_back(entry);
        }
    }

    auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            started);
    report.summary["schema_version"] = MitigationReport::kSchemaVersion;
    report.summary["experiment"] = "security-suite";
    report.summary["base_experiment"] = cfg.base_experiment;
    report.summary["seed"] = cfg.seed;
    report.summary["trials"] = cfg.trials;
    report.summary["empty"] = cfg.trials == 0;
    report.summary["arms"] = arms;
    report.summary["cross_arm"] = cross;
    report.summary["attack_library_note"] =
        "finite attack arms witness the adversarial quantifier; they cannot exhaust it";
    report.summary["wall_ms"] = elapsed.count();
    return report;
}

void write_report(const MitigationReport& report, const std::string& out_path) {
    if (out_path.empty()) throw ConfigError("output path is empty");
    std::ofstream csv(out_path);
    if (!csv) throw IOError("cannot write " + out_path);
    csv << report.csv();
    if (!csv) throw IOError("failed writing " + out_path);

    std::string sidecar = out_path + ".summary.json";
    std::ofstream js(sidecar);
    if (!js) throw IOError("cannot write " + sidecar);
    js << report.summary.dump(2) << '\n';
    if (!js) throw IOError("failed writing " + sidecar);
}

}  // namespace mitigate
