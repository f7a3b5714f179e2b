#include "mitigate/fourier.hpp"

#include <algorithm>
#include <cmath>

#include "mitigate/parallel.hpp"

namespace mitigate {

double eval_character(CharacterIndex s, const Point& x) {
    if (x.size() < 64 && (s >> x.size()) != 0)
        throw DimensionError("character index exceeds point dimension");
    double v = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if ((s >> i) & 1u) v *= x[i];
    return v;
}

double FourierSpectrum::evaluate(const Point& x) const {
    return evaluate_mask(cube_mask(x));
}

FunctionOracle FourierSpectrum::as_oracle() const {
    FourierSpectrum copy = *this;
    return FunctionOracle(copy.n, [copy](std::uint64_t m) { return copy.evaluate_mask(m); });
}

FourierSpectrum wht_bruteforce(const std::vector<double>& truth_table) {
    std::size_t len = truth_table.size();
    if (len == 0 || (len & (len - 1)) != 0)
        throw ShapeError("truth table length must be a power of two");
    int n = 0;
    while ((1ULL << n) < len) ++n;
    if (n > 24) throw ShapeError("exhaustive transform limited to n <= 24");

    // In-place butterfly computes H[s] = sum_m (-1)^{popcount(s & m)} f[m];
    // our character convention flips the sign by (-1)^{|S|}.
    std::vector<double> h = truth_table;
    for (std::size_t half = 1; half < len; half <<= 1) {
        for (std::size_t block = 0; block < len; block += 2 * half) {
            for (std::size_t i = block; i < block + half; ++i) {
                double a = h[i], b = h[i + half];
                h[i] = a + b;
                h[i + half] = a - b;
            }
        }
    }

    FourierSpectrum spec;
    spec.n = n;
    double scale = 1.0 / static_cast<double>(len);
    for (std::size_t s = 0; s < len; ++s) {
        double c = scale * h[s];
        if (std::popcount(s) & 1u) c = -c;
        if (std::fabs(c) > 1e-14) spec.coeffs.emplace(s, c);
    }
    return spec;
}

std::vector<double> synthesize_table(const FourierSpectrum& spec) {
    if (spec.n > 24) throw ShapeError("synthesis limited to n <= 24");
    std::size_t len = 1ULL << spec.n;
    std::vector<double> table(len, 0.0);
    for (std::size_t m = 0; m < len; ++m) table[m] = spec.evaluate_mask(m);
    return table;
}

double estimate_coefficient_from_samples(CharacterIndex s,
                                         const std::vector<LabeledExample>& samples) {
    if (samples.empty()) throw EmptySample("no samples for coefficient estimate");
    double acc = 0.0;
    for (const LabeledExample& ex : samples) acc += ex.y * eval_character(s, ex.x);
    return acc / static_cast<double>(samples.size());
}

GLConfig GLConfig::resolved(int n) const {
    if (tau <= 0.0) throw ConfigError("GL threshold tau must be > 0");
    if (tau > 2.0) throw ConfigError("GL threshold tau must be <= 2 for [-1,1]-valued oracles");
    if (fail_prob <= 0.0 || fail_prob > 1.0) throw ConfigError("GL fail_prob must be in (0,1]");
    if (n < 1 || n > 63) throw ConfigError("GL supports 1 <= n <= 63");

    GLConfig r = *this;
    double base = 0.75 * tau;  // the 3 tau / 4 list guarantee
    if (r.leaf_keep <= 0.0) r.leaf_keep = 0.875 * tau;
    if (r.leaf_acc <= 0.0) r.leaf_acc = 0.125 * tau;
    if (r.bucket_prune <= 0.0) r.bucket_prune = base * base * 0.75;
    if (r.bucket_acc <= 0.0) r.bucket_acc = base * base * 0.25;

    // Hoeffding (range-2 summands) with a union bound over every bucket and
    // leaf estimate the recursion can perform.
    double cap = std::ceil(16.0 / (9.0 * tau * tau));
    double total_estimates = 2.0 * n * cap + cap;
    double log_term = std::log(2.0 * total_estimates / fail_prob);
    if (r.bucket_samples == 0)
        r.bucket_samples =
            static_cast<std::size_t>(std::ceil(2.0 / (r.bucket_acc * r.bucket_acc) * log_term));
    if (r.leaf_samples == 0)
        r.leaf_samples =
            static_cast<std::size_t>(std::ceil(2.0 / (r.leaf_acc * r.leaf_acc) * log_term));
    if (r.query_budget == 0)
        r.query_budget = 4ULL * static_cast<std::uint64_t>(n) * r.bucket_samples +
                         2ULL * r.leaf_samples;
    return r;
}

namespace {

double oracle_eval(const FunctionOracle& f, std::uint64_t mask, int n) {
    if (f.has_cube_fn()) return f.eval_mask(mask);
    return f(cube_point(mask, n));
}

}  // namespace

std::set<CharacterIndex> goldreich_levin(const FunctionOracle& f, int n, const GLConfig& cfg_in,
                                         RandomStream& rng) {
    GLConfig cfg = cfg_in.resolved(n);

    // Parseval rules out any coefficient above 1; an unreachable corridor
    // means an empty list without spending queries.
    if (cfg.leaf_keep - cfg.leaf_acc > 1.0) return {};

    const std::uint64_t start_queries = f.query_count();
    auto check_budget = [&](std::uint64_t upcoming) {
        if (f.query_count() - start_queries + upcoming > cfg.query_budget)
            throw BudgetExceeded("Goldreich-Levin query budget exhausted");
    };

    // Hard cap on live buckets; true weights sum to at most 1, so anything
    // beyond this is estimator noise and the lightest are dropped.
    const std::size_t live_cap = static_cast<std::size_t>(
        std::ceil(2.0 / std::max(1e-12, cfg.bucket_prune - cfg.bucket_acc)));

    std::vector<std::uint64_t> live{0};  // prefix length 0

    for (int k = 1; k <= n; ++k) {
        std::vector<std::uint64_t> children;
        children.reserve(2 * live.size());
        const std::uint64_t high_bit = 1ULL << (k - 1);
        for (std::uint64_t j : live) {
            children.push_back(j);
            children.push_back(j | high_bit);
        }

        // Shared sample batch for every bucket at this level: the bucket
        // weight is E[f(z,x) f(z',x) chi_J(z) chi_J(z')] with z, z' uniform
        // prefixes and a common suffix x.
        const std::size_t m = cfg.bucket_samples;
        check_budget(2 * m);
        RandomStream level_rng = substream(rng.bits(), static_cast<std::uint64_t>(k));
        const std::uint64_t prefix_mask = (k == 64) ? ~0ULL : ((1ULL << k) - 1);
        const std::uint64_t suffix_mask = ((n == 64) ? ~0ULL : ((1ULL << n) - 1)) & ~prefix_mask;

        std::vector<double> prod(m);
        std::vector<std::uint64_t> diff(m);
        for (std::size_t i = 0; i < m; ++i) {
            std::uint64_t x = level_rng.bits() & suffix_mask;
            std::uint64_t z = level_rng.bits() & prefix_mask;
            std::uint64_t zp = level_rng.bits() & prefix_mask;
            prod[i] = oracle_eval(f, z | x, n) * oracle_eval(f, zp | x, n);
            diff[i] = z ^ zp;
        }

        std::vector<double> weight(children.size(), 0.0);
        for_each_index(static_cast<std::int64_t>(children.size()), true, [&](std::int64_t ci) {
            const std::uint64_t j = children[static_cast<std::size_t>(ci)];
            double acc = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                double signed_p = (std::popcount(j & diff[i]) & 1) ? -prod[i] : prod[i];
                acc += signed_p;
            }
            weight[static_cast<std::size_t>(ci)] = acc / static_cast<double>(m);
        });

        std::vector<std::pair<double, std::uint64_t>> kept;
        for (std::size_t ci = 0; ci < children.size(); ++ci)
            if (weight[ci] >= cfg.bucket_prune) kept.emplace_back(weight[ci], children[ci]);
        if (kept.size() > live_cap) {
            std::sort(kept.begin(), kept.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
            kept.resize(live_cap);
        }
        live.clear();
        for (const auto& [w, j] : kept) live.push_back(j);
        if (live.empty()) return {};
    }

    // Leaf pass: direct coefficient estimates from one shared batch.
    const std::size_t m = cfg.leaf_samples;
    check_budget(m);
    RandomStream leaf_rng = substream(rng.bits(), static_cast<std::uint64_t>(n) + 1);
    const std::uint64_t full_mask = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
    std::vector<double> value(m);
    std::vector<std::uint64_t> xs(m);
    for (std::size_t i = 0; i < m; ++i) {
        xs[i] = leaf_rng.bits() & full_mask;
        value[i] = oracle_eval(f, xs[i], n);
    }

    std::vector<double> est(live.size(), 0.0);
    for_each_index(static_cast<std::int64_t>(live.size()), true, [&](std::int64_t ci) {
        const std::uint64_t s = live[static_cast<std::size_t>(ci)];
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double signed_v = (std::popcount(s & ~xs[i]) & 1) ? -value[i] : value[i];
            acc += signed_v;
        }
        est[static_cast<std::size_t>(ci)] = acc / static_cast<double>(m);
    });

    std::set<CharacterIndex> out;
    for (std::size_t ci = 0; ci < live.size(); ++ci)
        if (std::fabs(est[ci]) >= cfg.leaf_keep) out.insert(live[ci]);
    return out;
}

}  // namespace mitigate
