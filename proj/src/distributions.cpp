#include "mitigate/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace mitigate {

NoiseModel NoiseModel::bounded_uniform(double a) {
    if (a < 0.0) throw ConfigError("BoundedUniform needs a >= 0");
    NoiseModel m;
    m.kind = Kind::BoundedUniform;
    m.a = a;
    return m;
}

NoiseModel NoiseModel::scaled_rademacher(double a) {
    if (a < 0.0) throw ConfigError("ScaledRademacher needs a >= 0");
    NoiseModel m;
    m.kind = Kind::ScaledRademacher;
    m.a = a;
    return m;
}

NoiseModel NoiseModel::truncated_gaussian(double sigma, double cut) {
    if (sigma < 0.0 || cut <= 0.0)
        throw ConfigError("TruncatedGaussian needs sigma >= 0 and cut > 0");
    NoiseModel m;
    m.kind = Kind::TruncatedGaussian;
    m.sigma = sigma;
    m.cut = cut;
    return m;
}

double NoiseModel::sample(RandomStream& rng) const {
    switch (kind) {
        case Kind::None: return 0.0;
        case Kind::BoundedUniform: return rng.uniform(-a, a);
        case Kind::ScaledRademacher: return a * rng.rademacher();
        case Kind::TruncatedGaussian: {
            // rejection keeps the law symmetric
            for (;;) {
                double v = sigma * rng.normal();
                if (std::fabs(v) <= cut) return v;
            }
        }
    }
    return 0.0;
}

double NoiseModel::variance_proxy() const {
    switch (kind) {
        case Kind::None: return 0.0;
        case Kind::BoundedUniform: return a * a;
        case Kind::ScaledRademacher: return a * a;
        case Kind::TruncatedGaussian: return std::min(sigma * sigma, cut * cut);
    }
    return 0.0;
}

LabelModel LabelModel::fourier_heavy(FourierSpectrum spec, NoiseModel noise) {
    LabelModel m;
    m.kind = Kind::FourierHeavy;
    m.spectrum = std::move(spec);
    m.noise = noise;
    return m;
}

LabelModel LabelModel::affine(std::vector<double> weights, double intercept, NoiseModel noise) {
    LabelModel m;
    m.kind = Kind::Affine;
    m.weights = std::move(weights);
    m.intercept = intercept;
    m.noise = noise;
    return m;
}

LabelModel LabelModel::polynomial(std::vector<MonomialTerm> terms, NoiseModel noise) {
    LabelModel m;
    m.kind = Kind::Polynomial;
    m.terms = std::move(terms);
    m.noise = noise;
    return m;
}

double LabelModel::evaluate_clean(const Point& x) const {
    switch (kind) {
        case Kind::FourierHeavy: return spectrum.evaluate(x);
        case Kind::Affine: {
            if (x.size() != weights.size())
                throw DimensionError("affine label model: dimension mismatch");
            double v = intercept;
            for (std::size_t i = 0; i < x.size(); ++i) v += weights[i] * x[i];
            return v;
        }
        case Kind::Polynomial: {
            double v = 0.0;
            for (const MonomialTerm& term : terms) {
                if (term.exponents.size() != x.size())
                    throw DimensionError("polynomial label model: dimension mismatch");
                double mono = term.coefficient;
                for (std::size_t i = 0; i < x.size(); ++i)
                    for (int e = 0; e < term.exponents[i]; ++e) mono *= x[i];
                v += mono;
            }
            return v;
        }
    }
    return 0.0;
}

FunctionOracle LabelModel::clean_oracle() const {
    LabelModel copy = *this;
    return FunctionOracle([copy](const Point& x) { return copy.evaluate_clean(x); });
}

LabeledSampler make_body_sampler(LabelModel model, std::shared_ptr<const ConvexBody> body) {
    if (!body) throw ConfigError("make_body_sampler: null body");
    return [model = std::move(model), body](RandomStream& rng) {
        LabeledExample ex;
        ex.x = body->sample_uniform(rng);
        ex.y = model.evaluate_clean(ex.x) + model.noise.sample(rng);
        return ex;
    };
}

LabeledSampler make_cube_sampler(LabelModel model, int n) {
    if (n < 1 || n > 63) throw ConfigError("make_cube_sampler: n must be in [1, 63]");
    return [model = std::move(model), n](RandomStream& rng) {
        std::uint64_t mask = rng.bits();
        if (n < 64) mask &= (1ULL << n) - 1;
        LabeledExample ex;
        ex.x = cube_point(mask, n);
        ex.y = model.evaluate_clean(ex.x) + model.noise.sample(rng);
        return ex;
    };
}

FourierSpectrum make_tau_heavy(int n, int t, double tau, RandomStream& rng) {
    if (n < 1 || n > 63) throw ConfigError("make_tau_heavy: n must be in [1, 63]");
    if (t < 1 || tau <= 0.0) throw ConfigError("make_tau_heavy: need t >= 1 and tau > 0");
    if (static_cast<double>(t) * tau * tau > 1.0 + 1e-12)
        throw ConfigError("make_tau_heavy: t * tau^2 <= 1 violated (Parseval infeasible)");
    const std::uint64_t universe = n >= 63 ? ~0ULL : ((1ULL << n) - 1);
    if (static_cast<double>(t) > std::pow(2.0, n))
        throw ConfigError("make_tau_heavy: t exceeds the number of characters");

    for (int attempt = 0; attempt < 100; ++attempt) {
        std::set<CharacterIndex> support;
        while (support.size() < static_cast<std::size_t>(t)) support.insert(rng.bits() & universe);

        FourierSpectrum spec;
        spec.n = n;
        double l1 = 0.0;
        for (CharacterIndex s : support) {
            double mag = tau * (1.0 + rng.uniform());  // in [tau, 2 tau)
            double c = rng.rademacher() * mag;
            spec.coeffs[s] = c;
            l1 += std::fabs(c);
        }
        if (l1 > 1.0) {
            // bound the sup norm by rescaling; keep only if the floor survives
            bool ok = true;
            for (auto& [s, c] : spec.coeffs) {
                c /= l1;
                if (std::fabs(c) < tau) ok = false;
            }
            if (!ok) continue;
        }
        return spec;
    }
    throw ConfigError("make_tau_heavy: could not satisfy the tau floor after rescaling");
}

namespace {
struct TreeNode {
    int var = -1;       // split variable, -1 at leaves
    double leaf = 0.0;  // +-1 at leaves
    std::unique_ptr<TreeNode> pos, neg;
};

std::unique_ptr<TreeNode> build_tree(int n, int depth, std::uint64_t used, RandomStream& rng) {
    auto node = std::make_unique<TreeNode>();
    if (depth == 0) {
        node->leaf = rng.rademacher();
        return node;
    }
    int var;
    do {
        var = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    } while (used & (1ULL << var));
    node->var = var;
    used |= (1ULL << var);
    node->pos = build_tree(n, depth - 1, used, rng);
    node->neg = build_tree(n, depth - 1, used, rng);
    return node;
}

// The branch x_var = s carries the indicator (1 + s x_var) / 2, which splits
// each child character T into T (weight / 2) and T xor {var} (s * weight / 2).
void expand_tree(const TreeNode& node, FourierSpectrum& spec, CharacterIndex path_chars,
                 double path_weight) {
    if (node.var < 0) {
        spec.coeffs[path_chars] += node.leaf * path_weight;
        return;
    }
    const CharacterIndex bit = 1ULL << node.var;
    for (double s : {1.0, -1.0}) {
        const TreeNode& child = s > 0 ? *node.pos : *node.neg;
        expand_tree(child, spec, path_chars, path_weight * 0.5);
        expand_tree(child, spec, path_chars ^ bit, path_weight * 0.5 * s);
    }
}
}  // namespace

FourierSpectrum make_shallow_tree(int n, int d, RandomStream& rng) {
    if (n < 1 || n > 63) throw ConfigError("make_shallow_tree: n must be in [1, 63]");
    if (d < 0 || d > n || d > 12) throw ConfigError("make_shallow_tree: need 0 <= d <= min(n, 12)");
    FourierSpectrum spec;
    spec.n = n;
    expand_tree(*build_tree(n, d, 0, rng), spec, 0, 1.0);
    for (auto it = spec.coeffs.begin(); it != spec.coeffs.end();)
        it = it->second == 0.0 ? spec.coeffs.erase(it) : std::next(it);
    return spec;
}

}  // namespace mitigate
