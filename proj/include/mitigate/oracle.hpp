#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mitigate/errors.hpp"
#include "mitigate/rng.hpp"

namespace mitigate {

// A domain point. On the hypercube every coordinate is +-1; convex-body
// domains use arbitrary reals inside the unit ball.
using Point = std::vector<double>;

struct LabeledExample {
    Point x;
    double y = 0.0;
};

// Hypercube points double as bitmasks (bit i set <=> coordinate i == -1 is
// NOT the convention; bit i set <=> coordinate i == +1). Conversions:
inline std::uint64_t cube_mask(const Point& x) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] > 0.0) m |= (1ULL << i);
    return m;
}

inline Point cube_point(std::uint64_t mask, int n) {
    Point x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = (mask >> i) & 1u ? 1.0 : -1.0;
    return x;
}

// Queryable function with exact query accounting. The evaluation rule is
// immutable; the counter may be bumped with relaxed ordering from concurrent
// trials and is exact at quiescence.
class FunctionOracle {
public:
    using Fn = std::function<double(const Point&)>;
    using CubeFn = std::function<double(std::uint64_t)>;

    explicit FunctionOracle(Fn fn) : fn_(std::move(fn)) {}
    FunctionOracle(int n, CubeFn cube_fn)
        : fn_([n, cube_fn](const Point& x) { (void)n; return cube_fn(cube_mask(x)); }),
          cube_fn_(std::move(cube_fn)) {}

    double operator()(const Point& x) const {
        count_->fetch_add(1, std::memory_order_relaxed);
        double v = fn_(x);
        if (!std::isfinite(v)) throw NumericalError("oracle returned non-finite value");
        return v;
    }

    // Fast path for hypercube oracles; same accounting.
    double eval_mask(std::uint64_t mask) const {
        if (!cube_fn_) throw ConfigError("oracle has no hypercube fast path");
        count_->fetch_add(1, std::memory_order_relaxed);
        double v = cube_fn_(mask);
        if (!std::isfinite(v)) throw NumericalError("oracle returned non-finite value");
        return v;
    }

    bool has_cube_fn() const { return static_cast<bool>(cube_fn_); }
    std::uint64_t query_count() const { return count_->load(std::memory_order_relaxed); }
    void reset_count() { count_->store(0, std::memory_order_relaxed); }

private:
    Fn fn_;
    CubeFn cube_fn_;
    // shared so copies of the oracle keep one ledger
    std::shared_ptr<std::atomic<std::uint64_t>> count_ =
        std::make_shared<std::atomic<std::uint64_t>>(0);
};

struct LossKind {
    enum class Kind { ZeroOne, Square, Cutoff } kind = Kind::Square;
    double delta = 0.0;  // only for Cutoff

    static LossKind zero_one() { return {Kind::ZeroOne, 0.0}; }
    static LossKind square() { return {Kind::Square, 0.0}; }
    static LossKind cutoff(double delta) {
        if (delta < 0.0) throw ConfigError("cutoff delta must be >= 0");
        return {Kind::Cutoff, delta};
    }

    double pointwise(double prediction, double label) const {
        switch (kind) {
            case Kind::ZeroOne: return prediction != label ? 1.0 : 0.0;
            case Kind::Square: {
                double d = prediction - label;
                return d * d;
            }
            case Kind::Cutoff: return std::fabs(prediction - label) > delta ? 1.0 : 0.0;
        }
        return 0.0;
    }
};

// Parameter block shared by the mitigators. Individual mitigators validate
// the subset of inequalities their theorem needs.
struct MitigationParams {
    int n = 0;
    int s = 0;
    double tau = 0.0;
    double eps0 = 0.0;
    double eps1 = 0.0;
    double delta0 = 0.0;
    double delta1 = 0.0;
    double epsilon = 0.0;  // cutoff-loss mass
};

using LabeledSampler = std::function<LabeledExample(RandomStream&)>;
using RandomizedPredictor = std::function<double(const Point&, RandomStream&)>;

// Empirical population loss from m fresh examples; consumes exactly m oracle
// queries.
inline double estimate_loss(const FunctionOracle& f, const LabeledSampler& sampler,
                            LossKind kind, std::size_t m, RandomStream& rng) {
    if (m < 1) throw EmptySample("estimate_loss requires m >= 1");
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        LabeledExample ex = sampler(rng);
        if (!std::isfinite(ex.y)) throw NumericalError("non-finite label");
        acc += kind.pointwise(f(ex.x), ex.y);
    }
    return acc / static_cast<double>(m);
}

// TV distance between the empirical laws of two discrete sample multisets.
template <typename T>
double empirical_tv_discrete(const std::vector<T>& samples_a, const std::vector<T>& samples_b) {
    if (samples_a.empty() || samples_b.empty())
        throw EmptySample("empirical_tv_discrete requires non-empty samples");
    std::map<T, double> pa, pb;
    for (const T& v : samples_a) pa[v] += 1.0 / static_cast<double>(samples_a.size());
    for (const T& v : samples_b) pb[v] += 1.0 / static_cast<double>(samples_b.size());
    double total = 0.0;
    for (const auto& [v, p] : pa) {
        auto it = pb.find(v);
        total += std::fabs(p - (it == pb.end() ? 0.0 : it->second));
    }
    for (const auto& [v, q] : pb)
        if (pa.find(v) == pa.end()) total += q;
    return 0.5 * total;
}

// Max over probes of the empirical probability that two randomized predictors
// differ by more than delta, with independent randomness per trial.
inline double empirical_cutoff_dissimilarity(const RandomizedPredictor& ga,
                                             const RandomizedPredictor& gb,
                                             const std::vector<Point>& probes, double delta,
                                             std::size_t trials, RandomStream& rng) {
    if (probes.empty()) throw EmptySample("empirical_cutoff_dissimilarity requires probes");
    if (trials < 1) throw ConfigError("trials must be >= 1");
    double worst = 0.0;
    for (const Point& x : probes) {
        std::size_t exceed = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            RandomStream ra = substream(rng.bits(), 2 * t);
            RandomStream rb = substream(rng.bits(), 2 * t + 1);
            if (std::fabs(ga(x, ra) - gb(x, rb)) > delta) ++exceed;
        }
        worst = std::max(worst, static_cast<double>(exceed) / static_cast<double>(trials));
    }
    return worst;
}

}  // namespace mitigate
