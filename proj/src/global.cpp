#include "mitigate/global.hpp"

#include <cmath>

#include "mitigate/parallel.hpp"

namespace mitigate {

std::size_t sample_budget(const MitigationParams& params) {
    if (params.tau <= 0.0) throw ConfigError("tau must be > 0");
    if (params.eps1 <= params.eps0) throw ConfigError("eps1 must exceed eps0");
    double tau_sq = params.tau * params.tau;
    double m = 8.0 * (params.s + std::log(8.0 / tau_sq)) / (tau_sq * (params.eps1 - params.eps0));
    return static_cast<std::size_t>(std::ceil(m));
}

GlobalMitigationOutput fourier_heavy_mitigate(const FunctionOracle& f, const LabeledSampler& sampler,
                                              const MitigationParams& params, RandomStream& rng) {
    const double tau = params.tau;
    const double gate = (tau / 6.0) * (tau / 6.0);
    if (params.eps0 > gate + 1e-15)
        throw ConfigError("eps0 <= (tau/6)^2 violated: canonical recovery is not guaranteed");

    // Heavy-support recovery with the corridor placed so that, with high
    // probability, everything >= 2 tau / 3 is kept and everything kept is
    // >= tau / 2.
    GLConfig gl;
    gl.tau = tau;
    gl.fail_prob = std::exp(-static_cast<double>(params.s));
    gl.leaf_keep = 7.0 * tau / 12.0;
    gl.leaf_acc = tau / 12.0;
    gl.bucket_prune = (tau / 2.0) * (tau / 2.0) * 0.75;
    gl.bucket_acc = (tau / 2.0) * (tau / 2.0) * 0.25;

    const std::uint64_t queries_before = f.query_count();
    GlobalMitigationOutput out;
    out.recovered_set = goldreich_levin(f, params.n, gl, rng);

    const std::size_t m = sample_budget(params);
    std::vector<LabeledExample> batch;
    batch.reserve(m);
    for (std::size_t i = 0; i < m; ++i) batch.push_back(sampler(rng));

    std::vector<CharacterIndex> order(out.recovered_set.begin(), out.recovered_set.end());
    std::vector<double> est(order.size(), 0.0);
    for_each_index(static_cast<std::int64_t>(order.size()), true, [&](std::int64_t i) {
        est[static_cast<std::size_t>(i)] =
            estimate_coefficient_from_samples(order[static_cast<std::size_t>(i)], batch);
    });

    out.g.n = params.n;
    for (std::size_t i = 0; i < order.size(); ++i) {
        out.estimates[order[i]] = est[i];
        out.g.coeffs[order[i]] = est[i];
    }
    out.samples_used = m;
    out.queries_used = f.query_count() - queries_before;
    return out;
}

FunctionOracle sign_compose(const FourierSpectrum& g) {
    FourierSpectrum copy = g;
    return FunctionOracle(copy.n, [copy](std::uint64_t mask) {
        return copy.evaluate_mask(mask) >= 0.0 ? 1.0 : -1.0;
    });
}

LossDecompositionReport loss_decomposition_bruteforce(const FourierSpectrum& r,
                                                      const PopulationTable& population) {
    const std::size_t len = population.size();
    if (len == 0 || (len & (len - 1)) != 0)
        throw ShapeError("population table length must be a power of two");
    if (len != (1ULL << r.n)) throw ShapeError("population table does not match spectrum dimension");

    LossDecompositionReport report;
    const double px = 1.0 / static_cast<double>(len);
    for (std::size_t mask = 0; mask < len; ++mask) {
        double rx = r.evaluate_mask(mask);
        double mean = 0.0, second = 0.0, mass = 0.0;
        for (const auto& [y, p] : population[mask]) {
            mean += p * y;
            second += p * y * y;
            mass += p;
        }
        if (std::fabs(mass - 1.0) > 1e-9)
            throw ConfigError("per-point label distribution must sum to 1");
        double var = second - mean * mean;
        report.total_square_loss += px * (second - 2.0 * rx * mean + rx * rx);
        report.fit_term += px * (rx - mean) * (rx - mean);
        report.variance_term += px * var;
    }
    return report;
}

}  // namespace mitigate
