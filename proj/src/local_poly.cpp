#include "mitigate/local_poly.hpp"

#include <cmath>

namespace mitigate {

double PolyConfig::delta0() const {
    return delta1 / (4.0 * std::pow(80.0 * n * d * d, d));
}

namespace {
constexpr double kMinNodeGap = 1e-12;

bool nodes_distinct(const std::vector<double>& nodes) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (std::fabs(nodes[i] - nodes[j]) <= kMinNodeGap) return false;
    return true;
}
}  // namespace

std::vector<double> vandermonde_solve(const std::vector<double>& nodes,
                                      const std::vector<double>& values) {
    if (nodes.size() != values.size() || nodes.empty())
        throw ConfigError("nodes and values must be non-empty and equally sized");
    if (!nodes_distinct(nodes)) throw SingularSystem("near-duplicate interpolation nodes");

    const std::size_t d = nodes.size() - 1;
    std::vector<double> c = values;
    // Newton divided differences
    for (std::size_t k = 0; k <= d; ++k)
        for (std::size_t j = d; j > k; --j)
            c[j] = (c[j] - c[j - 1]) / (nodes[j] - nodes[j - k - 1]);
    // Newton form -> monomial coefficients
    for (std::size_t k = d; k-- > 0;)
        for (std::size_t j = k; j < d; ++j)
            c[j] -= nodes[k] * c[j + 1];
    return c;
}

double vandermonde_inverse_norm_bound(const std::vector<double>& nodes) {
    if (nodes.empty()) throw ConfigError("empty node set");
    if (!nodes_distinct(nodes)) throw SingularSystem("near-duplicate interpolation nodes");
    double best = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        double prod = 1.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (i == j) continue;
            prod *= (1.0 + std::fabs(nodes[i])) / std::fabs(nodes[i] - nodes[j]);
        }
        best = std::max(best, prod);
    }
    return best;
}

LocalEstimate poly_mitigate(const FunctionOracle& f, const ConvexBody& body, const Point& x_star,
                            const PolyConfig& cfg, RandomStream& rng) {
    if (cfg.s < 1 || cfg.d < 1) throw ConfigError("poly mitigation needs s >= 1 and d >= 1");
    if (cfg.eps > 1.0 / (20.0 * cfg.d)) throw ConfigError("poly mitigation requires eps <= 1/(20 d)");
    if (!body.contains(x_star)) throw ConfigError("x* must lie in the body");

    const std::uint64_t queries_before = f.query_count();
    LocalEstimate result;
    std::vector<double> estimates;
    estimates.reserve(static_cast<std::size_t>(cfg.s));

    for (int i = 0; i < cfg.s; ++i) {
        CollinearTuple tuple = correlated_tuple(x_star, body, cfg.d, rng);
        if (!nodes_distinct(tuple.radii)) {
            ++result.discarded;  // no queries spent on a singular trial
            continue;
        }
        std::vector<double> values(tuple.points.size());
        for (std::size_t j = 0; j < tuple.points.size(); ++j) values[j] = f(tuple.points[j]);
        std::vector<double> alpha = vandermonde_solve(tuple.radii, values);
        estimates.push_back(alpha[0]);
        if (cfg.keep_diagnostics) result.diagnostics.push_back({alpha[0], 0.0, 0.0, 0.0});
    }

    if (estimates.empty()) throw InsufficientAcceptance("all polynomial trials were discarded");
    result.accepted = estimates.size();
    result.y_star = median(std::move(estimates));
    result.queries = f.query_count() - queries_before;
    result.samples = 0;
    return result;
}

}  // namespace mitigate
