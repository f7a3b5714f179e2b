#include "mitigate/local_linear.hpp"

#include <cassert>
#include <cmath>

namespace mitigate {

double interpolate_pair(double y_at_x, double f_at_xprime, double lambda) {
    if (!std::isfinite(y_at_x) || !std::isfinite(f_at_xprime) || !std::isfinite(lambda))
        throw NumericalError("non-finite input to interpolate_pair");
    return (1.0 - lambda) * y_at_x + lambda * f_at_xprime;
}

LocalEstimate basic_linear_mitigate(const FunctionOracle& f, const ConvexBody& body,
                                    const Point& x_star, const BasicLinearConfig& cfg,
                                    RandomStream& rng) {
    if (cfg.s < 1) throw ConfigError("security parameter s must be >= 1");
    if (cfg.eps > 0.01) throw ConfigError("basic linear mitigation requires eps <= 1/100");
    if (!body.contains(x_star)) throw ConfigError("x* must lie in the body");

    const int n = body.dim();
    const double lambda_cap = 4.0 * n;
    const std::uint64_t queries_before = f.query_count();

    LocalEstimate result;
    std::vector<double> estimates;
    estimates.reserve(static_cast<std::size_t>(cfg.trials()));
    for (int i = 0; i < cfg.trials(); ++i) {
        CollinearPair pair = correlated_pair(x_star, body, rng);
        if (std::fabs(pair.lambda) > lambda_cap) continue;
        // queries happen only after the acceptance test
        double y = f(pair.x);
        double y_prime = f(pair.x_prime);
        double g = interpolate_pair(y, y_prime, pair.lambda);
        estimates.push_back(g);
        if (cfg.keep_diagnostics)
            result.diagnostics.push_back({g, 0.0, pair.lambda, pair.lambda_prime});
    }

    if (estimates.empty())
        throw InsufficientAcceptance("no trial passed the |lambda| <= 4n acceptance test");
    result.accepted = estimates.size();
    result.y_star = median(std::move(estimates));
    result.queries = f.query_count() - queries_before;
    result.samples = 0;
    return result;
}

LocalEstimate advanced_linear_mitigate(const FunctionOracle& f, const LabeledSampler& sampler,
                                       const ConvexBody& body, const Point& x_star,
                                       const AdvancedLinearConfig& cfg, RandomStream& rng) {
    if (cfg.s < 1) throw ConfigError("security parameter s must be >= 1");
    if (!body.contains(x_star)) throw ConfigError("x* must lie in the body");

    const int n = body.dim();
    const double lambda_cap = 4.0 * n;
    const std::uint64_t queries_before = f.query_count();

    struct Accepted {
        int trial;
        double g;
        double b;
    };
    std::vector<Accepted> accepted;
    LocalEstimate result;

    for (int i = 0; i < cfg.s; ++i) {
        LabeledExample ex = sampler(rng);
        Point x_prime = resample(x_star, ex.x, body, rng);

        double r = 0.0, r_prime = 0.0;
        for (std::size_t k = 0; k < ex.x.size(); ++k) {
            double u = ex.x[k] - x_star[k];
            double v = x_prime[k] - x_star[k];
            r += u * u;
            r_prime += v * v;
        }
        r = std::sqrt(r);
        r_prime = std::sqrt(r_prime);
        if (r == r_prime) continue;  // measure-zero tie; treat as rejected
        double lambda = r / (r - r_prime);
        double lambda_prime = r_prime / (r_prime - r);
        if (std::fabs(lambda) > lambda_cap || std::fabs(lambda_prime) > lambda_cap) continue;

        double b = (f(ex.x) - ex.y) * lambda_prime;
        double g = interpolate_pair(ex.y, f(x_prime), lambda);
        accepted.push_back({i, g, b});
        if (cfg.keep_diagnostics) result.diagnostics.push_back({g, b, lambda, lambda_prime});
    }

    if (accepted.size() < 2)
        throw InsufficientAcceptance("fewer than two trials passed the acceptance test");

    std::vector<double> differences;
    differences.reserve(accepted.size() / 2);
    for (std::size_t t = 0; t + 1 < accepted.size(); t += 2) {
        // the bias estimate must come from a different trial than the value
        assert(accepted[t].trial != accepted[t + 1].trial);
        differences.push_back(accepted[t + 1].g - accepted[t].b);
    }

    result.accepted = accepted.size();
    result.y_star = mean_of_medians(differences).estimate;
    result.queries = f.query_count() - queries_before;
    result.samples = static_cast<std::uint64_t>(cfg.s);
    return result;
}

}  // namespace mitigate
