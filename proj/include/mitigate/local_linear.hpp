#pragma once

#include <optional>
#include <vector>

#include "mitigate/convex.hpp"
#include "mitigate/oracle.hpp"
#include "mitigate/robust.hpp"

namespace mitigate {

struct BasicLinearConfig {
    int s = 0;          // security parameter; trial count is 320 s
    double delta = 0.0; // target cutoff radius
    double eps = 0.0;   // admissible corruption mass, <= 1/100
    bool keep_diagnostics = false;

    int trials() const { return 320 * s; }
};

struct AdvancedLinearConfig {
    int s = 0;          // sample count and security parameter
    double sigma = 0.0; // declared noise variance proxy
    double delta = 0.0;
    double eps = 0.0;
    bool keep_diagnostics = false;
};

struct TrialDiagnostics {
    double g = 0.0;
    double b = 0.0;
    double lambda = 0.0;
    double lambda_prime = 0.0;
};

struct LocalEstimate {
    double y_star = 0.0;
    std::size_t accepted = 0;
    std::size_t discarded = 0;  // trials dropped before querying
    std::uint64_t queries = 0;
    std::uint64_t samples = 0;
    std::vector<TrialDiagnostics> diagnostics;  // only when requested
};

// (1 - lambda) * y + lambda * f(x'): the affine extrapolation to x* along the
// shared ray. Exact when both values come from one affine function.
double interpolate_pair(double y_at_x, double f_at_xprime, double lambda);

// Median of per-trial extrapolations over m = 320 s correlated pairs,
// accepting a trial only when |lambda| <= 4n. Queries f lazily, two per
// accepted trial, and consumes no labeled samples.
LocalEstimate basic_linear_mitigate(const FunctionOracle& f, const ConvexBody& body,
                                    const Point& x_star, const BasicLinearConfig& cfg,
                                    RandomStream& rng);

// Bias-cancelling variant: s labeled samples, acceptance requires both
// |lambda| <= 4n and |lambda'| <= 4n, consecutive accepted trials are paired
// so the bias term always comes from a different trial than the estimate,
// and the paired differences go through mean-of-medians.
LocalEstimate advanced_linear_mitigate(const FunctionOracle& f, const LabeledSampler& sampler,
                                       const ConvexBody& body, const Point& x_star,
                                       const AdvancedLinearConfig& cfg, RandomStream& rng);

}  // namespace mitigate
