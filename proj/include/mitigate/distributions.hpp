#pragma once

#include <memory>
#include <vector>

#include "mitigate/convex.hpp"
#include "mitigate/fourier.hpp"
#include "mitigate/oracle.hpp"

namespace mitigate {

// Symmetric label noise with a declared (conservative) subgaussian variance
// proxy. Bounded-in-[-a,a] symmetric noise declares proxy a^2.
struct NoiseModel {
    enum class Kind { None, BoundedUniform, ScaledRademacher, TruncatedGaussian };
    Kind kind = Kind::None;
    double a = 0.0;      // half-width / scale for the bounded models
    double sigma = 0.0;  // TruncatedGaussian only
    double cut = 0.0;    // TruncatedGaussian truncation, in absolute units

    static NoiseModel none() { return {}; }
    static NoiseModel bounded_uniform(double a);
    static NoiseModel scaled_rademacher(double a);
    static NoiseModel truncated_gaussian(double sigma, double cut);

    double sample(RandomStream& rng) const;
    double variance_proxy() const;
};

struct MonomialTerm {
    double coefficient = 0.0;
    std::vector<int> exponents;  // one per coordinate
};

// Ground-truth label rule: a heavy Fourier spectrum on the cube, an affine
// map, or a multivariate polynomial; noise is added on top by sample_labeled.
struct LabelModel {
    enum class Kind { FourierHeavy, Affine, Polynomial };
    Kind kind = Kind::Affine;

    FourierSpectrum spectrum;       // FourierHeavy
    std::vector<double> weights;    // Affine
    double intercept = 0.0;         // Affine
    std::vector<MonomialTerm> terms;  // Polynomial

    NoiseModel noise;

    static LabelModel fourier_heavy(FourierSpectrum spec, NoiseModel noise = {});
    static LabelModel affine(std::vector<double> weights, double intercept, NoiseModel noise = {});
    static LabelModel polynomial(std::vector<MonomialTerm> terms, NoiseModel noise = {});

    double evaluate_clean(const Point& x) const;
    FunctionOracle clean_oracle() const;
};

// x uniform on the body, y = h(x) + eta.
LabeledSampler make_body_sampler(LabelModel model, std::shared_ptr<const ConvexBody> body);

// x uniform on {+-1}^n, y = h(x) + eta.
LabeledSampler make_cube_sampler(LabelModel model, int n);

// t random distinct character subsets with coefficients of magnitude >= tau,
// rescaled so the synthesized function is bounded by 1 in sup norm. Requires
// t tau^2 <= 1; retries with fresh signs if rescaling breaks the tau floor.
FourierSpectrum make_tau_heavy(int n, int t, double tau, RandomStream& rng);

// Random depth-d decision tree with +-1 leaves, as its exact spectrum via
// per-path expansion: a leaf at path (i_1,s_1),...,(i_d,s_d) contributes
// value * prod_j (1 + s_j x_{i_j}) / 2.
FourierSpectrum make_shallow_tree(int n, int d, RandomStream& rng);

}  // namespace mitigate
