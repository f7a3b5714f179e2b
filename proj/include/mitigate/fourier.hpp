#pragma once

#include <bit>
#include <cstdint>
#include <set>
#include <unordered_map>
#include <vector>

#include "mitigate/oracle.hpp"
#include "mitigate/rng.hpp"

namespace mitigate {

// A character index S subseteq [n], stored as an n-bit mask (n <= 63).
using CharacterIndex = std::uint64_t;

// chi_S(x) for a hypercube point given as a mask (bit set <=> +1):
// product over i in S of x_i = (-1)^{#negative coordinates indexed by S}.
inline double eval_character_mask(CharacterIndex s, std::uint64_t xmask) {
    return (std::popcount(s & ~xmask) & 1) ? -1.0 : 1.0;
}

double eval_character(CharacterIndex s, const Point& x);

// Sparse Fourier spectrum over {+-1}^n.
struct FourierSpectrum {
    int n = 0;
    std::unordered_map<CharacterIndex, double> coeffs;

    double coefficient(CharacterIndex s) const {
        auto it = coeffs.find(s);
        return it == coeffs.end() ? 0.0 : it->second;
    }

    double evaluate_mask(std::uint64_t xmask) const {
        double v = 0.0;
        for (const auto& [s, c] : coeffs) v += c * eval_character_mask(s, xmask);
        return v;
    }

    double evaluate(const Point& x) const;

    double squared_mass() const {
        double m = 0.0;
        for (const auto& [s, c] : coeffs) m += c * c;
        return m;
    }

    // All S with |coeff| >= threshold.
    std::set<CharacterIndex> heavy_set(double threshold) const {
        std::set<CharacterIndex> out;
        for (const auto& [s, c] : coeffs)
            if (std::fabs(c) >= threshold) out.insert(s);
        return out;
    }

    FunctionOracle as_oracle() const;
};

// Exhaustive transform of a full truth table (length 2^n, n <= 24).
// Index i of the table is the point with mask i.
FourierSpectrum wht_bruteforce(const std::vector<double>& truth_table);

// Inverse: synthesize the full table from a spectrum (n <= 24).
std::vector<double> synthesize_table(const FourierSpectrum& spec);

// Empirical mean of y * chi_S(x); unbiased for the population coefficient
// when the marginal on x is uniform.
double estimate_coefficient_from_samples(CharacterIndex s, const std::vector<LabeledExample>& samples);

// Heavy-coefficient recovery configuration. Thresholds default to the
// standard contract (every |f^(S)| >= tau is output; every output S has
// |f^(S)| >= 3 tau / 4) but are individually overridable so callers can
// place the corridor elsewhere. Zero means "derive from tau".
struct GLConfig {
    double tau = 0.0;
    double fail_prob = 0.01;

    double leaf_keep = 0.0;      // default 7 tau / 8
    double leaf_acc = 0.0;       // default tau / 8
    double bucket_prune = 0.0;   // default (3 tau/4)^2 * 3/4
    double bucket_acc = 0.0;     // default (3 tau/4)^2 / 4
    std::size_t bucket_samples = 0;  // default: Hoeffding + union bound
    std::size_t leaf_samples = 0;
    std::uint64_t query_budget = 0;  // default: derived polynomial budget

    // Resolved copy with every field concrete.
    GLConfig resolved(int n) const;
};

// Kushilevitz-Mansour prefix-bucket recovery of the heavy Fourier support of
// a [-1,1]-valued hypercube oracle.
std::set<CharacterIndex> goldreich_levin(const FunctionOracle& f, int n, const GLConfig& cfg,
                                         RandomStream& rng);

}  // namespace mitigate
