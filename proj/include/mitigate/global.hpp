#pragma once

#include <map>
#include <set>

#include "mitigate/fourier.hpp"
#include "mitigate/oracle.hpp"

namespace mitigate {

struct GlobalMitigationOutput {
    std::set<CharacterIndex> recovered_set;
    std::map<CharacterIndex, double> estimates;
    FourierSpectrum g;
    std::size_t samples_used = 0;
    std::uint64_t queries_used = 0;
};

// m = ceil(8 (s + ln(8 / tau^2)) / (tau^2 (eps1 - eps0))): Hoeffding over
// range-2 summands with a union bound over the recovered coefficients.
std::size_t sample_budget(const MitigationParams& params);

// Heavy-support recovery on the suspect oracle, then fresh-sample coefficient
// estimation, yielding the sparse predictor g.
GlobalMitigationOutput fourier_heavy_mitigate(const FunctionOracle& f, const LabeledSampler& sampler,
                                              const MitigationParams& params, RandomStream& rng);

// x -> sign(g(x)) with sign(0) = +1.
FunctionOracle sign_compose(const FourierSpectrum& g);

// Explicit per-point label distribution on a small cube: for each point mask,
// a list of (label, probability) outcomes.
using PopulationTable = std::vector<std::vector<std::pair<double, double>>>;

struct LossDecompositionReport {
    double total_square_loss = 0.0;
    double fit_term = 0.0;       // E[(r(x) - ybar_D(x))^2]
    double variance_term = 0.0;  // E[Var(y | x)]
};

LossDecompositionReport loss_decomposition_bruteforce(const FourierSpectrum& r,
                                                      const PopulationTable& population);

}  // namespace mitigate
