#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "mitigate/oracle.hpp"
#include "mitigate/rng.hpp"

namespace mitigate {

// Odd length: middle order statistic. Even length: midpoint of the two
// central order statistics (keeps batch medians of symmetric data symmetric).
double median(std::vector<double> values);

struct RobustMeanReport {
    double estimate = 0.0;
    std::size_t batch_size = 0;                // b = floor(sqrt(|S|))
    std::vector<double> batch_medians;
    std::size_t dropped = 0;                   // |S| - b^2 tail values
};

// b batches of b consecutive values in the given order; leftovers dropped.
RobustMeanReport mean_of_medians(const std::vector<double>& values);

// Baseline estimator for the divergence demo: median of batch means.
double median_of_means(const std::vector<double>& values, std::size_t batch_size);

struct RoundingConfig {
    double beta = 0.0;
    double delta1 = 0.0;
    double offset = 0.0;  // drawn once per wrapped predictor, uniform [0, grid)

    double grid() const { return delta1 * beta; }

    static RoundingConfig make(double beta, double delta1, RandomStream& rng);
};

// floor(y + offset) onto the grid of multiples of delta1 * beta.
double randomized_round(double y, const RoundingConfig& cfg);

using LocalPredictor = std::function<double(const Point&, RandomStream&)>;

// Composes a local predictor with randomized rounding; the wrapper's offset
// is fixed at wrap time, shared across all calls of the returned predictor.
LocalPredictor wrap_with_rounding(LocalPredictor inner, const RoundingConfig& cfg);

}  // namespace mitigate
