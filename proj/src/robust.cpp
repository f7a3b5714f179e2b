#include "mitigate/robust.hpp"

#include <algorithm>
#include <cmath>

#include "mitigate/errors.hpp"

namespace mitigate {

double median(std::vector<double> values) {
    if (values.empty()) throw EmptySample("median of empty list");
    const std::size_t m = values.size();
    auto mid = values.begin() + static_cast<std::ptrdiff_t>(m / 2);
    std::nth_element(values.begin(), mid, values.end());
    if (m % 2 == 1) return *mid;
    double hi = *mid;
    double lo = *std::max_element(values.begin(), mid);
    return 0.5 * (lo + hi);
}

RobustMeanReport mean_of_medians(const std::vector<double>& values) {
    if (values.empty()) throw EmptySample("mean_of_medians of empty list");
    RobustMeanReport report;
    report.batch_size = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(values.size()))));
    const std::size_t b = report.batch_size;
    report.dropped = values.size() - b * b;
    report.batch_medians.reserve(b);
    double acc = 0.0;
    for (std::size_t i = 0; i < b; ++i) {
        std::vector<double> batch(values.begin() + static_cast<std::ptrdiff_t>(i * b),
                                  values.begin() + static_cast<std::ptrdiff_t>((i + 1) * b));
        double m = median(std::move(batch));
        report.batch_medians.push_back(m);
        acc += m;
    }
    report.estimate = acc / static_cast<double>(b);
    return report;
}

double median_of_means(const std::vector<double>& values, std::size_t batch_size) {
    if (values.empty()) throw EmptySample("median_of_means of empty list");
    if (batch_size < 1 || batch_size > values.size())
        throw ConfigError("median_of_means batch size must be in [1, |values|]");
    const std::size_t k = values.size() / batch_size;
    std::vector<double> means;
    means.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < batch_size; ++j) acc += values[i * batch_size + j];
        means.push_back(acc / static_cast<double>(batch_size));
    }
    return median(std::move(means));
}

RoundingConfig RoundingConfig::make(double beta, double delta1, RandomStream& rng) {
    if (beta <= 0.0 || delta1 <= 0.0) throw ConfigError("rounding needs beta > 0 and delta1 > 0");
    RoundingConfig cfg;
    cfg.beta = beta;
    cfg.delta1 = delta1;
    cfg.offset = rng.uniform() * cfg.grid();
    return cfg;
}

double randomized_round(double y, const RoundingConfig& cfg) {
    const double alpha = cfg.grid();
    if (alpha <= 0.0) throw ConfigError("rounding grid must be positive");
    return std::floor((y + cfg.offset) / alpha) * alpha;
}

LocalPredictor wrap_with_rounding(LocalPredictor inner, const RoundingConfig& cfg) {
    return [inner = std::move(inner), cfg](const Point& x, RandomStream& rng) {
        return randomized_round(inner(x, rng), cfg);
    };
}

}  // namespace mitigate
