#pragma once

#include <cstdint>
#include <random>

namespace mitigate {

// splitmix64 mixing step. Used both as a seed expander and as the splittable
// substream derivation: substream(seed, i) seeds its engine with
// mix(mix(seed) ^ mix(i + 1)), so trial i's stream is independent of how the
// trials are scheduled across threads.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    double uniform() { return unit_(engine_); }  // [0,1)
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    double normal() { return normal_(engine_); }
    std::uint64_t bits() { return engine_(); }

    // integer in [0, bound)
    std::uint64_t below(std::uint64_t bound) {
        std::uniform_int_distribution<std::uint64_t> d(0, bound - 1);
        return d(engine_);
    }

    // +1 or -1 with equal probability
    double rademacher() { return (engine_() & 1u) ? 1.0 : -1.0; }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
};

inline RandomStream substream(std::uint64_t seed, std::uint64_t index) {
    return RandomStream(splitmix64(seed) ^ splitmix64(index + 1));
}

}  // namespace mitigate
