#include "mitigate/adversary.hpp"

#include <cmath>

namespace mitigate {

CertifiedAttack missing_coefficient_attack(const FourierSpectrum& h, CharacterIndex s_i) {
    auto it = h.coeffs.find(s_i);
    if (it == h.coeffs.end() || it->second == 0.0)
        throw ConfigError("missing_coefficient_attack: S_i is not in the support of h");

    FourierSpectrum reduced = h;
    double dropped = it->second;
    reduced.coeffs.erase(s_i);

    CertifiedAttack attack{reduced.as_oracle(), {}};
    attack.certificate.loss = dropped * dropped;
    attack.certificate.standard_error = 0.0;
    attack.certificate.exact = true;
    return attack;
}

namespace {
double dist2(const Point& a, const Point& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}
}  // namespace

CertifiedAttack targeted_ball_attack(RealFn h, const ConvexBody& body, const Point& center,
                                     double radius, double payload, double eps_limit,
                                     std::uint64_t certificate_seed) {
    if (radius < 0.0) throw ConfigError("targeted_ball_attack: radius must be >= 0");
    if (center.size() != static_cast<std::size_t>(body.dim()))
        throw DimensionError("targeted_ball_attack: center dimension mismatch");

    AdmissibilityCertificate cert;
    if (radius == 0.0) {
        cert.exact = true;  // a sphere has zero mass under any full-dimensional body
    } else {
        constexpr std::size_t kDraws = 100000;
        RandomStream rng(certificate_seed);
        std::size_t hits = 0;
        const double r2 = radius * radius;
        for (std::size_t i = 0; i < kDraws; ++i)
            if (dist2(body.sample_uniform(rng), center) <= r2) ++hits;
        double p = static_cast<double>(hits) / static_cast<double>(kDraws);
        cert.loss = p;
        cert.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(kDraws));
        cert.exact = false;
    }

    if (cert.loss > eps_limit)
        throw InadmissibleAttack("targeted_ball_attack: certified corrupted mass exceeds the limit");

    const double r2 = radius * radius;
    FunctionOracle oracle(
        [h = std::move(h), center, r2, payload, radius](const Point& x) {
            double base = h(x);
            if (radius > 0.0 && dist2(x, center) <= r2) return base + payload;
            return base;
        });
    return {std::move(oracle), cert};
}

FunctionOracle linear_bias_attack(RealFn h, Point anchor, double c) {
    return FunctionOracle([h = std::move(h), anchor = std::move(anchor), c](const Point& x) {
        if (x.size() != anchor.size())
            throw DimensionError("linear_bias_attack: point dimension mismatch");
        return h(x) + c * std::sqrt(dist2(x, anchor));
    });
}

bool eps_mass_member(const Point& x, double eps, std::uint64_t seed) {
    if (eps <= 0.0) return false;
    // Seeded hash of the coordinate vector, quantized at 1e-12 so the
    // membership set is well defined up to numerical noise and replayable.
    std::uint64_t acc = splitmix64(seed);
    for (double xi : x) {
        auto q = static_cast<std::int64_t>(std::llround(xi * 1e12));
        acc = splitmix64(acc ^ splitmix64(static_cast<std::uint64_t>(q)));
    }
    double u = static_cast<double>(acc >> 11) * 0x1.0p-53;
    return u < eps;
}

FunctionOracle eps_mass_random_attack(RealFn h, double eps, RealFn payload, std::uint64_t seed) {
    if (eps < 0.0 || eps > 1.0) throw ConfigError("eps_mass_random_attack: eps must be in [0,1]");
    return FunctionOracle([h = std::move(h), payload = std::move(payload), eps, seed](const Point& x) {
        return eps_mass_member(x, eps, seed) ? payload(x) : h(x);
    });
}

FunctionOracle eps_mass_offset_attack(RealFn h, double eps, double offset, std::uint64_t seed) {
    RealFn shifted = [h, offset](const Point& x) { return h(x) + offset; };
    return eps_mass_random_attack(std::move(h), eps, std::move(shifted), seed);
}

std::pair<RealFn, RealFn> flat_bump_polynomials(int n, int d) {
    if (n < 1) throw ConfigError("flat_bump_polynomials: n must be >= 1");
    if (d < 2 || d % 2 != 0) throw ConfigError("flat_bump_polynomials: d must be even and >= 2");
    RealFn h0 = [](const Point&) { return 0.0; };
    RealFn h1 = [n, d](const Point& x) {
        if (x.size() != static_cast<std::size_t>(n))
            throw DimensionError("flat_bump_polynomials: point dimension mismatch");
        double norm2 = 0.0;
        for (double xi : x) norm2 += xi * xi;
        return std::pow(1.0 - norm2, d / 2);
    };
    return {std::move(h0), std::move(h1)};
}

}  // namespace mitigate
