#pragma once

#include <functional>
#include <memory>

#include "mitigate/convex.hpp"
#include "mitigate/fourier.hpp"
#include "mitigate/oracle.hpp"

namespace mitigate {

// Every attack constructor ships an admissibility certificate: its loss
// against the nominal labels, exact where a closed form exists and Monte
// Carlo (with standard error) otherwise. Security experiments only consume
// certified-admissible attacks.
struct AdmissibilityCertificate {
    double loss = 0.0;
    double standard_error = 0.0;
    bool exact = false;
};

struct CertifiedAttack {
    FunctionOracle oracle;
    AdmissibilityCertificate certificate;
};

using RealFn = std::function<double(const Point&)>;

// Drops one heavy coefficient: f(x) = h(x) - h^(S_i) chi_{S_i}(x). The square
// loss against deterministic labels y = h(x) is exactly h^(S_i)^2.
CertifiedAttack missing_coefficient_attack(const FourierSpectrum& h, CharacterIndex s_i);

// h + payload inside the ball around `center`, h outside. The Monte Carlo
// mass certificate (1e5 draws) must come in at or below eps_limit.
CertifiedAttack targeted_ball_attack(RealFn h, const ConvexBody& body, const Point& center,
                                     double radius, double payload, double eps_limit,
                                     std::uint64_t certificate_seed);

// f(x) = h(x) + c * ||x - anchor||: the systematic distance-correlated bias
// the advanced linear mitigator neutralizes in expectation.
FunctionOracle linear_bias_attack(RealFn h, Point anchor, double c);

// f(x) = payload(x) on a pseudo-random eps-mass set selected by a seeded
// hash of the coordinates (quantized at 1e-12), h(x) elsewhere. Replayable.
FunctionOracle eps_mass_random_attack(RealFn h, double eps, RealFn payload, std::uint64_t seed);

// Convenience: payload = h + offset on the corrupted set.
FunctionOracle eps_mass_offset_attack(RealFn h, double eps, double offset, std::uint64_t seed);

// The indistinguishable pair near the origin: h0 = 0 and
// h1(x) = (1 - ||x||^2)^{d/2}, which differ by 1 at x = 0 yet are small on
// almost all of the ball.
std::pair<RealFn, RealFn> flat_bump_polynomials(int n, int d);

// Corruption membership predicate used by eps_mass_random_attack; exposed so
// tests can check determinism and measured mass directly.
bool eps_mass_member(const Point& x, double eps, std::uint64_t seed);

}  // namespace mitigate
