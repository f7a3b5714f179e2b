#pragma once

#include <vector>

#include "mitigate/convex.hpp"
#include "mitigate/local_linear.hpp"
#include "mitigate/oracle.hpp"

namespace mitigate {

struct PolyConfig {
    int n = 0;
    int d = 0;          // total degree
    int s = 0;          // security parameter = trial count
    double delta1 = 0.0;
    double eps = 0.0;   // <= 1/(20 d)
    bool keep_diagnostics = false;

    // delta0 = delta1 / (4 * (80 n d^2)^d)
    double delta0() const;
};

// Monomial coefficients of the univariate interpolant through
// (nodes[i], values[i]); index k is the coefficient of v^k, so index 0 is the
// extrapolated value at v = 0. Bjorck-Pereyra divided-difference recurrence.
std::vector<double> vandermonde_solve(const std::vector<double>& nodes,
                                      const std::vector<double>& values);

// Gautschi bound: max_j prod_{i != j} (1 + |v_i|) / |v_i - v_j|.
double vandermonde_inverse_norm_bound(const std::vector<double>& nodes);

// Median over s trials of the degree-d radial interpolant's value at x*.
// Each trial draws a collinear (d+1)-tuple, queries f at its points, and
// solves the Vandermonde system in normalized radii. Trials whose nodes
// nearly coincide are discarded before any query is spent.
LocalEstimate poly_mitigate(const FunctionOracle& f, const ConvexBody& body, const Point& x_star,
                            const PolyConfig& cfg, RandomStream& rng);

}  // namespace mitigate
