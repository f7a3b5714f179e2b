#include "mitigate/convex.hpp"

#include <cmath>
#include <limits>

namespace mitigate {

namespace {

double norm2(const Point& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double dot(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

bool BallBody::contains(const Point& x) const {
    return static_cast<int>(x.size()) == n_ && norm2(x) <= 1.0 + 1e-12;
}

Point BallBody::sample_uniform(RandomStream& rng) const {
    // Gaussian direction, radius via inverse CDF u^{1/n}; exact for the ball.
    Point x(static_cast<std::size_t>(n_));
    double norm = 0.0;
    do {
        for (auto& v : x) v = rng.normal();
        norm = norm2(x);
    } while (norm == 0.0);
    double radius = std::pow(rng.uniform(), 1.0 / n_);
    for (auto& v : x) v *= radius / norm;
    return x;
}

double BallBody::exit_distance(const Point& origin_point, const Point& unit_dir) const {
    // Solve ||p + alpha u|| = 1 for the positive root.
    double b = dot(origin_point, unit_dir);
    double c = dot(origin_point, origin_point) - 1.0;
    double disc = b * b - c;
    if (disc < 0.0) disc = 0.0;
    return -b + std::sqrt(disc);
}

BoxBody::BoxBody(int n, double half_width) : n_(n), a_(half_width) {
    if (half_width <= 0.0 || half_width * std::sqrt(static_cast<double>(n)) > 1.0 + 1e-12)
        throw ConfigError("box half-width must be positive and fit inside the unit ball");
}

bool BoxBody::contains(const Point& x) const {
    if (static_cast<int>(x.size()) != n_) return false;
    for (double v : x)
        if (std::fabs(v) > a_ + 1e-12) return false;
    return true;
}

Point BoxBody::sample_uniform(RandomStream& rng) const {
    Point x(static_cast<std::size_t>(n_));
    for (auto& v : x) v = rng.uniform(-a_, a_);
    return x;
}

double BoxBody::exit_distance(const Point& origin_point, const Point& unit_dir) const {
    // Min over per-coordinate exit times.
    double t = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_; ++i) {
        double u = unit_dir[static_cast<std::size_t>(i)];
        if (u == 0.0) continue;
        double bound = u > 0.0 ? a_ : -a_;
        double ti = (bound - origin_point[static_cast<std::size_t>(i)]) / u;
        t = std::min(t, ti);
    }
    return t;
}

BisectionBody::BisectionBody(int n, Membership member, std::shared_ptr<const ConvexBody> proposal)
    : n_(n), member_(std::move(member)), proposal_(std::move(proposal)) {}

Point BisectionBody::sample_uniform(RandomStream& rng) const {
    for (int attempt = 0; attempt < 1000000; ++attempt) {
        Point x = proposal_->sample_uniform(rng);
        if (member_(x)) return x;
    }
    throw ConfigError("rejection sampling failed; body too small inside proposal");
}

double BisectionBody::exit_distance(const Point& origin_point, const Point& unit_dir) const {
    // Body is inside the unit ball, so the exit time is at most 2.
    double lo = 0.0, hi = 2.0;
    auto inside = [&](double alpha) {
        Point p = origin_point;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += alpha * unit_dir[i];
        return member_(p);
    };
    if (inside(hi)) return hi;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        (inside(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double ray_exit_length(const ConvexBody& body, const Point& x_star, const Point& x) {
    if (x.size() != x_star.size()) throw DimensionError("ray endpoints differ in dimension");
    Point dir(x.size());
    double len = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dir[i] = x[i] - x_star[i];
        len += dir[i] * dir[i];
    }
    len = std::sqrt(len);
    if (len == 0.0) throw DegenerateRay("ray through x = x* is undefined");
    for (auto& v : dir) v /= len;
    return body.exit_distance(x_star, dir);
}

Point resample(const Point& x_star, const Point& x, const ConvexBody& body, RandomStream& rng) {
    Point dir(x.size());
    double len = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dir[i] = x[i] - x_star[i];
        len += dir[i] * dir[i];
    }
    len = std::sqrt(len);
    if (len == 0.0) throw DegenerateRay("cannot resample through x = x*");
    for (auto& v : dir) v /= len;

    double t = body.exit_distance(x_star, dir);
    double r_prime = t * std::pow(rng.uniform(), 1.0 / body.dim());
    Point out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x_star[i] + r_prime * dir[i];
    return out;
}

CollinearPair correlated_pair(const Point& x_star, const ConvexBody& body, RandomStream& rng) {
    const int n = body.dim();
    Point x = body.sample_uniform(rng);

    Point dir(x.size());
    double r = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dir[i] = x[i] - x_star[i];
        r += dir[i] * dir[i];
    }
    r = std::sqrt(r);
    if (r == 0.0) {
        // probability-zero collision with the target point
        x = body.sample_uniform(rng);
        r = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            dir[i] = x[i] - x_star[i];
            r += dir[i] * dir[i];
        }
        r = std::sqrt(r);
        if (r == 0.0) throw DegenerateRay("repeated draw collided with x*");
    }
    for (auto& v : dir) v /= r;

    double t = body.exit_distance(x_star, dir);
    double r_prime = t * std::pow(rng.uniform(), 1.0 / n);
    if (r_prime == r) {
        // exact radial tie has probability zero; one retry, then hard error
        r_prime = t * std::pow(rng.uniform(), 1.0 / n);
        if (r_prime == r) throw DegenerateRay("repeated exact radial tie in resampling");
    }

    CollinearPair pair;
    pair.x = x;
    pair.t = t;
    pair.r = r;
    pair.r_prime = r_prime;
    pair.x_prime.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) pair.x_prime[i] = x_star[i] + r_prime * dir[i];
    pair.lambda = r / (r - r_prime);
    pair.lambda_prime = r_prime / (r_prime - r);
    return pair;
}

CollinearTuple correlated_tuple(const Point& x_star, const ConvexBody& body, int degree,
                                RandomStream& rng) {
    if (degree < 1) throw ConfigError("tuple degree must be >= 1");
    const int n = body.dim();
    Point x = body.sample_uniform(rng);

    Point dir(x.size());
    double r0 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dir[i] = x[i] - x_star[i];
        r0 += dir[i] * dir[i];
    }
    r0 = std::sqrt(r0);
    if (r0 == 0.0) throw DegenerateRay("anchor collided with x*");
    for (auto& v : dir) v /= r0;

    CollinearTuple tuple;
    tuple.x_star = x_star;
    tuple.direction = dir;
    tuple.t = body.exit_distance(x_star, dir);
    tuple.radii.resize(static_cast<std::size_t>(degree) + 1);
    tuple.points.resize(static_cast<std::size_t>(degree) + 1);
    tuple.radii[0] = r0 / tuple.t;
    tuple.points[0] = x;
    for (int j = 1; j <= degree; ++j) {
        double rj = std::pow(rng.uniform(), 1.0 / n);  // normalized radius
        tuple.radii[static_cast<std::size_t>(j)] = rj;
        Point p(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) p[i] = x_star[i] + rj * tuple.t * dir[i];
        tuple.points[static_cast<std::size_t>(j)] = p;
    }
    return tuple;
}

double collinearity_residual(const Point& x_star, const Point& a, const Point& b) {
    // || (a - x*) x (b - x*) || / (||a - x*|| ||b - x*||), via the Gram
    // identity so it works in any dimension.
    double aa = 0.0, bb = 0.0, ab = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double u = a[i] - x_star[i];
        double v = b[i] - x_star[i];
        aa += u * u;
        bb += v * v;
        ab += u * v;
    }
    if (aa == 0.0 || bb == 0.0) return 0.0;
    double cross_sq = aa * bb - ab * ab;
    if (cross_sq < 0.0) cross_sq = 0.0;
    return std::sqrt(cross_sq / (aa * bb));
}

}  // namespace mitigate
