#pragma once

#include <memory>
#include <vector>

#include "mitigate/oracle.hpp"
#include "mitigate/rng.hpp"

namespace mitigate {

// A nondegenerate convex body contained in the unit ball, with exact uniform
// sampling and ray-exit queries.
class ConvexBody {
public:
    virtual ~ConvexBody() = default;
    virtual int dim() const = 0;
    virtual bool contains(const Point& x) const = 0;
    virtual Point sample_uniform(RandomStream& rng) const = 0;
    // Distance from origin_point to the boundary along the unit direction u.
    virtual double exit_distance(const Point& origin_point, const Point& unit_dir) const = 0;
};

// Unit ball B(0,1): closed-form ray exit, radial inverse-CDF sampler.
class BallBody final : public ConvexBody {
public:
    explicit BallBody(int n) : n_(n) {}
    int dim() const override { return n_; }
    bool contains(const Point& x) const override;
    Point sample_uniform(RandomStream& rng) const override;
    double exit_distance(const Point& origin_point, const Point& unit_dir) const override;

private:
    int n_;
};

// Axis-aligned box [-a,a]^n with a <= 1/sqrt(n) so the body stays inside the
// unit ball.
class BoxBody final : public ConvexBody {
public:
    BoxBody(int n, double half_width);
    int dim() const override { return n_; }
    bool contains(const Point& x) const override;
    Point sample_uniform(RandomStream& rng) const override;
    double exit_distance(const Point& origin_point, const Point& unit_dir) const override;
    double half_width() const { return a_; }

private:
    int n_;
    double a_;
};

// Generic membership-only body: exit distance by bisection on the predicate,
// sampling by rejection from a provided proposal body. Test scaffolding for
// the closed-form implementations.
class BisectionBody final : public ConvexBody {
public:
    using Membership = std::function<bool(const Point&)>;
    BisectionBody(int n, Membership member, std::shared_ptr<const ConvexBody> proposal);
    int dim() const override { return n_; }
    bool contains(const Point& x) const override { return member_(x); }
    Point sample_uniform(RandomStream& rng) const override;
    double exit_distance(const Point& origin_point, const Point& unit_dir) const override;

private:
    int n_;
    Membership member_;
    std::shared_ptr<const ConvexBody> proposal_;
};

// t = sup{alpha >= 0 : x* + alpha * (x - x*)/||x - x*|| in body}.
double ray_exit_length(const ConvexBody& body, const Point& x_star, const Point& x);

// One resampling step: draw r' on [0,t] with density n r^{n-1} / t^n along
// the ray from x* through x, and return the point at that radius.
Point resample(const Point& x_star, const Point& x, const ConvexBody& body, RandomStream& rng);

struct CollinearPair {
    Point x;
    Point x_prime;
    double t = 0.0;        // segment length from x* to the boundary
    double r = 0.0;        // ||x - x*||
    double r_prime = 0.0;  // ||x' - x*||
    double lambda = 0.0;   // r / (r - r')
    double lambda_prime = 0.0;
};

struct CollinearTuple {
    Point x_star;
    Point direction;             // unit vector from x*
    double t = 0.0;
    std::vector<double> radii;   // normalized radii r^(j) in [0,1], size d+1
    std::vector<Point> points;   // x^(j) = x* + radii[j] * t * direction
};

CollinearPair correlated_pair(const Point& x_star, const ConvexBody& body, RandomStream& rng);

// One uniform anchor plus d resamples along its ray; every marginal uniform.
CollinearTuple correlated_tuple(const Point& x_star, const ConvexBody& body, int degree,
                                RandomStream& rng);

// Cross-residual used by the collinearity invariant checks.
double collinearity_residual(const Point& x_star, const Point& a, const Point& b);

}  // namespace mitigate
