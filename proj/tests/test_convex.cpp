#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "mitigate/convex.hpp"

using namespace mitigate;

TEST_SUITE_BEGIN("convex");

TEST_CASE("ball ray exits") {
    BallBody ball(3);
    Point origin{0.0, 0.0, 0.0};
    CHECK(ray_exit_length(ball, origin, Point{0.3, 0.0, 0.0}) == doctest::Approx(1.0));
    BallBody ball2(2);
    CHECK(ray_exit_length(ball2, Point{0.5, 0.0}, Point{0.7, 0.0}) == doctest::Approx(0.5));
    CHECK_THROWS_AS(ray_exit_length(ball, origin, origin), DegenerateRay);
}

TEST_CASE("box ray exit matches the bisection oracle on random rays") {
    const int n = 4;
    const double a = 0.4;  // 0.4 * 2 = 0.8 <= 1
    auto box = std::make_shared<BoxBody>(n, a);
    BisectionBody generic(
        n, [box](const Point& x) { return box->contains(x); },
        std::static_pointer_cast<const ConvexBody>(box));

    RandomStream rng(41);
    for (int rep = 0; rep < 200; ++rep) {
        Point x_star = box->sample_uniform(rng);
        Point x = box->sample_uniform(rng);
        bool degenerate = true;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] != x_star[i]) degenerate = false;
        if (degenerate) continue;
        double exact = ray_exit_length(*box, x_star, x);
        double approx = ray_exit_length(generic, x_star, x);
        CHECK(std::fabs(exact - approx) < 1e-9);
    }
}

TEST_CASE("box half-width must fit inside the unit ball") {
    CHECK_THROWS_AS(BoxBody(4, 0.6), ConfigError);
    CHECK_THROWS_AS(BoxBody(4, 0.0), ConfigError);
    CHECK_NOTHROW(BoxBody(4, 0.5));
}

TEST_CASE("resample radius follows the inverse CDF exactly") {
    // resample consumes exactly one uniform after geometry; replay it
    BallBody ball(2);
    Point x_star{0.0, 0.0};
    Point x{0.3, 0.4};
    RandomStream probe(43);
    double u = probe.uniform();
    RandomStream rng(43);
    Point x_prime = resample(x_star, x, ball, rng);
    double r_prime = std::hypot(x_prime[0], x_prime[1]);
    CHECK(r_prime == doctest::Approx(std::sqrt(u)));  // t = 1 from the center
}

TEST_CASE("n=1 resampling is uniform on [0,t]") {
    BallBody line(1);
    Point x_star{0.0};
    RandomStream rng(45);
    std::vector<double> radii;
    for (int i = 0; i < 20000; ++i) {
        Point x_prime = resample(x_star, Point{0.5}, line, rng);
        radii.push_back(x_prime[0]);
    }
    double ks = testutil::ks_statistic(radii, [](double r) { return r; });
    CHECK(ks < 0.015);
}

TEST_CASE("resampled radius law on the n=10 ball, with negative control") {
    const int n = 10;
    BallBody ball(n);
    Point x_star(n, 0.0);
    RandomStream rng(47);
    std::vector<double> radii, naive;
    for (int i = 0; i < 100000; ++i) {
        Point x = ball.sample_uniform(rng);
        Point xp = resample(x_star, x, ball, rng);
        double r = 0.0;
        for (double v : xp) r += v * v;
        radii.push_back(std::sqrt(r));
        naive.push_back(rng.uniform());  // r' uniform on [0,t]: the wrong law
    }
    auto cdf = [n](double r) { return std::pow(r, n); };
    CHECK(testutil::ks_statistic(radii, cdf) < 0.01);
    CHECK(testutil::ks_statistic(naive, cdf) > 0.1);
}

TEST_CASE("correlated pair lambda identities") {
    // r = 0.8, r' = 0.4: lambda = 2, lambda' = -1
    double r = 0.8, rp = 0.4;
    CHECK(r / (r - rp) == doctest::Approx(2.0));
    CHECK(rp / (rp - r) == doctest::Approx(-1.0));

    BallBody ball(4);
    Point x_star{0.1, 0.0, -0.2, 0.0};
    RandomStream rng(49);
    for (int i = 0; i < 2000; ++i) {
        CollinearPair pair = correlated_pair(x_star, ball, rng);
        CHECK(std::fabs(pair.lambda + pair.lambda_prime - 1.0) < 1e-9);
        CHECK(pair.r > 0.0);
        CHECK(pair.r <= pair.t + 1e-12);
        CHECK(pair.r_prime <= pair.t + 1e-12);
        CHECK(collinearity_residual(x_star, pair.x, pair.x_prime) < 1e-6);
        CHECK(ball.contains(pair.x_prime));
    }
}

TEST_CASE("resampled marginal is uniform on the n=8 ball") {
    const int n = 8;
    BallBody ball(n);
    Point x_star(n, 0.0);
    x_star[0] = 0.2;  // off-center target
    RandomStream rng(51);
    std::vector<double> re_radius, fresh_radius;
    std::vector<std::vector<double>> re_coord(n), fresh_coord(n);
    for (int i = 0; i < 100000; ++i) {
        CollinearPair pair = correlated_pair(x_star, ball, rng);
        Point fresh = ball.sample_uniform(rng);
        double rr = 0.0, fr = 0.0;
        for (int k = 0; k < n; ++k) {
            rr += pair.x_prime[k] * pair.x_prime[k];
            fr += fresh[k] * fresh[k];
            re_coord[k].push_back(pair.x_prime[k]);
            fresh_coord[k].push_back(fresh[k]);
        }
        re_radius.push_back(std::sqrt(rr));
        fresh_radius.push_back(std::sqrt(fr));
    }
    CHECK(testutil::ks_two_sample(re_radius, fresh_radius) < 0.01);
    for (int k = 0; k < n; ++k)
        CHECK(testutil::ks_two_sample(re_coord[k], fresh_coord[k]) < 0.015);
}

TEST_CASE("correlated tuple geometry and separation probability") {
    const int n = 5, d = 3;
    BallBody ball(n);
    Point x_star(n, 0.0);
    RandomStream rng(53);

    std::size_t separated = 0;
    const std::size_t tuples = 10000;
    const double gap = 1.0 / (40.0 * n * d * d);
    for (std::size_t rep = 0; rep < tuples; ++rep) {
        CollinearTuple tuple = correlated_tuple(x_star, ball, d, rng);
        REQUIRE(tuple.radii.size() == d + 1);
        for (std::size_t j = 0; j <= d; ++j) {
            CHECK(tuple.radii[j] >= 0.0);
            CHECK(tuple.radii[j] <= 1.0 + 1e-12);
            CHECK(ball.contains(tuple.points[j]));
            CHECK(collinearity_residual(x_star, tuple.points[0], tuple.points[j]) < 1e-6);
        }
        double min_gap = 2.0;
        for (std::size_t i = 0; i <= d; ++i)
            for (std::size_t j = i + 1; j <= d; ++j)
                min_gap = std::min(min_gap, std::fabs(tuple.radii[i] - tuple.radii[j]));
        if (min_gap >= gap) ++separated;
    }
    double p = static_cast<double>(separated) / static_cast<double>(tuples);
    CHECK(p >= 5.0 / 6.0 - 0.02);
}

TEST_CASE("degree-1 tuple matches correlated_pair draws on a shared stream") {
    BallBody ball(6);
    Point x_star(6, 0.0);
    x_star[1] = 0.3;
    RandomStream r1(55), r2(55);
    CollinearPair pair = correlated_pair(x_star, ball, r1);
    CollinearTuple tuple = correlated_tuple(x_star, ball, 1, r2);
    for (int k = 0; k < 6; ++k) {
        CHECK(pair.x[k] == doctest::Approx(tuple.points[0][k]));
        CHECK(pair.x_prime[k] == doctest::Approx(tuple.points[1][k]));
    }
    CHECK(pair.r_prime == doctest::Approx(tuple.radii[1] * tuple.t));
}

TEST_SUITE_END();
