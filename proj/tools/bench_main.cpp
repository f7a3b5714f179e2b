// Serial vs OpenMP timing for the two hot kernels: Goldreich-Levin bucket
// accumulation and the Monte Carlo trial loop of the basic linear mitigator.
#include <bit>
#include <chrono>
#include <cstdio>
#include <vector>

#include "mitigate/convex.hpp"
#include "mitigate/local_linear.hpp"
#include "mitigate/parallel.hpp"
#include "mitigate/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// The inner product each GL bucket computes against the shared sample batch.
double bench_gl_buckets(bool parallel, std::size_t buckets, std::size_t m) {
    mitigate::RandomStream rng(7);
    std::vector<double> prod(m);
    std::vector<std::uint64_t> diff(m);
    for (std::size_t i = 0; i < m; ++i) {
        prod[i] = rng.rademacher();
        diff[i] = rng.bits();
    }
    std::vector<std::uint64_t> js(buckets);
    for (auto& j : js) j = rng.bits();

    std::vector<double> weight(buckets, 0.0);
    auto start = Clock::now();
    mitigate::for_each_index(static_cast<std::int64_t>(buckets), parallel, [&](std::int64_t ci) {
        const std::uint64_t j = js[static_cast<std::size_t>(ci)];
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            acc += (std::popcount(j & diff[i]) & 1) ? -prod[i] : prod[i];
        weight[static_cast<std::size_t>(ci)] = acc / static_cast<double>(m);
    });
    double elapsed = seconds_since(start);
    volatile double sink = weight[0];
    (void)sink;
    return elapsed;
}

double bench_linear_trials(bool parallel, std::size_t trials) {
    const int n = 20;
    mitigate::BallBody body(n);
    mitigate::Point x_star(n, 0.0);
    x_star[0] = 0.3;
    mitigate::FunctionOracle f([](const mitigate::Point& x) { return 1.0 + 0.5 * x[0]; });
    mitigate::BasicLinearConfig cfg;
    cfg.s = 1;
    cfg.eps = 0.01;
    cfg.delta = 0.1;

    std::vector<double> out(trials, 0.0);
    auto start = Clock::now();
    mitigate::for_each_index(static_cast<std::int64_t>(trials), parallel, [&](std::int64_t t) {
        mitigate::RandomStream rng = mitigate::substream(11, static_cast<std::uint64_t>(t));
        out[static_cast<std::size_t>(t)] =
            mitigate::basic_linear_mitigate(f, body, x_star, cfg, rng).y_star;
    });
    double elapsed = seconds_since(start);
    volatile double sink = out[0];
    (void)sink;
    return elapsed;
}

}  // namespace

int main() {
    std::printf("threads available: %d\n", mitigate::thread_cap());

    double gl_serial = bench_gl_buckets(false, 256, 200000);
    double gl_parallel = bench_gl_buckets(true, 256, 200000);
    std::printf("gl-buckets   serial %.3fs  openmp %.3fs  speedup %.2fx\n", gl_serial, gl_parallel,
                gl_serial / gl_parallel);

    double lt_serial = bench_linear_trials(false, 200);
    double lt_parallel = bench_linear_trials(true, 200);
    std::printf("linear-trials serial %.3fs  openmp %.3fs  speedup %.2fx\n", lt_serial, lt_parallel,
                lt_serial / lt_parallel);
    return 0;
}
