// Acceptance gate: one line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "mitigate/adversary.hpp"
#include "mitigate/convex.hpp"
#include "mitigate/distributions.hpp"
#include "mitigate/fourier.hpp"
#include "mitigate/global.hpp"
#include "mitigate/local_linear.hpp"
#include "mitigate/local_poly.hpp"
#include "mitigate/robust.hpp"

using namespace mitigate;

namespace {

int failures = 0;

void report(int criterion, const char* name, bool ok, const std::string& detail) {
    std::printf("%s criterion-%02d %s (%s)\n", ok ? "PASS" : "FAIL", criterion, name,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// 1. lambda bound: acceptance probability of max{|l|,|l'|} <= 4n is >= 1/8.
void criterion_1() {
    const std::size_t pairs = 100000;
    const double floor = 0.125 - 3.0 * std::sqrt(0.125 * 0.875 / static_cast<double>(pairs));
    bool ok = true;
    std::string detail;
    for (int n : {2, 10, 50}) {
        BallBody ball(n);
        Point x_star(static_cast<std::size_t>(n), 0.0);
        x_star[0] = 0.1;
        RandomStream rng = substream(1001, static_cast<std::uint64_t>(n));
        std::size_t accepted = 0;
        for (std::size_t i = 0; i < pairs; ++i) {
            CollinearPair p = correlated_pair(x_star, ball, rng);
            if (std::max(std::fabs(p.lambda), std::fabs(p.lambda_prime)) <= 4.0 * n) ++accepted;
        }
        double rate = static_cast<double>(accepted) / static_cast<double>(pairs);
        if (!detail.empty()) detail += ", ";
        detail += "n=" + std::to_string(n) + ": " + fmt(rate);
        ok = ok && rate >= floor;
    }
    report(1, "lambda-bound-acceptance", ok, detail + ", floor " + fmt(floor));
}

// 2. resample marginal law on the n=10 ball, with a negative control.
void criterion_2() {
    const int n = 10;
    const std::size_t draws = 100000;
    BallBody ball(n);
    Point x_star(n, 0.0);
    RandomStream rng(1002);
    std::vector<double> radii(draws), naive(draws);
    for (std::size_t i = 0; i < draws; ++i) {
        Point x = ball.sample_uniform(rng);
        Point xp = resample(x_star, x, ball, rng);
        double r2 = 0.0;
        for (double v : xp) r2 += v * v;
        radii[i] = std::sqrt(r2);
        naive[i] = rng.uniform();  // uniform-on-segment: the wrong law
    }
    auto ks = [&](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        double worst = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            double cdf = std::pow(v[i], n);
            double lo = static_cast<double>(i) / static_cast<double>(v.size());
            double hi = static_cast<double>(i + 1) / static_cast<double>(v.size());
            worst = std::max({worst, std::fabs(cdf - lo), std::fabs(cdf - hi)});
        }
        return worst;
    };
    double ks_re = ks(radii), ks_naive = ks(naive);
    report(2, "resample-marginal-law", ks_re < 0.01 && ks_naive > 0.1,
           "KS " + fmt(ks_re) + " < 0.01, control " + fmt(ks_naive) + " > 0.1");
}

// 3. GL recovery sandwich over 100 planted heavy spectra.
void criterion_3() {
    const int n = 12;
    const double tau = 0.25;
    int good = 0;
    for (int run = 0; run < 100; ++run) {
        RandomStream rng = substream(1003, static_cast<std::uint64_t>(run));
        int t = 1 + static_cast<int>(rng.below(3));  // sup-norm rescale needs t*tau < 1
        FourierSpectrum h = make_tau_heavy(n, t, tau, rng);
        FunctionOracle f = h.as_oracle();
        GLConfig cfg;
        cfg.tau = tau;
        cfg.fail_prob = 0.01;
        std::set<CharacterIndex> list = goldreich_levin(f, n, cfg, rng);
        std::set<CharacterIndex> heavy = h.heavy_set(tau);
        bool contains_heavy = true;
        for (CharacterIndex s : heavy) contains_heavy = contains_heavy && list.count(s) > 0;
        bool no_spurious = true;
        for (CharacterIndex s : list)
            no_spurious = no_spurious && std::fabs(h.coefficient(s)) >= 0.75 * tau - 1e-9;
        if (contains_heavy && no_spurious) ++good;
    }
    report(3, "gl-recovery-sandwich", good >= 99, std::to_string(good) + "/100 runs sandwiched");
}

// 4. global mitigator canonicalization under two admissible eps-mass attacks.
void criterion_4() {
    const int n = 10;
    FourierSpectrum h;
    h.n = n;
    h.coeffs[0x1] = 0.5;
    h.coeffs[0x30] = 0.5;

    MitigationParams params;
    params.n = n;
    params.s = 8;
    params.tau = 0.5;
    params.eps0 = 0.005;  // attack loss eps*offset^2 = 0.005 <= (tau/6)^2
    params.eps1 = 0.05;
    const std::set<CharacterIndex> planted{0x1, 0x30};
    const int runs = 200;

    LabeledSampler sampler = make_cube_sampler(LabelModel::fourier_heavy(h), n);
    std::vector<std::vector<std::string>> arm_sets(2);
    std::vector<int> arm_exact(2, 0);
    int loss_ok = 0;
    for (int arm = 0; arm < 2; ++arm) {
        const double eps = 0.005, offset = 1.0;
        const std::uint64_t attack_seed = 7000 + static_cast<std::uint64_t>(arm);
        FourierSpectrum spec = h;
        FunctionOracle f(n, [spec, eps, offset, attack_seed, n](std::uint64_t mask) {
            double base = spec.evaluate_mask(mask);
            return eps_mass_member(cube_point(mask, n), eps, attack_seed) ? base + offset : base;
        });
        for (int run = 0; run < runs; ++run) {
            RandomStream rng = substream(1004, static_cast<std::uint64_t>(run));  // matched arms
            GlobalMitigationOutput out = fourier_heavy_mitigate(f, sampler, params, rng);
            std::string key;
            for (CharacterIndex s : out.recovered_set) key += std::to_string(s) + "+";
            arm_sets[arm].push_back(key);
            if (out.recovered_set == planted) ++arm_exact[arm];
            double loss = 0.0;  // exact via Parseval on the spectrum difference
            std::set<CharacterIndex> keys;
            for (const auto& [s, c] : out.g.coeffs) keys.insert(s);
            for (const auto& [s, c] : h.coeffs) keys.insert(s);
            for (CharacterIndex s : keys) {
                double d = out.g.coefficient(s) - h.coefficient(s);
                loss += d * d;
            }
            if (loss <= params.eps1) ++loss_ok;
        }
    }
    double tv = empirical_tv_discrete(arm_sets[0], arm_sets[1]);
    bool ok = arm_exact[0] >= 198 && arm_exact[1] >= 198 && tv <= 0.02 &&
              loss_ok >= static_cast<int>(0.99 * 2 * runs);
    report(4, "global-mitigator-canonicalization", ok,
           "exact " + std::to_string(arm_exact[0]) + "/" + std::to_string(arm_exact[1]) +
               " of 200 per arm, TV " + fmt(tv) + ", loss<=eps1 in " + std::to_string(loss_ok) +
               "/400");
}

// 5. basic linear mitigation under targeted-ball and eps-mass attacks.
void criterion_5() {
    const int n = 20;
    const double delta = 0.1;
    BallBody ball(n);
    Point x_star(n, 0.0);
    x_star[0] = 0.3;
    auto h = [](const Point& x) { return 0.25 + 0.5 * x[0] - 0.3 * x[1]; };
    const double h_star = h(x_star);

    BasicLinearConfig cfg;
    cfg.s = 8;
    cfg.delta = delta;
    cfg.eps = 0.01;

    std::vector<FunctionOracle> arms;
    arms.push_back(targeted_ball_attack(h, ball, x_star, 0.25, 10.0 * delta, cfg.eps, 1005).oracle);
    arms.push_back(eps_mass_offset_attack(h, 0.01, 1.0, 1006));

    const int runs = 500;
    int fails = 0;
    bool budgets_ok = true;
    for (std::size_t arm = 0; arm < arms.size(); ++arm) {
        for (int run = 0; run < runs; ++run) {
            RandomStream rng = substream(1007 + arm, static_cast<std::uint64_t>(run));
            LocalEstimate est = basic_linear_mitigate(arms[arm], ball, x_star, cfg, rng);
            if (std::fabs(est.y_star - h_star) >= 0.9 * delta) ++fails;
            budgets_ok = budgets_ok && est.samples == 0 &&
                         est.queries <= 2ULL * 320 * static_cast<std::uint64_t>(cfg.s);
        }
    }
    double rate = static_cast<double>(fails) / static_cast<double>(2 * runs);
    report(5, "basic-linear-mitigation", rate <= 0.01 && budgets_ok,
           "failure rate " + fmt(rate) + " <= 0.01, zero samples and query cap " +
               (budgets_ok ? "held" : "violated"));
}

// 6. advanced linear unbiasedness vs the basic mitigator on matched seeds.
void criterion_6() {
    const int n = 16;
    const int s = static_cast<int>(std::ceil(std::log(static_cast<double>(n)) *
                                             std::sqrt(static_cast<double>(n))));  // 12
    const double delta = 0.1;
    const double c = delta / (2.0 * n);
    BallBody ball(n);
    Point x_star(n, 0.0);
    x_star[0] = 0.8;  // far from the anchor so the distance bias cannot cancel
    auto h = [](const Point& x) { return 0.25 + 0.5 * x[0]; };
    const double h_star = h(x_star);
    FunctionOracle f = linear_bias_attack(h, Point(n, 0.0), c);
    LabeledSampler sampler = [&](RandomStream& rng) {
        Point x = ball.sample_uniform(rng);
        double y = h(x);
        return LabeledExample{std::move(x), y};
    };

    const int runs = 2000;
    std::vector<double> adv(runs), bas(runs);
    for (int run = 0; run < runs; ++run) {
        RandomStream r1 = substream(1008, static_cast<std::uint64_t>(run));
        RandomStream r2 = substream(1008, static_cast<std::uint64_t>(run));
        AdvancedLinearConfig ac;
        ac.s = s;
        ac.delta = delta;
        ac.eps = 0.01;
        adv[run] = advanced_linear_mitigate(f, sampler, ball, x_star, ac, r1).y_star;
        BasicLinearConfig bc;
        bc.s = s;
        bc.delta = delta;
        bc.eps = 0.01;
        bas[run] = basic_linear_mitigate(f, ball, x_star, bc, r2).y_star;
    }
    auto mean_se = [&](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m += x;
        m /= static_cast<double>(v.size());
        double var = 0.0;
        for (double x : v) var += (x - m) * (x - m);
        var /= static_cast<double>(v.size() - 1);
        return std::pair<double, double>{m, std::sqrt(var / static_cast<double>(v.size()))};
    };
    auto [am, ase] = mean_se(adv);
    auto [bm, bse] = mean_se(bas);
    bool adv_unbiased = std::fabs(am - h_star) <= 2.576 * ase;  // 99% CI
    bool basic_biased = std::fabs(bm - h_star) > 3.0 * bse;
    report(6, "advanced-linear-unbiasedness", adv_unbiased && basic_biased,
           "advanced off by " + fmt(am - h_star) + " (SE " + fmt(ase) + "), basic off by " +
               fmt(bm - h_star) + " (SE " + fmt(bse) + ")");
}

// 7. polynomial mitigation: accuracy, exact query count, node separation.
void criterion_7() {
    const int n = 5, d = 3;
    BallBody ball(n);
    Point x_star(n, 0.0);
    x_star[0] = 0.2;
    x_star[3] = -0.1;
    auto h = [](const Point& x) {
        return 0.3 + 0.5 * x[0] - 0.4 * x[0] * x[1] * x[2] + 0.2 * x[3] * x[3];
    };
    const double h_star = h(x_star);
    FunctionOracle f = eps_mass_offset_attack(h, 0.01, 1.0, 1009);

    PolyConfig cfg;
    cfg.n = n;
    cfg.d = d;
    cfg.s = 64;
    cfg.delta1 = 0.1;
    cfg.eps = 0.01;

    const int runs = 300;
    int within = 0;
    bool queries_ok = true;
    for (int run = 0; run < runs; ++run) {
        RandomStream rng = substream(1010, static_cast<std::uint64_t>(run));
        LocalEstimate est = poly_mitigate(f, ball, x_star, cfg, rng);
        if (std::fabs(est.y_star - h_star) <= cfg.delta1) ++within;
        queries_ok = queries_ok &&
                     est.queries == (static_cast<std::uint64_t>(cfg.s) - est.discarded) * (d + 1);
    }

    RandomStream sep_rng(1011);
    const double gap = 1.0 / (40.0 * n * d * d);
    std::size_t separated = 0;
    const std::size_t tuples = 10000;
    for (std::size_t i = 0; i < tuples; ++i) {
        CollinearTuple tuple = correlated_tuple(x_star, ball, d, sep_rng);
        double min_gap = 2.0;
        for (std::size_t a = 0; a <= d; ++a)
            for (std::size_t b = a + 1; b <= d; ++b)
                min_gap = std::min(min_gap, std::fabs(tuple.radii[a] - tuple.radii[b]));
        if (min_gap >= gap) ++separated;
    }
    double sep = static_cast<double>(separated) / static_cast<double>(tuples);
    bool ok = within >= static_cast<int>(std::ceil(0.99 * runs)) && queries_ok &&
              sep >= 5.0 / 6.0 - 0.02;
    report(7, "polynomial-mitigation", ok,
           std::to_string(within) + "/300 within delta1, queries " +
               (queries_ok ? "exact" : "off") + ", separation " + fmt(sep));
}

// 8. Gautschi bound dominates the explicitly inverted norm (the bound's
// transposed-Vandermonde convention: max column sum of our inverse).
void criterion_8() {
    RandomStream rng(1012);
    bool ok = true;
    double worst_ratio = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        int d = 1 + static_cast<int>(rng.below(4));
        std::vector<double> nodes;
        while (static_cast<int>(nodes.size()) < d + 1) {
            double v = rng.uniform();
            bool distinct = true;
            for (double w : nodes)
                if (std::fabs(w - v) < 1e-3) distinct = false;
            if (distinct) nodes.push_back(v);
        }
        double explicit_norm = 0.0;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            std::vector<double> e(nodes.size(), 0.0);
            e[j] = 1.0;
            std::vector<double> col = vandermonde_solve(nodes, e);
            double sum = 0.0;
            for (double v : col) sum += std::fabs(v);
            explicit_norm = std::max(explicit_norm, sum);
        }
        double bound = vandermonde_inverse_norm_bound(nodes);
        worst_ratio = std::max(worst_ratio, explicit_norm / bound);
        ok = ok && explicit_norm <= bound * (1.0 + 1e-9);
    }
    report(8, "gautschi-inverse-norm-bound", ok, "worst norm/bound ratio " + fmt(worst_ratio));
}

// 9. robust mean: unbiased on the symmetric mixture, concentration envelope,
// and the median-of-means divergence on the one-sided original.
void criterion_9() {
    const std::size_t m = 10000;
    const int runs = 200;
    const double B = 1.0;                       // core U{+-1} tail bound
    const double gamma = std::min(0.01, 2.0);   // min{1/100, 2 eps^2/B^2} at eps=B
    const double envelope = 4.0 * std::exp(-gamma * std::sqrt(static_cast<double>(m)));

    std::vector<double> estimates(runs);
    int big_dev = 0, mom_diverged = 0;
    for (int run = 0; run < runs; ++run) {
        RandomStream rng = substream(1013, static_cast<std::uint64_t>(run));
        std::vector<double> symmetric(m), one_sided(m);
        for (std::size_t i = 0; i < m; ++i) {
            if (rng.uniform() < 1.0 / 3.0) {
                symmetric[i] = 1e6 * rng.rademacher();
                one_sided[i] = 1e6;
            } else {
                double v = rng.rademacher();
                symmetric[i] = v;
                one_sided[i] = v;
            }
        }
        estimates[run] = mean_of_medians(symmetric).estimate;
        if (std::fabs(estimates[run]) >= B) ++big_dev;
        if (std::fabs(median_of_means(one_sided, 2)) >= 1e3) ++mom_diverged;
    }
    double grand = 0.0;
    for (double e : estimates) grand += e;
    grand /= static_cast<double>(runs);
    double var = 0.0;
    for (double e : estimates) var += (e - grand) * (e - grand);
    var /= static_cast<double>(runs - 1);
    double se = std::sqrt(var / static_cast<double>(runs));
    double dev_rate = static_cast<double>(big_dev) / static_cast<double>(runs);
    bool ok = std::fabs(grand) <= 4.0 * se && dev_rate <= envelope &&
              mom_diverged >= static_cast<int>(0.95 * runs);
    report(9, "robust-mean", ok,
           "grand mean " + fmt(grand) + " (4SE " + fmt(4.0 * se) + "), dev rate " + fmt(dev_rate) +
               " <= " + fmt(envelope) + ", mom diverged " + std::to_string(mom_diverged) + "/200");
}

// 10. randomized rounding: disagreement <= 1/beta + slack, bounded movement.
void criterion_10() {
    const double beta = 10.0, delta1 = 0.01;
    const std::size_t trials = 10000;
    RandomStream rng(1014);
    std::size_t disagree = 0;
    bool radius_ok = true;
    for (std::size_t i = 0; i < trials; ++i) {
        RoundingConfig cfg = RoundingConfig::make(beta, delta1, rng);
        double y1 = rng.uniform(-1.0, 1.0);
        double y2 = y1 + rng.uniform(-delta1, delta1);
        double r1 = randomized_round(y1, cfg);
        double r2 = randomized_round(y2, cfg);
        if (r1 != r2) ++disagree;
        radius_ok = radius_ok && std::fabs(r1 - y1) <= delta1 * (1.0 + beta);
    }
    double rate = static_cast<double>(disagree) / static_cast<double>(trials);
    double cap = 0.1 + 3.0 * std::sqrt(0.1 * 0.9 / static_cast<double>(trials));
    report(10, "randomized-rounding", rate <= cap && radius_ok,
           "disagreement " + fmt(rate) + " <= " + fmt(cap) + ", radius cap " +
               (radius_ok ? "held" : "violated"));
}

// 11. exhaustive-oracle cross-checks: WHT round trip, loss decomposition
// additivity, sign-loss inequality.
void criterion_11() {
    RandomStream rng(1015);

    double worst_rt = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
        const int n = 12;
        std::vector<double> table(1ULL << n);
        for (auto& v : table) v = rng.uniform(-1.0, 1.0);
        std::vector<double> back = synthesize_table(wht_bruteforce(table));
        for (std::size_t i = 0; i < table.size(); ++i)
            worst_rt = std::max(worst_rt, std::fabs(back[i] - table[i]));
    }

    double worst_add = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 6;
        FourierSpectrum r;
        r.n = n;
        for (int t = 0; t < 4; ++t) r.coeffs[rng.bits() & 0x3Fu] = rng.uniform(-1.0, 1.0);
        PopulationTable pop(1ULL << n);
        for (auto& cell : pop) {
            double p = rng.uniform(0.05, 0.95);
            cell = {{rng.uniform(-1.0, 1.0), p}, {rng.uniform(-1.0, 1.0), 1.0 - p}};
        }
        LossDecompositionReport rep2 = loss_decomposition_bruteforce(r, pop);
        worst_add = std::max(worst_add, std::fabs(rep2.total_square_loss - rep2.fit_term -
                                                  rep2.variance_term));
    }

    bool sign_ok = true;
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 8;
        FourierSpectrum g;
        g.n = n;
        int terms = 1 + static_cast<int>(rng.below(5));
        for (int t = 0; t < terms; ++t) g.coeffs[rng.bits() & 0xFFu] = rng.uniform(-1.0, 1.0);
        FunctionOracle signed_g = sign_compose(g);
        double zero_one = 0.0, square = 0.0;
        for (std::uint64_t mmask = 0; mmask < 256; ++mmask) {
            double label = rng.rademacher();
            double raw = g.evaluate_mask(mmask);
            double sgn = signed_g.eval_mask(mmask);
            zero_one += (sgn != label ? 1.0 : 0.0) / 256.0;
            square += (raw - label) * (raw - label) / 256.0;
        }
        sign_ok = sign_ok && zero_one <= square + 1e-12;
    }

    report(11, "exhaustive-oracle-cross-checks",
           worst_rt <= 1e-12 && worst_add <= 1e-10 && sign_ok,
           "round trip " + fmt(worst_rt) + ", additivity " + fmt(worst_add) + ", sign loss " +
               (sign_ok ? "dominated" : "violated"));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (failures == 0)
        std::printf("ALL 11 CRITERIA PASSED\n");
    else
        std::printf("%d CRITERIA FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
