#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "arwlab/rng.hpp"
#include "arwlab/stats.hpp"

using namespace arwlab;

TEST_CASE("wilson interval basics") {
    const WilsonInterval w = wilson_interval(50, 100);
    CHECK(w.estimate == doctest::Approx(0.5));
    CHECK(w.lo < 0.5);
    CHECK(w.hi > 0.5);
    CHECK(w.lo > 0.39);
    CHECK(w.hi < 0.61);
    CHECK(wilson_interval(0, 10).lo == doctest::Approx(0.0));
    CHECK(wilson_interval(10, 10).hi == doctest::Approx(1.0));
    CHECK_THROWS_AS(wilson_interval(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(11, 10), std::invalid_argument);
}

TEST_CASE("wilson coverage on synthetic Bernoulli streams") {
    Rng rng(99);
    for (double p : {0.1, 0.5, 0.9}) {
        int covered = 0;
        const int reps = 400, n = 200;
        for (int r = 0; r < reps; ++r) {
            long long s = 0;
            for (int i = 0; i < n; ++i) s += rng.bernoulli(p);
            const WilsonInterval w = wilson_interval(s, n);
            if (w.lo <= p && p <= w.hi) ++covered;
        }
        CHECK(static_cast<double>(covered) / reps >= 0.93);
    }
}

TEST_CASE("chi2 survival function reference values") {
    // values from standard tables
    CHECK(chi2_sf(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(chi2_sf(5.991464547107979, 2) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(chi2_sf(0.0, 3) == 1.0);
    CHECK(chi2_sf(1e6, 1) < 1e-12);
}

TEST_CASE("two-sample chi2 behaves sanely") {
    // identical large samples: no evidence of difference
    CHECK(chi2_two_sample_pvalue({100, 200, 300}, {100, 200, 300}) > 0.99);
    // wildly different: strong evidence
    CHECK(chi2_two_sample_pvalue({500, 10, 10}, {10, 10, 500}) < 1e-6);
    // degenerate: too few effective cells
    CHECK(chi2_two_sample_pvalue({1, 0}, {0, 1}) == 1.0);
    // calibration: same-law samples rarely rejected at alpha = 0.01
    Rng rng(5);
    int rejected = 0;
    const int reps = 300;
    for (int r = 0; r < reps; ++r) {
        std::vector<long long> a(4, 0), b(4, 0);
        for (int i = 0; i < 400; ++i) ++a[rng.uniform_below(4)];
        for (int i = 0; i < 400; ++i) ++b[rng.uniform_below(4)];
        if (chi2_two_sample_pvalue(a, b) < 0.01) ++rejected;
    }
    CHECK(rejected <= reps / 20);
}

TEST_CASE("KS against Exp(1)") {
    Rng rng(7);
    std::vector<double> good, bad;
    for (int i = 0; i < 5000; ++i) {
        good.push_back(rng.exponential(1.0));
        bad.push_back(rng.exponential(2.0));
    }
    CHECK(ks_exp1_pvalue(good) > 0.01);
    CHECK(ks_exp1_pvalue(bad) < 1e-6);
    CHECK(kolmogorov_sf(0.0) == 1.0);
    CHECK(kolmogorov_sf(10.0) < 1e-12);
}

TEST_CASE("rng determinism and poisson sanity") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng rng(42);
    double sum = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) sum += static_cast<double>(rng.poisson(3.5));
    CHECK(sum / n == doctest::Approx(3.5).epsilon(0.03));
    double sum_big = 0;
    for (int i = 0; i < 2000; ++i) sum_big += static_cast<double>(rng.poisson(100.0));
    CHECK(sum_big / 2000 == doctest::Approx(100.0).epsilon(0.02));
}
