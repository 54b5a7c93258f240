#pragma once

#include <cstdint>
#include <vector>

namespace arwlab {

struct WilsonInterval {
    double estimate;
    double lo;
    double hi;
};

// 95% Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(long long successes, long long trials);

// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

// Survival function of chi^2 with df degrees of freedom at x.
double chi2_sf(double x, int df);

// Two-sample chi-square homogeneity test over parallel count vectors.
// Cells with pooled count below min_cell are merged into one. Returns the
// p-value; 1.0 when fewer than two effective cells remain.
double chi2_two_sample_pvalue(const std::vector<long long>& a,
                              const std::vector<long long>& b,
                              long long min_cell = 5);

// One-sample Kolmogorov-Smirnov test against Exp(1). Asymptotic p-value.
double ks_exp1_pvalue(std::vector<double> samples);

// Asymptotic Kolmogorov distribution survival function P[K > x].
double kolmogorov_sf(double x);

}  // namespace arwlab
