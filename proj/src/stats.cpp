#include "arwlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arwlab {

WilsonInterval wilson_interval(long long successes, long long trials) {
    if (trials <= 0) throw std::invalid_argument("wilson_interval: trials must be positive");
    if (successes < 0 || successes > trials)
        throw std::invalid_argument("wilson_interval: successes out of range");
    const double z = 1.959963984540054;  // 97.5% normal quantile
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return WilsonInterval{p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

// lower regularized gamma by series, for x < a + 1
double gamma_p_series(double a, double x) {
    double sum = 1.0 / a;
    double term = sum;
    for (int n = 1; n < 1000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// upper regularized gamma by continued fraction, for x >= a + 1
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi2_sf(double x, int df) {
    if (df <= 0) throw std::invalid_argument("chi2_sf: df must be positive");
    if (x <= 0.0) return 1.0;
    return gamma_q(0.5 * df, 0.5 * x);
}

double chi2_two_sample_pvalue(const std::vector<long long>& a,
                              const std::vector<long long>& b,
                              long long min_cell) {
    if (a.size() != b.size())
        throw std::invalid_argument("chi2_two_sample: size mismatch");
    std::vector<std::pair<long long, long long>> cells;
    long long pool_a = 0, pool_b = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] + b[i] >= min_cell) {
            cells.emplace_back(a[i], b[i]);
        } else {
            pool_a += a[i];
            pool_b += b[i];
        }
    }
    if (pool_a + pool_b > 0) cells.emplace_back(pool_a, pool_b);
    long long na = 0, nb = 0;
    for (auto& [x, y] : cells) {
        na += x;
        nb += y;
    }
    if (cells.size() < 2 || na == 0 || nb == 0) return 1.0;
    double stat = 0.0;
    const double n = static_cast<double>(na + nb);
    for (auto& [x, y] : cells) {
        const double col = static_cast<double>(x + y);
        const double ea = col * na / n;
        const double eb = col * nb / n;
        if (ea > 0) stat += (x - ea) * (x - ea) / ea;
        if (eb > 0) stat += (y - eb) * (y - eb) / eb;
    }
    return chi2_sf(stat, static_cast<int>(cells.size()) - 1);
}

double kolmogorov_sf(double x) {
    if (x <= 0.0) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_exp1_pvalue(std::vector<double> samples) {
    if (samples.empty()) throw std::invalid_argument("ks_exp1: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double cdf = 1.0 - std::exp(-samples[i]);
        d = std::max(d, std::fabs(cdf - static_cast<double>(i) / n));
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - cdf));
    }
    return kolmogorov_sf(std::sqrt(n) * d);
}

}  // namespace arwlab
