#include "arwlab/rw_kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace arwlab {

long long truncation_radius(double t, double eps) {
    if (t < 0) throw std::invalid_argument("truncation_radius: t must be >= 0");
    if (eps <= 0 || eps > 1e-6)
        throw std::invalid_argument("truncation_radius: eps must lie in (0, 1e-6]");
    if (t == 0) return 0;
    // accumulate Poisson(t) mass until the remaining tail drops below eps
    double term = std::exp(-t);
    double cdf = term;
    long long n = 0;
    while (1.0 - cdf >= eps) {
        ++n;
        term *= t / static_cast<double>(n);
        cdf += term;
        if (n > 10'000'000) throw std::runtime_error("truncation_radius: series stalled");
    }
    return n;
}

double heat_kernel_1d(double t, Coord x, double eps) {
    if (t < 0) throw std::invalid_argument("heat_kernel_1d: t must be >= 0");
    const long long a = std::llabs(x);
    if (t == 0) return a == 0 ? 1.0 : 0.0;
    const long long nmax = truncation_radius(t, eps);
    // P[X_t = x] = sum over jump counts n >= |x|, n = |x| (mod 2), of
    // e^{-t} (t/2)^n / (k! (n-k)!) with k = (n + |x|) / 2
    double sum = 0;
    const double log_half_t = std::log(t / 2.0);
    for (long long n = a; n <= nmax; n += 2) {
        const long long k = (n + a) / 2;
        const double log_term = -t + static_cast<double>(n) * log_half_t -
                                std::lgamma(static_cast<double>(k + 1)) -
                                std::lgamma(static_cast<double>(n - k + 1));
        sum += std::exp(log_term);
    }
    return sum;
}

double heat_kernel_d(double t, const Site& x, double eps) {
    double p = 1.0;
    for (Coord c : x.c) {
        p *= heat_kernel_1d(t, c, eps);
        if (p == 0.0) return 0.0;
    }
    return p;
}

double balanced_kernel_sum(double t, const std::vector<Site>& points,
                           const Site& origin, double eps) {
    double sum = 0;
    for (const Site& x : points) {
        Site rel = x;
        for (int i = 0; i < rel.dim(); ++i) rel.c[i] -= origin[i];
        sum += heat_kernel_d(t, rel, eps);
    }
    return sum;
}

CtWalk::CtWalk(Site start_pos, WalkRates r, Rng rng_stream)
    : pos(start_pos), start(std::move(start_pos)), rates(r), rng(rng_stream) {}

void CtWalk::advance_to(double t) {
    if (t < time) throw std::invalid_argument("CtWalk: cannot rewind");
    const int d = pos.dim();
    const double total_rate = rates == WalkRates::SingleRateOne
                                  ? 1.0
                                  : static_cast<double>(d);
    while (true) {
        const double dt = rng.exponential(total_rate);
        if (time + dt > t) {
            time = t;
            return;
        }
        time += dt;
        const int dir = static_cast<int>(rng.uniform_below(2 * d));
        pos.c[dir / 2] += (dir % 2 == 0 ? +1 : -1);
        max_displacement = std::max(max_displacement, dist_linf(pos, start));
    }
}

HopSchedule::HopSchedule(Paving p, double r) : paving(std::move(p)), lag(r) {
    const double ell = static_cast<double>(paving.side);
    if (lag < ell * ell)
        throw std::invalid_argument("HopSchedule: lag must be >= side^2");
}

SieveSchedule::SieveSchedule(double L, std::function<bool(const Site&)> target)
    : scale(L), in_target(std::move(target)) {
    if (L < 2) throw std::invalid_argument("SieveSchedule: L must be >= 2");
}

double SieveSchedule::time_of(long long idx) const {
    return static_cast<double>(idx) * std::pow(scale, 2.02);
}

std::optional<double> SieveSchedule::cap() const { return std::pow(scale, 2.04); }

namespace {

StopResult run_schedule(CtWalk& walk, const StoppingSchedule& schedule,
                        long long max_checks) {
    StopResult res;
    const std::optional<double> cap = schedule.cap();
    long long checks = 0;
    for (long long l = schedule.first_index();; ++l) {
        const double t = schedule.time_of(l);
        if (cap && t > *cap) {
            walk.advance_to(*cap);
            res.stop_time = *cap;
            res.hit_cap = true;
            break;
        }
        walk.advance_to(t);
        if (schedule.stop_here(walk.pos)) {
            res.stop_time = t;
            break;
        }
        if (++checks >= max_checks) {
            res.stop_time = t;
            res.timed_out = true;
            break;
        }
    }
    res.position = walk.pos;
    res.max_displacement = walk.max_displacement;
    return res;
}

}  // namespace

StopResult hopping_stop(CtWalk& walk, const HopSchedule& schedule,
                        long long max_checks) {
    return run_schedule(walk, schedule, max_checks);
}

StopResult sieving_stop(CtWalk& walk, const SieveSchedule& schedule) {
    return run_schedule(walk, schedule, 1'000'000'000);
}

OffSleepRunResult off_sleep_run(const std::vector<Site>& starts, WalkRates rates,
                                const StoppingSchedule& schedule, Rng& rng,
                                long long max_checks) {
    OffSleepRunResult res;
    std::uint64_t idx = 0;
    for (const Site& s : starts) {
        CtWalk walk(s, rates, rng.child(idx++));
        StopResult r = run_schedule(walk, schedule, max_checks);
        res.timed_out = res.timed_out || r.timed_out;
        res.stops.push_back(std::move(r));
    }
    return res;
}

}  // namespace arwlab
