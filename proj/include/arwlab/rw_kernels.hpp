#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "arwlab/lattice.hpp"
#include "arwlab/rng.hpp"

namespace arwlab {

// Transition probability of the rate-1 continuous-time simple random walk on
// Z, P[X_t = x | X_0 = 0], within additive eps via the Poissonized binomial
// series truncated once the Poisson(t) tail drops below eps.
double heat_kernel_1d(double t, Coord x, double eps = 1e-12);

// smallest n with P[Poisson(t) > n] < eps; the kernel vanishes beyond |x| > n
long long truncation_radius(double t, double eps = 1e-12);

// d-dimensional kernel as the product of per-coordinate 1d kernels at the
// same t: coordinates evolve as independent rate-1 one-dimensional walks, so
// the walker's total jump rate is d. The simulation engines instead use
// single walkers of total rate 1; compare the two via t <-> t/d.
double heat_kernel_d(double t, const Site& x, double eps = 1e-12);

// sum_j p_t(0, x_j - origin), the quantity bounded for zeta-balanced
// collections
double balanced_kernel_sum(double t, const std::vector<Site>& points,
                           const Site& origin, double eps = 1e-12);

// Continuous-time walk sampler. SingleRateOne jumps at total rate 1 (the
// engines' convention); PerCoordinateRateOne at total rate d (the kernel
// convention).
enum class WalkRates { SingleRateOne, PerCoordinateRateOne };

struct CtWalk {
    Site pos;
    Site start;
    double time = 0;
    WalkRates rates = WalkRates::SingleRateOne;
    Coord max_displacement = 0;  // sup-norm from start, over jump times
    Rng rng;

    CtWalk(Site start_pos, WalkRates r, Rng rng_stream);
    // runs jump events up to time t (inclusive of the clock state)
    void advance_to(double t);
};

// A deterministic observation schedule with a site predicate; the walk stops
// at the first scheduled time at which the predicate holds.
struct StoppingSchedule {
    virtual ~StoppingSchedule() = default;
    virtual long long first_index() const { return 0; }
    virtual double time_of(long long idx) const = 0;
    virtual bool stop_here(const Site& pos) const = 0;
    virtual std::optional<double> cap() const { return std::nullopt; }
};

// Hopping schedule: times t_l = l*r for l >= 0, requires r >= ell^2; stop
// when the walk sits in the middle-half kernel of its paving tile.
struct HopSchedule : StoppingSchedule {
    Paving paving;
    double lag;

    HopSchedule(Paving p, double r);
    double time_of(long long idx) const override { return static_cast<double>(idx) * lag; }
    bool stop_here(const Site& pos) const override { return paving.in_half_kernel(pos); }
};

// Sieving schedule: times t_s = s*L^2.02 for s >= 1, capped at L^2.04; stop
// on first observation inside the target set B.
struct SieveSchedule : StoppingSchedule {
    double scale;
    std::function<bool(const Site&)> in_target;

    SieveSchedule(double L, std::function<bool(const Site&)> target);
    long long first_index() const override { return 1; }
    double time_of(long long idx) const override;
    bool stop_here(const Site& pos) const override { return in_target(pos); }
    std::optional<double> cap() const override;
};

struct StopResult {
    double stop_time = 0;
    Site position;
    Coord max_displacement = 0;
    bool hit_cap = false;
    bool timed_out = false;
};

// Runs the walk through the schedule; times out after max_checks scheduled
// observations without a stop (and without a cap).
StopResult hopping_stop(CtWalk& walk, const HopSchedule& schedule,
                        long long max_checks = 1'000'000);
StopResult sieving_stop(CtWalk& walk, const SieveSchedule& schedule);

// Sleeping envelopes turned off: each particle runs an independent walk to
// its own schedule-defined stopping time; the returned positions seed
// downstream restarts. Exceeding max_checks on any walk sets timed_out.
struct OffSleepRunResult {
    std::vector<StopResult> stops;
    bool timed_out = false;
};

OffSleepRunResult off_sleep_run(const std::vector<Site>& starts, WalkRates rates,
                                const StoppingSchedule& schedule, Rng& rng,
                                long long max_checks = 1'000'000);

}  // namespace arwlab
