#pragma once

#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "arwlab/df_engine.hpp"
#include "arwlab/lattice.hpp"
#include "arwlab/rng.hpp"

namespace arwlab {

// Sparse site configuration with values in {0,1,2,...} U {sleeping}.
// Encoding: absent = 0, n >= 1 = n active particles, SLEEPING = one dormant
// particle. A site never mixes active and sleeping mass.
inline constexpr long long SLEEPING = -1;

struct Eta {
    int d = 1;
    std::map<Site, long long> v;  // only nonzero entries stored

    long long at(const Site& x) const {
        auto it = v.find(x);
        return it == v.end() ? 0 : it->second;
    }
    void set(const Site& x, long long value) {
        if (value == 0)
            v.erase(x);
        else
            v[x] = value;
    }
    bool is_sleeping(const Site& x) const { return at(x) == SLEEPING; }
    long long active_at(const Site& x) const {
        const long long n = at(x);
        return n > 0 ? n : 0;
    }
    long long active_count() const;
    long long particle_count() const;  // active + sleeping

    static Eta from_particles(int d, const std::vector<Site>& positions);
    auto operator<=>(const Eta&) const = default;
};

// The transformation eta^(y): a lone active particle at y falls asleep;
// any other occupancy leaves eta unchanged.
Eta apply_sleep(Eta eta, const Site& y);

// The transformation eta^(y->z) for nearest neighbors y, z: one active
// particle moves from y to z, waking a sleeper at z into two active
// particles. No active particle at y leaves eta unchanged.
Eta apply_jump(Eta eta, const Site& y, const Site& z);

// Jump-rate normalization for the timed simulator. RateOneWalks gives each
// active particle total jump rate 1 (uniform direction); GeneratorLiteral
// uses rate 1 per directed edge, total 2d per particle.
enum class RateModel { RateOneWalks, GeneratorLiteral };

struct SiteActivity {
    long long changes = 0;   // number of value changes of eta(x)
    double last_change = 0;  // time of the most recent change
};

struct CtOptions {
    double lambda = 1.0;
    double horizon = std::numeric_limits<double>::infinity();
    RateModel rates = RateModel::RateOneWalks;
    std::optional<Box> domain;
    long long max_events = 50'000'000;
};

struct CtResult {
    Eta final_state;
    double time = 0;
    long long events = 0;
    long long dissipated = 0;
    bool absorbed = false;        // no active particles remain
    bool budget_exhausted = false;
    std::map<Site, SiteActivity> tracked;
};

// Event-driven (Gillespie) run of the ARW generator up to the time horizon or
// absorption. Sleep events fire at rate lambda only at lone-particle sites;
// the configuration change of every event is checked against the tracked
// sites.
CtResult simulate_ct(const Eta& initial, const CtOptions& opts,
                     const SiteSet& tracked, Rng& rng);

}  // namespace arwlab
