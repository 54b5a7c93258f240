#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "arwlab/lattice.hpp"
#include "arwlab/rng.hpp"

namespace arwlab {

// One stored instruction: sleep, or a unit step. Directions are encoded as
// dir in [0, 2d): axis = dir/2, sign = + for even dir.
struct Instruction {
    int code = -1;  // -1 = sleep, otherwise direction index

    static Instruction sleep() { return Instruction{-1}; }
    static Instruction step(int axis, int sign) {
        return Instruction{2 * axis + (sign > 0 ? 0 : 1)};
    }
    bool is_sleep() const { return code < 0; }
    int axis() const { return code / 2; }
    int sign() const { return code % 2 == 0 ? +1 : -1; }
    Site target(const Site& from) const { return from.shifted(axis(), sign()); }

    auto operator<=>(const Instruction&) const = default;
};

// Per-site instruction stacks, revealed lazily from seeded streams so that a
// fixed (seed, site) always yields the same tape regardless of access order.
// P[sleep] = lambda/(1+lambda), each of the 2d steps 1/(2d(1+lambda)).
// Explicit prefixes can be installed for deterministic fixtures; the seeded
// stream continues past the prefix.
class TapeSet {
public:
    TapeSet(int d, double lambda, std::uint64_t seed);

    int dim() const { return d_; }
    double lambda() const { return lambda_; }
    std::uint64_t seed() const { return seed_; }

    void set_prefix(const Site& x, std::vector<Instruction> prefix);

    // j is 0-based; reveals (and caches) up to j
    Instruction at(const Site& x, std::size_t j);

    // number of instructions among the first n at x equal to instr
    long long count_in_prefix(const Site& x, std::size_t n, const Instruction& instr);

private:
    void reveal(const Site& x, std::size_t upto);

    int d_;
    double lambda_;
    std::uint64_t seed_;
    std::map<Site, std::vector<Instruction>> tape_;
    std::map<Site, Rng> stream_;
    std::map<Site, std::size_t> prefix_len_;
};

// Engine state: per-site active counts, sleeper flags, odometer. A site holds
// either active particles or a single sleeper, never both.
struct World {
    int d = 1;
    std::map<Site, long long> active;  // values strictly positive
    SiteSet sleeping;
    std::optional<Box> domain;  // particles stepping outside are dissipated
    long long dissipated = 0;
    std::map<Site, long long> odometer;
    long long steps = 0;

    static World from_particles(int d, const std::vector<Site>& positions,
                                std::optional<Box> domain = std::nullopt);

    void add_active(const Site& x, long long n = 1);
    bool stable() const { return active.empty(); }
    long long active_count() const;
    long long particle_count() const;  // active + sleeping
    long long odometer_at(const Site& x) const;
};

// Executes the next unburned instruction at `site` (which must hold an active
// particle). Sleep at a multiply-occupied site is a burned no-op.
// Returns the site the particle moved to, if it moved and stayed in-domain.
std::optional<Site> step(World& w, TapeSet& tapes, const Site& site);

enum class OrderPolicy { RandomParticle, SiteSweep, MaxOccupancy, Fifo };

struct StabilizeOptions {
    OrderPolicy policy = OrderPolicy::RandomParticle;
    std::uint64_t policy_seed = 1;
    long long max_steps = 50'000'000;
    // optional early stop: halt as soon as any of these sites is occupied
    const SiteSet* halt_sites = nullptr;
};

enum class StabilizeStatus { Stabilized, BudgetExhausted, Halted };

struct StabilizeResult {
    StabilizeStatus status = StabilizeStatus::Stabilized;
    long long steps = 0;
};

StabilizeResult stabilize(World& w, TapeSet& tapes, const StabilizeOptions& opts = {});

// The partial order omega' <= omega of the graphical representation, for two
// worlds over shared tapes: no more particles per site, no more active
// particles per site.
bool precedes(const World& smaller, const World& larger);

// Poisson(mu) initial condition restricted to the sup-norm ball B(0, M).
std::vector<Site> truncate_initial(const std::function<double(const Site&)>& mu,
                                   long long M, int d, Rng& rng);
std::vector<Site> truncate_initial(double density, long long M, int d, Rng& rng);

}  // namespace arwlab
