#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "arwlab/arw_core.hpp"
#include "arwlab/df_engine.hpp"
#include "arwlab/lattice.hpp"
#include "arwlab/ssm_net.hpp"
#include "arwlab/stats.hpp"

namespace arwlab {

enum class Model { ARW, SSM };

// Runs body(trial, rng) for trial = 0..trials-1 over at most jobs worker
// threads; each trial owns the RNG stream derived from (seed, trial), so
// results are deterministic and order-independent. jobs <= 0 means hardware
// parallelism.
void parallel_trials(long long trials, int jobs, std::uint64_t seed,
                     const std::function<void(long long, Rng&)>& body);

struct EscapeSpec {
    Model model = Model::ARW;
    int d = 1;
    double lambda = 1.0;  // ARW
    long long kappa = 2;  // SSM
    Box box;              // escape region B; success = reaching its internal boundary
    std::optional<Box> start_region;  // defaults to the interior of box
    double density = 0;               // Poisson(density) start when fixed_sites empty
    std::vector<Site> fixed_sites;
    long long trials = 100;
    std::uint64_t seed = 1;
    int jobs = 1;
    long long max_steps = 10'000'000;
};

struct TrialReport {
    long long trials = 0;
    long long successes = 0;
    long long excluded = 0;  // non-stabilized trials, flagged and left out
    WilsonInterval interval{0, 0, 0};
    std::uint64_t seed = 0;
    double wall_seconds = 0;
};

// Monte Carlo escape probability: per trial, sample the start, stabilize with
// escape detection (first boundary touch ends the trial as a success), then
// aggregate a Wilson 95% interval.
TrialReport estimate_escape(const EscapeSpec& spec);

// Exact escape indicator through the tape engine: stabilizes a copy of the
// world on the box and decides whether any particle ever entered the internal
// boundary, as the tape-prefix count of instructions pointing into boundary
// sites. Monotone in the initial state for shared tapes, which makes paired
// domination checks exact.
bool escape_indicator(World w, TapeSet& tapes, const Box& box,
                      const StabilizeOptions& opts = {});

// true iff every tile of the paving holds at most zeta * ell^d points
bool is_balanced(const std::vector<Site>& points, const Paving& paving, double zeta);

struct FixationSpec {
    int d = 1;
    double zeta = 0.25;
    double lambda = 1.0;
    std::vector<long long> m_ladder = {1, 2, 4};  // truncation radii, increasing
    double horizon = 50;                          // time horizon s
    std::vector<long long> l_grid = {0, 1, 2, 4, 8};
    long long trials = 100;
    std::uint64_t seed = 1;
    int jobs = 1;
    // tape-engine backend: replaces the timed origin-change count by the
    // stabilization proxy J_0 + (arrivals into 0), which is exactly monotone
    // in the initial configuration for shared tapes
    bool tape_proxy = false;
    long long max_steps = 10'000'000;
};

struct FixationTable {
    std::vector<long long> m_ladder;
    std::vector<long long> l_grid;
    // tail[i][j] = empirical P[R >= l_grid[j]] at truncation m_ladder[i]
    std::vector<std::vector<double>> tail;
};

// Fixation-tail table: for each truncation radius M, Poisson(zeta) starts on
// B(0, M), origin-activity count R up to the horizon, tail estimates over the
// l grid. Tails are non-increasing in l by construction.
FixationTable fixation_tail(const FixationSpec& spec);

// Coupled Poisson(zeta) initial sets at two densities on B(0, M): the sparser
// set is a per-particle thinning of the denser one under the same stream, so
// the first is always a sub-multiset of the second.
std::pair<std::vector<Site>, std::vector<Site>> coupled_initials(
    double zeta_small, double zeta_large, long long M, int d, Rng& rng);

// Origin-activity proxy for paired monotone comparisons: stabilizes a copy of
// the world and returns J_0 plus the number of tape-prefix instructions of the
// origin's neighbors that point into the origin.
long long origin_activity_proxy(World w, TapeSet& tapes,
                                const StabilizeOptions& opts = {});

struct DDSpec {
    Model model = Model::SSM;
    int d = 2;
    Coord n = 30;  // box side
    double lambda = 1.0;
    long long kappa = 3;
    long long insertions = 500;
    std::uint64_t seed = 1;
    long long max_steps = 50'000'000;
};

struct DDCurve {
    std::vector<long long> remaining;  // after each insertion's stabilization
    long long inserted = 0;
    long long dissipated = 0;
    bool aborted = false;  // engine budget hit; curve is partial
};

// Driving and dissipation on [0, n)^d: insert one particle (ARW: active
// particle; SSM: ordinary message) at a uniform site, stabilize with boundary
// dissipation, record the remaining mass. inserted = remaining + dissipated
// after every step.
DDCurve driven_dissipation(const DDSpec& spec);

}  // namespace arwlab
