#include "arwlab/experiments.hpp"

#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>

namespace arwlab {

void parallel_trials(long long trials, int jobs, std::uint64_t seed,
                     const std::function<void(long long, Rng&)>& body) {
    if (trials < 0) throw std::invalid_argument("parallel_trials: negative count");
    int workers = jobs > 0 ? jobs
                           : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (workers == 1 || trials <= 1) {
        for (long long t = 0; t < trials; ++t) {
            Rng rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
            body(t, rng);
        }
        return;
    }
    std::atomic<long long> next{0};
    auto work = [&] {
        while (true) {
            const long long t = next.fetch_add(1);
            if (t >= trials) return;
            Rng rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
            body(t, rng);
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
}

namespace {

Instruction instruction_towards(const Site& from, const Site& to) {
    for (int i = 0; i < from.dim(); ++i) {
        const Coord delta = to[i] - from[i];
        if (delta == 1) return Instruction::step(i, +1);
        if (delta == -1) return Instruction::step(i, -1);
    }
    throw std::logic_error("instruction_towards: sites are not nearest neighbors");
}

long long arrivals_into(const World& w, TapeSet& tapes, const Site& target) {
    long long total = 0;
    for (const Site& y : nn_neighbors(target)) {
        const long long burned = w.odometer_at(y);
        if (burned > 0)
            total += tapes.count_in_prefix(y, static_cast<std::size_t>(burned),
                                           instruction_towards(y, target));
    }
    return total;
}

std::vector<Site> interior_sites(const Box& box) {
    std::vector<Site> out;
    for (const Site& x : box.sites())
        if (!box.on_internal_boundary(x)) out.push_back(x);
    return out;
}

std::vector<Site> sample_start(const EscapeSpec& spec, Rng& rng) {
    if (!spec.fixed_sites.empty()) return spec.fixed_sites;
    std::vector<Site> region =
        spec.start_region ? spec.start_region->sites() : interior_sites(spec.box);
    std::vector<Site> out;
    for (const Site& x : region) {
        const long long n = spec.density > 0 ? rng.poisson(spec.density) : 0;
        for (long long i = 0; i < n; ++i) out.push_back(x);
    }
    return out;
}

// Poisson(zeta) counts coupled across densities: per site, a unit-rate
// process in the density coordinate read off a (seed, site)-keyed stream, so
// the same seed at a smaller zeta yields a per-site sub-count.
long long coupled_poisson_count(double zeta, std::uint64_t seed, const Site& x) {
    Rng rng(mix_seed(seed, site_hash(x)));
    long long n = 0;
    double pos = rng.exponential(1.0);
    while (pos <= zeta) {
        ++n;
        pos += rng.exponential(1.0);
    }
    return n;
}

std::vector<Site> coupled_poisson_initial(double zeta, long long M, int d,
                                          std::uint64_t seed) {
    std::vector<Site> out;
    if (zeta <= 0) return out;
    for (const Site& x : Box::ball(d, M).sites()) {
        const long long n = coupled_poisson_count(zeta, seed, x);
        for (long long i = 0; i < n; ++i) out.push_back(x);
    }
    return out;
}

}  // namespace

TrialReport estimate_escape(const EscapeSpec& spec) {
    if (spec.trials <= 0) throw std::invalid_argument("estimate_escape: trials must be > 0");
    for (const Site& x : spec.fixed_sites)
        if (!spec.box.contains(x) || spec.box.on_internal_boundary(x))
            throw std::invalid_argument("estimate_escape: start must lie in the interior");
    if (spec.start_region)
        for (const Site& x : spec.start_region->sites())
            if (!spec.box.contains(x) || spec.box.on_internal_boundary(x))
                throw std::invalid_argument(
                    "estimate_escape: start region must lie in the interior");

    const auto t0 = std::chrono::steady_clock::now();
    const SiteSet boundary = spec.box.internal_boundary();
    // 0 = no escape, 1 = escape, 2 = excluded (budget)
    std::vector<int> outcome(static_cast<std::size_t>(spec.trials), 0);

    parallel_trials(spec.trials, spec.jobs, spec.seed, [&](long long t, Rng& rng) {
        const std::vector<Site> start = sample_start(spec, rng);
        if (spec.model == Model::ARW) {
            TapeSet tapes(spec.d, spec.lambda, rng.next_u64());
            World w = World::from_particles(spec.d, start, spec.box);
            StabilizeOptions opts;
            opts.policy = OrderPolicy::RandomParticle;
            opts.policy_seed = rng.next_u64();
            opts.max_steps = spec.max_steps;
            opts.halt_sites = &boundary;
            const StabilizeResult r = stabilize(w, tapes, opts);
            outcome[static_cast<std::size_t>(t)] =
                r.status == StabilizeStatus::Halted          ? 1
                : r.status == StabilizeStatus::BudgetExhausted ? 2
                                                               : 0;
        } else {
            DirectionTapes tapes(spec.d, rng.next_u64());
            SsmWorld w;
            w.d = spec.d;
            w.kappa = spec.kappa;
            w.domain = spec.box;
            std::vector<Message> msgs;
            for (const Site& x : start) msgs.push_back(Message{x, MsgKind::Ordinary});
            SsmStabilizeOptions opts;
            opts.policy = OrderPolicy::Fifo;
            opts.policy_seed = rng.next_u64();
            opts.max_steps = spec.max_steps;
            const SsmResult r = stabilize_ssm(w, std::move(msgs), tapes, opts);
            if (r.status == StabilizeStatus::BudgetExhausted) {
                outcome[static_cast<std::size_t>(t)] = 2;
            } else {
                bool hit = false;
                for (const Site& b : boundary)
                    if (w.odometer.count(b) && w.odometer.at(b) > 0) hit = true;
                outcome[static_cast<std::size_t>(t)] = hit ? 1 : 0;
            }
        }
    });

    TrialReport rep;
    rep.seed = spec.seed;
    for (int o : outcome) {
        if (o == 2)
            ++rep.excluded;
        else {
            ++rep.trials;
            if (o == 1) ++rep.successes;
        }
    }
    if (rep.trials > 0) rep.interval = wilson_interval(rep.successes, rep.trials);
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

bool escape_indicator(World w, TapeSet& tapes, const Box& box,
                      const StabilizeOptions& opts) {
    const SiteSet boundary = box.internal_boundary();
    for (const Site& b : boundary)
        if (w.active.count(b) || w.sleeping.count(b)) return true;
    w.domain = box;
    StabilizeOptions run = opts;
    run.halt_sites = nullptr;  // full stabilization: the statistic must be monotone
    const StabilizeResult r = stabilize(w, tapes, run);
    if (r.status == StabilizeStatus::BudgetExhausted)
        throw std::runtime_error("escape_indicator: stabilization budget exhausted");
    for (const Site& b : boundary)
        if (arrivals_into(w, tapes, b) > 0) return true;
    return false;
}

bool is_balanced(const std::vector<Site>& points, const Paving& paving, double zeta) {
    std::map<Site, long long> counts;
    for (const Site& x : points) ++counts[paving.index_of(x)];
    double cap = zeta;
    for (int i = 0; i < paving.dim(); ++i) cap *= static_cast<double>(paving.side);
    for (auto& [k, n] : counts)
        if (static_cast<double>(n) > cap) return false;
    return true;
}

std::pair<std::vector<Site>, std::vector<Site>> coupled_initials(
    double zeta_small, double zeta_large, long long M, int d, Rng& rng) {
    if (zeta_small > zeta_large)
        throw std::invalid_argument("coupled_initials: densities out of order");
    const std::uint64_t seed = rng.next_u64();
    return {coupled_poisson_initial(zeta_small, M, d, seed),
            coupled_poisson_initial(zeta_large, M, d, seed)};
}

long long origin_activity_proxy(World w, TapeSet& tapes,
                                const StabilizeOptions& opts) {
    const Site o = Site::origin(w.d);
    const StabilizeResult r = stabilize(w, tapes, opts);
    if (r.status != StabilizeStatus::Stabilized)
        throw std::runtime_error("origin_activity_proxy: run did not stabilize");
    return w.odometer_at(o) + arrivals_into(w, tapes, o);
}

FixationTable fixation_tail(const FixationSpec& spec) {
    if (spec.trials <= 0) throw std::invalid_argument("fixation_tail: trials must be > 0");
    for (std::size_t i = 1; i < spec.m_ladder.size(); ++i)
        if (spec.m_ladder[i] <= spec.m_ladder[i - 1])
            throw std::invalid_argument("fixation_tail: M ladder must increase");

    FixationTable out;
    out.m_ladder = spec.m_ladder;
    out.l_grid = spec.l_grid;
    const Site o = Site::origin(spec.d);

    for (long long M : spec.m_ladder) {
        std::vector<long long> activity(static_cast<std::size_t>(spec.trials), 0);
        parallel_trials(spec.trials, spec.jobs, spec.seed, [&](long long t, Rng& rng) {
            const std::uint64_t init_seed = rng.next_u64();
            const std::uint64_t tape_seed = rng.next_u64();
            const std::vector<Site> start =
                coupled_poisson_initial(spec.zeta, M, spec.d, init_seed);
            if (spec.tape_proxy) {
                TapeSet tapes(spec.d, spec.lambda, tape_seed);
                World w = World::from_particles(spec.d, start);
                StabilizeOptions opts;
                opts.policy = OrderPolicy::SiteSweep;
                opts.max_steps = spec.max_steps;
                activity[static_cast<std::size_t>(t)] =
                    origin_activity_proxy(std::move(w), tapes, opts);
            } else {
                CtOptions opts;
                opts.lambda = spec.lambda;
                opts.horizon = spec.horizon;
                opts.max_events = spec.max_steps;
                Rng ct(tape_seed);
                const CtResult r =
                    simulate_ct(Eta::from_particles(spec.d, start), opts, {o}, ct);
                activity[static_cast<std::size_t>(t)] =
                    r.tracked.count(o) ? r.tracked.at(o).changes : 0;
            }
        });
        std::vector<double> row;
        for (long long l : spec.l_grid) {
            long long hits = 0;
            for (long long a : activity)
                if (a >= l) ++hits;
            row.push_back(static_cast<double>(hits) / static_cast<double>(spec.trials));
        }
        out.tail.push_back(std::move(row));
    }
    return out;
}

DDCurve driven_dissipation(const DDSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("driven_dissipation: n must be >= 1");
    if (spec.insertions < 0)
        throw std::invalid_argument("driven_dissipation: negative insertion count");
    const Box box = Box::cube(Site::origin(spec.d), spec.n);
    const std::vector<Site> sites = box.sites();
    Rng rng(mix_seed(spec.seed, 0xddULL));
    DDCurve curve;

    if (spec.model == Model::ARW) {
        TapeSet tapes(spec.d, spec.lambda, rng.next_u64());
        World w;
        w.d = spec.d;
        w.domain = box;
        for (long long m = 0; m < spec.insertions; ++m) {
            const Site& at = sites[rng.uniform_below(sites.size())];
            w.add_active(at);
            ++curve.inserted;
            StabilizeOptions opts;
            opts.policy = OrderPolicy::RandomParticle;
            opts.policy_seed = rng.next_u64();
            opts.max_steps = spec.max_steps;
            if (stabilize(w, tapes, opts).status != StabilizeStatus::Stabilized) {
                curve.aborted = true;
                break;
            }
            curve.remaining.push_back(w.particle_count());
            curve.dissipated = w.dissipated;
            if (curve.inserted != w.particle_count() + w.dissipated)
                throw std::logic_error("driven_dissipation: conservation violated");
        }
    } else {
        DirectionTapes tapes(spec.d, rng.next_u64());
        SsmWorld w;
        w.d = spec.d;
        w.kappa = spec.kappa;
        w.domain = box;
        for (long long m = 0; m < spec.insertions; ++m) {
            const Site& at = sites[rng.uniform_below(sites.size())];
            ++curve.inserted;
            SsmStabilizeOptions opts;
            opts.policy = OrderPolicy::Fifo;
            opts.max_steps = spec.max_steps;
            if (stabilize_ssm(w, {Message{at, MsgKind::Ordinary}}, tapes, opts).status !=
                StabilizeStatus::Stabilized) {
                curve.aborted = true;
                break;
            }
            long long remaining = 0;
            for (auto& [x, n] : w.retained()) remaining += n;
            curve.remaining.push_back(remaining);
            curve.dissipated = w.dissipated;
            if (curve.inserted != remaining + w.dissipated)
                throw std::logic_error("driven_dissipation: conservation violated");
        }
    }
    return curve;
}

}  // namespace arwlab
