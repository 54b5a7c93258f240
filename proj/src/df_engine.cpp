#include "arwlab/df_engine.hpp"

#include <stdexcept>

namespace arwlab {

namespace {

std::uint64_t site_key(const Site& x) {
    std::uint64_t h = 0x2545f4914f6cdd1dULL;
    for (Coord c : x.c) h = splitmix64(h ^ static_cast<std::uint64_t>(c));
    return h;
}

}  // namespace

TapeSet::TapeSet(int d, double lambda, std::uint64_t seed)
    : d_(d), lambda_(lambda), seed_(seed) {
    if (d < 1) throw std::invalid_argument("TapeSet: d must be >= 1");
    if (lambda < 0) throw std::invalid_argument("TapeSet: lambda must be >= 0");
}

void TapeSet::set_prefix(const Site& x, std::vector<Instruction> prefix) {
    if (tape_.count(x) && tape_[x].size() > prefix.size())
        throw std::logic_error("TapeSet: cannot install a prefix after reveal");
    prefix_len_[x] = prefix.size();
    tape_[x] = std::move(prefix);
}

void TapeSet::reveal(const Site& x, std::size_t upto) {
    auto& t = tape_[x];
    if (t.size() >= upto) return;
    auto it = stream_.find(x);
    if (it == stream_.end())
        it = stream_.emplace(x, Rng(mix_seed(seed_, site_key(x)))).first;
    Rng& rng = it->second;
    const double p_sleep = lambda_ / (1.0 + lambda_);
    while (t.size() < upto) {
        if (rng.uniform() < p_sleep) {
            t.push_back(Instruction::sleep());
        } else {
            t.push_back(Instruction{static_cast<int>(rng.uniform_below(2 * d_))});
        }
    }
}

Instruction TapeSet::at(const Site& x, std::size_t j) {
    reveal(x, j + 1);
    return tape_[x][j];
}

long long TapeSet::count_in_prefix(const Site& x, std::size_t n, const Instruction& instr) {
    reveal(x, n);
    const auto& t = tape_[x];
    long long cnt = 0;
    for (std::size_t j = 0; j < n; ++j)
        if (t[j] == instr) ++cnt;
    return cnt;
}

World World::from_particles(int d, const std::vector<Site>& positions,
                            std::optional<Box> domain) {
    World w;
    w.d = d;
    w.domain = std::move(domain);
    for (const Site& x : positions) w.add_active(x);
    return w;
}

void World::add_active(const Site& x, long long n) {
    if (x.dim() != d) throw std::invalid_argument("World: site dimension mismatch");
    if (n <= 0) return;
    if (sleeping.count(x)) {
        // waking by insertion: the sleeper joins the active pile
        sleeping.erase(x);
        ++n;
    }
    active[x] += n;
}

long long World::active_count() const {
    long long n = 0;
    for (auto& [x, c] : active) n += c;
    return n;
}

long long World::particle_count() const {
    return active_count() + static_cast<long long>(sleeping.size());
}

long long World::odometer_at(const Site& x) const {
    auto it = odometer.find(x);
    return it == odometer.end() ? 0 : it->second;
}

std::optional<Site> step(World& w, TapeSet& tapes, const Site& site) {
    auto it = w.active.find(site);
    if (it == w.active.end() || it->second <= 0)
        throw std::logic_error("step: no active particle at the selected site");
    const long long j = w.odometer[site]++;
    ++w.steps;
    const Instruction instr = tapes.at(site, static_cast<std::size_t>(j));
    if (instr.is_sleep()) {
        if (it->second == 1) {
            w.active.erase(it);
            w.sleeping.insert(site);
        }
        // with >= 2 particles present the envelope burns with no effect
        return std::nullopt;
    }
    const Site target = instr.target(site);
    if (--it->second == 0) w.active.erase(it);
    if (w.domain && !w.domain->contains(target)) {
        ++w.dissipated;
        return std::nullopt;
    }
    if (w.sleeping.count(target)) {
        w.sleeping.erase(target);
        w.active[target] += 2;  // A + B -> 2A
    } else {
        w.active[target] += 1;
    }
    return target;
}

namespace {

Site pick_random_particle(const World& w, Rng& rng) {
    long long r = static_cast<long long>(rng.uniform_below(
        static_cast<std::uint64_t>(w.active_count())));
    for (auto& [x, c] : w.active) {
        if (r < c) return x;
        r -= c;
    }
    throw std::logic_error("pick_random_particle: inconsistent counts");
}

Site pick_max_occupancy(const World& w) {
    const Site* best = nullptr;
    long long best_c = -1;
    for (auto& [x, c] : w.active) {
        if (c > best_c) {
            best = &x;
            best_c = c;
        }
    }
    return *best;
}

bool occupied(const World& w, const Site& x) {
    return w.sleeping.count(x) || w.active.count(x);
}

}  // namespace

StabilizeResult stabilize(World& w, TapeSet& tapes, const StabilizeOptions& opts) {
    StabilizeResult res;
    if (opts.halt_sites) {
        for (const Site& h : *opts.halt_sites) {
            if (occupied(w, h)) {
                res.status = StabilizeStatus::Halted;
                return res;
            }
        }
    }
    Rng rng(mix_seed(opts.policy_seed, 0x0fdeULL));
    std::deque<Site> fifo;
    if (opts.policy == OrderPolicy::Fifo)
        for (auto& [x, c] : w.active) fifo.push_back(x);

    while (!w.stable()) {
        if (res.steps >= opts.max_steps) {
            res.status = StabilizeStatus::BudgetExhausted;
            return res;
        }
        Site site;
        switch (opts.policy) {
            case OrderPolicy::RandomParticle:
                site = pick_random_particle(w, rng);
                break;
            case OrderPolicy::SiteSweep:
                site = w.active.begin()->first;
                break;
            case OrderPolicy::MaxOccupancy:
                site = pick_max_occupancy(w);
                break;
            case OrderPolicy::Fifo: {
                while (!fifo.empty() && !w.active.count(fifo.front())) fifo.pop_front();
                if (fifo.empty())
                    for (auto& [x, c] : w.active) fifo.push_back(x);
                site = fifo.front();
                fifo.pop_front();
                break;
            }
        }
        const bool target_was_active =
            opts.policy == OrderPolicy::Fifo ? true : false;
        (void)target_was_active;
        auto moved_to = step(w, tapes, site);
        ++res.steps;
        if (opts.policy == OrderPolicy::Fifo) {
            if (w.active.count(site)) fifo.push_back(site);
            if (moved_to && w.active.count(*moved_to)) fifo.push_back(*moved_to);
        }
        if (opts.halt_sites && moved_to && opts.halt_sites->count(*moved_to)) {
            res.status = StabilizeStatus::Halted;
            return res;
        }
    }
    res.status = StabilizeStatus::Stabilized;
    return res;
}

bool precedes(const World& smaller, const World& larger) {
    if (smaller.d != larger.d)
        throw std::invalid_argument("precedes: dimension mismatch");
    auto total = [](const World& w, const Site& x) {
        long long n = 0;
        if (auto it = w.active.find(x); it != w.active.end()) n += it->second;
        if (w.sleeping.count(x)) n += 1;
        return n;
    };
    auto act = [](const World& w, const Site& x) {
        auto it = w.active.find(x);
        return it == w.active.end() ? 0LL : it->second;
    };
    SiteSet sites;
    for (auto& [x, c] : smaller.active) sites.insert(x);
    for (auto& [x, c] : larger.active) sites.insert(x);
    for (auto& x : smaller.sleeping) sites.insert(x);
    for (auto& x : larger.sleeping) sites.insert(x);
    for (const Site& x : sites) {
        if (total(smaller, x) > total(larger, x)) return false;
        if (act(smaller, x) > act(larger, x)) return false;
    }
    return true;
}

std::vector<Site> truncate_initial(const std::function<double(const Site&)>& mu,
                                   long long M, int d, Rng& rng) {
    if (M < 0) throw std::invalid_argument("truncate_initial: M must be >= 0");
    std::vector<Site> out;
    for (const Site& x : Box::ball(d, M).sites()) {
        const double m = mu(x);
        if (m < 0) throw std::invalid_argument("truncate_initial: negative intensity");
        if (m == 0) continue;
        const long long n = rng.poisson(m);
        for (long long i = 0; i < n; ++i) out.push_back(x);
    }
    return out;
}

std::vector<Site> truncate_initial(double density, long long M, int d, Rng& rng) {
    return truncate_initial([density](const Site&) { return density; }, M, d, rng);
}

}  // namespace arwlab
