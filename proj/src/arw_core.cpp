#include "arwlab/arw_core.hpp"

#include <stdexcept>

namespace arwlab {

long long Eta::active_count() const {
    long long n = 0;
    for (auto& [x, c] : v)
        if (c > 0) n += c;
    return n;
}

long long Eta::particle_count() const {
    long long n = 0;
    for (auto& [x, c] : v) n += (c == SLEEPING ? 1 : c);
    return n;
}

Eta Eta::from_particles(int d, const std::vector<Site>& positions) {
    Eta eta;
    eta.d = d;
    for (const Site& x : positions) {
        if (x.dim() != d) throw std::invalid_argument("Eta: site dimension mismatch");
        long long& n = eta.v[x];
        n = (n == SLEEPING) ? 2 : n + 1;
    }
    return eta;
}

Eta apply_sleep(Eta eta, const Site& y) {
    if (eta.at(y) == 1) eta.set(y, SLEEPING);
    return eta;
}

Eta apply_jump(Eta eta, const Site& y, const Site& z) {
    if (dist_linf(y, z) != 1) throw std::invalid_argument("apply_jump: not neighbors");
    {
        bool nn = false;
        for (const Site& n : nn_neighbors(y))
            if (n == z) nn = true;
        if (!nn) throw std::invalid_argument("apply_jump: not nearest neighbors");
    }
    const long long ny = eta.at(y);
    if (ny < 1) return eta;  // no active particle to move
    eta.set(y, ny - 1);
    const long long nz = eta.at(z);
    eta.set(z, nz == SLEEPING ? 2 : nz + 1);
    return eta;
}

CtResult simulate_ct(const Eta& initial, const CtOptions& opts,
                     const SiteSet& tracked, Rng& rng) {
    CtResult res;
    res.final_state = initial;
    Eta& eta = res.final_state;
    const int d = eta.d;
    const double jump_rate = opts.rates == RateModel::RateOneWalks ? 1.0 : 2.0 * d;

    std::map<Site, long long> prev_tracked;
    for (const Site& x : tracked) {
        prev_tracked[x] = eta.at(x);
        res.tracked[x];  // report a row even when nothing ever changes
    }

    while (true) {
        // active sites and total event rate
        double total = 0;
        for (auto& [x, n] : eta.v) {
            if (n <= 0) continue;
            total += static_cast<double>(n) * jump_rate;
            if (n == 1) total += opts.lambda;
        }
        if (total == 0) {
            res.absorbed = true;
            return res;
        }
        if (res.events >= opts.max_events) {
            res.budget_exhausted = true;
            return res;
        }
        const double dt = rng.exponential(total);
        if (res.time + dt > opts.horizon) {
            res.time = opts.horizon;
            return res;
        }
        res.time += dt;
        ++res.events;

        // pick the event proportionally to its rate
        double u = rng.uniform() * total;
        Site site;
        bool sleep_event = false;
        for (auto& [x, n] : eta.v) {
            if (n <= 0) continue;
            const double jr = static_cast<double>(n) * jump_rate;
            if (u < jr) {
                site = x;
                break;
            }
            u -= jr;
            if (n == 1) {
                if (u < opts.lambda) {
                    site = x;
                    sleep_event = true;
                    break;
                }
                u -= opts.lambda;
            }
        }
        if (site.dim() == 0) {
            // fell through by floating-point slack: take the last active site
            for (auto& [x, n] : eta.v)
                if (n > 0) site = x;
            sleep_event = false;
        }

        if (sleep_event) {
            eta = apply_sleep(std::move(eta), site);
        } else {
            const int dir = static_cast<int>(rng.uniform_below(2 * d));
            const Site target = site.shifted(dir / 2, dir % 2 == 0 ? +1 : -1);
            if (opts.domain && !opts.domain->contains(target)) {
                eta.set(site, eta.at(site) - 1);
                ++res.dissipated;
            } else {
                eta = apply_jump(std::move(eta), site, target);
            }
        }

        for (auto& [x, prev] : prev_tracked) {
            const long long now = eta.at(x);
            if (now != prev) {
                auto& a = res.tracked[x];
                ++a.changes;
                a.last_change = res.time;
                prev = now;
            }
        }
    }
}

}  // namespace arwlab
