#include "arwlab/soft_local_time.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "arwlab/rw_kernels.hpp"

namespace arwlab {

void Density::validate() const {
    double sum = 0;
    for (auto& [z, w] : g) {
        if (w < 0) throw std::invalid_argument("Density: negative weight");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("Density: weights sum to " + std::to_string(sum));
}

SimulateOneResult simulate_one(const PointMeasure& m, const Density& g) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = m.size();
    bool tie = false;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double gz = g.at(m[i].z);
        if (gz <= 0) continue;
        const double ratio = m[i].v / gz;
        if (ratio < best) {
            best = ratio;
            best_i = i;
            tie = false;
        } else if (ratio == best) {
            tie = true;
        }
    }
    if (best_i == m.size()) throw NoPointError{};
    if (tie) throw std::runtime_error("simulate_one: tied minimum (resample heights)");
    SimulateOneResult res;
    res.xi = best;
    res.picked = m[best_i].z;
    res.picked_height = m[best_i].v;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == best_i) continue;
        res.residual.push_back(MeasurePoint{m[i].z, m[i].v - best * g.at(m[i].z)});
    }
    return res;
}

PoissonCloud::PoissonCloud(SiteSet window, double intensity, Rng rng)
    : window_(std::move(window)), intensity_(intensity), rng_(rng) {
    if (intensity_ <= 0) throw std::invalid_argument("PoissonCloud: intensity must be > 0");
    if (window_.empty()) throw std::invalid_argument("PoissonCloud: empty window");
    for (const Site& z : window_) {
        pts_[z];
        next_gap_from_[z] = 0;
    }
}

const std::vector<double>& PoissonCloud::heights(const Site& z) const {
    return pts_.at(z);
}

void PoissonCloud::ensure(double h) {
    if (h <= cap_) return;
    for (const Site& z : window_) {
        double& frontier = next_gap_from_[z];
        auto& v = pts_[z];
        // the first point past h is kept: the gap draw that produced it stays
        // valid for later extensions
        while (frontier <= h) {
            frontier += rng_.exponential(intensity_);
            v.push_back(frontier);
        }
    }
    cap_ = h;
}

long long PoissonCloud::size() const {
    long long n = 0;
    for (auto& [z, v] : pts_)
        for (double h : v)
            if (h <= cap_) ++n;
    return n;
}

SoftLocalTime soft_local_time_run(PoissonCloud& cloud,
                                  const std::vector<Density>& densities) {
    SoftLocalTime slt;
    for (const Site& z : cloud.window()) slt.G[z] = 0;
    // (site, height) pairs already consumed
    std::vector<std::pair<Site, double>> picked;
    auto is_picked = [&](const Site& z, double v) {
        for (auto& [pz, pv] : picked)
            if (pz == z && pv == v) return true;
        return false;
    };

    for (const Density& g : densities) {
        g.validate();
        while (true) {
            // xi = min over unpicked cloud points of (v - G(z)) / g(z)
            double best = std::numeric_limits<double>::infinity();
            const Site* best_z = nullptr;
            double best_v = 0;
            bool tie = false;
            for (const Site& z : cloud.window()) {
                const double gz = g.at(z);
                if (gz <= 0) continue;
                for (double v : cloud.heights(z)) {
                    if (v > cloud.revealed_up_to()) break;
                    if (is_picked(z, v)) continue;
                    const double ratio = (v - slt.G.at(z)) / gz;
                    if (ratio < best) {
                        best = ratio;
                        best_z = &z;
                        best_v = v;
                        tie = false;
                    } else if (ratio == best) {
                        tie = true;
                    }
                }
            }
            if (best_z == nullptr) {
                cloud.ensure(std::max(1.0, 2.0 * cloud.revealed_up_to()));
                continue;
            }
            if (tie) throw std::runtime_error("soft_local_time_run: tied minimum");
            // the candidate minimum is only trustworthy when the cloud has
            // been revealed past every height the next pick could reach
            double needed = 0;
            for (const Site& z : cloud.window()) {
                const double gz = g.at(z);
                if (gz > 0) needed = std::max(needed, slt.G.at(z) + best * gz);
            }
            if (needed > cloud.revealed_up_to()) {
                cloud.ensure(needed);
                continue;
            }
            slt.xis.push_back(best);
            slt.picks.push_back(*best_z);
            slt.pick_heights.push_back(best_v);
            picked.emplace_back(*best_z, best_v);
            for (auto& [z, G] : slt.G) G += best * g.at(z);
            break;
        }
    }
    return slt;
}

CouplingReport couple_walks_to_cloud(const std::vector<Site>& starts, double t,
                                     double zeta_prime, const Box& target,
                                     const Box& window, std::uint64_t seed,
                                     double eps) {
    if (zeta_prime <= 0)
        throw std::invalid_argument("couple_walks_to_cloud: zeta' must be > 0");
    const long long radius = truncation_radius(t, eps);
    for (const Site& x : starts) {
        for (int i = 0; i < x.dim(); ++i) {
            if (x[i] - radius < window.lower[i] ||
                x[i] + radius >= window.lower[i] + window.side[i])
                throw std::invalid_argument(
                    "couple_walks_to_cloud: window misses kernel mass; need radius " +
                    std::to_string(radius) + " around every start");
        }
    }
    for (const Site& z : target.sites())
        if (!window.contains(z))
            throw std::invalid_argument("couple_walks_to_cloud: window must contain the target");

    const SiteSet win = window.site_set();
    std::vector<Density> densities;
    for (const Site& x : starts) {
        Density g;
        double total = 0;
        for (const Site& z : win) {
            Site rel = z;
            for (int i = 0; i < rel.dim(); ++i) rel.c[i] -= x[i];
            const double p = heat_kernel_d(t, rel, eps);
            if (p > 0) {
                g.g[z] = p;
                total += p;
            }
        }
        for (auto& [z, w] : g.g) w /= total;
        densities.push_back(std::move(g));
    }

    PoissonCloud cloud(win, zeta_prime, Rng(mix_seed(seed, 0xc10dULL)));
    cloud.ensure(1.0);
    SoftLocalTime slt = soft_local_time_run(cloud, densities);

    CouplingReport rep;
    rep.zeta_prime = zeta_prime;
    rep.seed = seed;
    rep.picks = slt.picks;
    rep.pick_heights = slt.pick_heights;
    rep.cloud_size = cloud.size();
    for (const Site& z : target.sites())
        rep.g_max = std::max(rep.g_max, slt.G.at(z));
    rep.dominated = true;
    for (std::size_t i = 0; i < slt.picks.size(); ++i)
        if (target.contains(slt.picks[i]) && slt.pick_heights[i] > zeta_prime)
            rep.dominated = false;
    return rep;
}

}  // namespace arwlab
