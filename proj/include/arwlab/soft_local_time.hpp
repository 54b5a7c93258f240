#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "arwlab/lattice.hpp"
#include "arwlab/rng.hpp"

namespace arwlab {

// Finite restriction of a point measure on Sigma x R+, with Sigma a finite
// site window under counting measure.
struct MeasurePoint {
    Site z;
    double v = 0;  // height
};

using PointMeasure = std::vector<MeasurePoint>;

// Probability density against counting measure on a finite window.
struct Density {
    std::map<Site, double> g;

    double at(const Site& z) const {
        auto it = g.find(z);
        return it == g.end() ? 0.0 : it->second;
    }
    // checks sum g = 1 within 1e-12 and nonnegativity
    void validate() const;
};

struct NoPointError : std::runtime_error {
    NoPointError() : std::runtime_error("soft-local-time: no admissible point; extend the cloud") {}
};

struct SimulateOneResult {
    double xi = 0;
    Site picked;
    double picked_height = 0;
    PointMeasure residual;
};

// One pick: xi = min over points with g(z) > 0 of v / g(z); the attaining
// point is removed and the rest keep heights v - xi*g(z). Throws NoPointError
// when no point carries density, and rejects exact ties (probability-zero
// under Poisson heights; fixtures must avoid them).
SimulateOneResult simulate_one(const PointMeasure& m, const Density& g);

// Per-site Poisson processes of the given intensity in the height coordinate,
// generated lazily up to a running cap so the cloud can be extended above the
// already-explored region without disturbing its law.
class PoissonCloud {
public:
    PoissonCloud(SiteSet window, double intensity, Rng rng);

    // all heights revealed so far at z (ascending)
    const std::vector<double>& heights(const Site& z) const;
    // reveal every site's process up to height h
    void ensure(double h);
    double revealed_up_to() const { return cap_; }
    const SiteSet& window() const { return window_; }
    double intensity() const { return intensity_; }
    long long size() const;

private:
    SiteSet window_;
    double intensity_;
    double cap_ = 0;
    std::map<Site, std::vector<double>> pts_;
    std::map<Site, double> next_gap_from_;
    Rng rng_;
};

struct SoftLocalTime {
    std::map<Site, double> G;          // accumulated field G_J
    std::vector<double> xis;           // increments xi_1..xi_J
    std::vector<Site> picks;           // picked ground points, in order
    std::vector<double> pick_heights;  // cloud heights of the picks
};

// Iterates simulate_one over the cloud with cumulative soft local time
// G_k = G_{k-1} + xi_k g_k; the cloud auto-extends whenever the admissible
// set is exhausted.
SoftLocalTime soft_local_time_run(PoissonCloud& cloud,
                                  const std::vector<Density>& densities);

struct CouplingReport {
    bool dominated = false;
    double g_max = 0;  // max of G_J over the target set D
    double zeta_prime = 0;
    long long cloud_size = 0;
    std::vector<Site> picks;
    std::vector<double> pick_heights;
    std::uint64_t seed = 0;
};

// Couples walk endpoints to a Poisson(zeta') cloud: densities are heat
// kernels p_t(x_j, .) normalized over the window, which must contain the
// truncation ball of every start (else rejected with the required radius in
// the message). dominated is true when every pick landing in D has height
// <= zeta', which is guaranteed whenever max_D G_J <= zeta'.
CouplingReport couple_walks_to_cloud(const std::vector<Site>& starts, double t,
                                     double zeta_prime, const Box& target,
                                     const Box& window, std::uint64_t seed,
                                     double eps = 1e-12);

}  // namespace arwlab
