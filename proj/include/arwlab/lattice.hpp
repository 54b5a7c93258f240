#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <vector>

namespace arwlab {

using Coord = long long;

// A point of Z^d. The dimension is carried by the vector length and must be
// consistent within one geometry context.
struct Site {
    std::vector<Coord> c;

    Site() = default;
    explicit Site(std::vector<Coord> coords) : c(std::move(coords)) {}
    Site(std::initializer_list<Coord> coords) : c(coords) {}
    static Site origin(int d) { return Site(std::vector<Coord>(d, 0)); }

    int dim() const { return static_cast<int>(c.size()); }
    Coord& operator[](int i) { return c[i]; }
    Coord operator[](int i) const { return c[i]; }

    Site shifted(int axis, Coord delta) const {
        Site s = *this;
        s.c[axis] += delta;
        return s;
    }

    auto operator<=>(const Site&) const = default;
};

using SiteSet = std::set<Site>;

// sup-norm of a site, max_i |x_i|
Coord linf_norm(const Site& x);

// stable 64-bit hash of the coordinate vector, for keying per-site streams
std::uint64_t site_hash(const Site& x);

// l_inf distance; throws on dimension mismatch
Coord dist_linf(const Site& x, const Site& y);

// Half-open integer product [lower, lower + side).
struct Box {
    Site lower;
    std::vector<Coord> side;  // all entries positive

    Box() = default;
    Box(Site lo, std::vector<Coord> sides);
    static Box cube(Site lo, Coord s);
    // centered cube [-radius, radius]^d
    static Box ball(int d, Coord radius);

    int dim() const { return lower.dim(); }
    bool contains(const Site& x) const;
    Coord volume() const;
    std::vector<Site> sites() const;  // lexicographic order
    SiteSet site_set() const;
    // {x in box : some l_inf-neighbor is outside}
    SiteSet internal_boundary() const;
    bool on_internal_boundary(const Site& x) const;
};

// {x in A : d(x, Z^d \ A) = 1}
SiteSet internal_boundary(const SiteSet& a);

// Enumerates the 3^d - 1 sites at l_inf distance exactly 1.
std::vector<Site> linf_neighbors(const Site& x);
// The 2d nearest neighbors x +- e_j.
std::vector<Site> nn_neighbors(const Site& x);

// Disjoint tiling of Z^d by cubes of side ell anchored at offset + ell*k.
struct Paving {
    Coord side = 1;
    Site offset;

    Paving() = default;
    Paving(Coord ell, Site off);

    int dim() const { return offset.dim(); }
    // box index k such that x in [offset + ell*k, offset + ell*(k+1))
    Site index_of(const Site& x) const;
    Box box_at(const Site& index) const;
    // middle-half sub-box [ell/4, 3*ell/4)^d of the tile, per-axis by rational
    // comparison so the real interval is kept exactly
    Box half_kernel_at(const Site& index) const;
    bool in_half_kernel(const Site& x) const;
};

// Nested boxes C^2 subset C^1 subset C^0 with buffer rings of width R,
// anchored at L*i. Requires 5R <= L.
struct KernelTriple {
    Box outer;   // [0, L)^d + L*i
    Box middle;  // [R, L-R)^d + L*i
    Box inner;   // [2R, L-2R)^d + L*i
    Coord ring = 0;
};

KernelTriple kernel_triple(Coord L, Coord R, const Site& index);

// Partition of the sup-norm ball of radius 2^i_max into a core ball of radius
// 2^i0 and the annuli {2^(i-1) < |x| <= 2^i}, i0 < i <= i_max.
struct DyadicAnnuli {
    int i0 = 0;
    int i_max = 0;
    int d = 1;

    struct Shell {
        int level;           // i
        Coord inner_radius;  // exclusive; 0 for the core ball (radius > -1)
        Coord outer_radius;  // inclusive
        bool core;
    };

    std::vector<Shell> shells() const;
    // index i of the unique annulus containing x; throws if |x| > 2^i_max
    int level_of(const Site& x) const;
};

DyadicAnnuli dyadic_annuli(int i0, int i_max, int d);

namespace detail {
// floor(a / b) for b > 0, correct for negative a
inline Coord floor_div(Coord a, Coord b) {
    Coord q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}
// smallest integer >= a/b for b > 0
inline Coord ceil_div(Coord a, Coord b) { return floor_div(a + b - 1, b); }
}  // namespace detail

}  // namespace arwlab
