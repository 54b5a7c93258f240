#include "arwlab/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace arwlab {

Coord linf_norm(const Site& x) {
    Coord m = 0;
    for (Coord v : x.c) m = std::max(m, std::llabs(v));
    return m;
}

std::uint64_t site_hash(const Site& x) {
    // splitmix64 finalizer over the coordinates
    std::uint64_t h = 0x51a2b3c4d5e6f708ULL;
    for (Coord c : x.c) {
        std::uint64_t v = h ^ (static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL);
        v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
        v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
        h = v ^ (v >> 31);
    }
    return h;
}

Coord dist_linf(const Site& x, const Site& y) {
    if (x.dim() != y.dim())
        throw std::invalid_argument("dist_linf: dimension mismatch");
    Coord m = 0;
    for (int i = 0; i < x.dim(); ++i) m = std::max(m, std::llabs(x[i] - y[i]));
    return m;
}

Box::Box(Site lo, std::vector<Coord> sides) : lower(std::move(lo)), side(std::move(sides)) {
    if (lower.dim() != static_cast<int>(side.size()))
        throw std::invalid_argument("Box: lower/side dimension mismatch");
    for (Coord s : side)
        if (s <= 0) throw std::invalid_argument("Box: nonpositive side");
}

Box Box::cube(Site lo, Coord s) {
    return Box(lo, std::vector<Coord>(lo.dim(), s));
}

Box Box::ball(int d, Coord radius) {
    return Box(Site(std::vector<Coord>(d, -radius)), std::vector<Coord>(d, 2 * radius + 1));
}

bool Box::contains(const Site& x) const {
    for (int i = 0; i < dim(); ++i)
        if (x[i] < lower[i] || x[i] >= lower[i] + side[i]) return false;
    return true;
}

Coord Box::volume() const {
    Coord v = 1;
    for (Coord s : side) v *= s;
    return v;
}

std::vector<Site> Box::sites() const {
    std::vector<Site> out;
    out.reserve(static_cast<size_t>(volume()));
    Site cur = lower;
    while (true) {
        out.push_back(cur);
        int axis = dim() - 1;
        while (axis >= 0) {
            if (++cur.c[axis] < lower[axis] + side[axis]) break;
            cur.c[axis] = lower[axis];
            --axis;
        }
        if (axis < 0) break;
    }
    return out;
}

SiteSet Box::site_set() const {
    auto v = sites();
    return SiteSet(v.begin(), v.end());
}

bool Box::on_internal_boundary(const Site& x) const {
    if (!contains(x)) return false;
    for (int i = 0; i < dim(); ++i)
        if (x[i] == lower[i] || x[i] == lower[i] + side[i] - 1) return true;
    return false;
}

SiteSet Box::internal_boundary() const {
    SiteSet out;
    for (const Site& x : sites())
        if (on_internal_boundary(x)) out.insert(x);
    return out;
}

SiteSet internal_boundary(const SiteSet& a) {
    SiteSet out;
    for (const Site& x : a) {
        for (const Site& n : linf_neighbors(x)) {
            if (!a.count(n)) {
                out.insert(x);
                break;
            }
        }
    }
    return out;
}

std::vector<Site> linf_neighbors(const Site& x) {
    const int d = x.dim();
    std::vector<Site> out;
    Site cur = x;
    std::vector<int> off(d, -1);
    while (true) {
        bool all_zero = true;
        for (int i = 0; i < d; ++i) {
            cur.c[i] = x[i] + off[i];
            if (off[i] != 0) all_zero = false;
        }
        if (!all_zero) out.push_back(cur);
        int axis = d - 1;
        while (axis >= 0) {
            if (++off[axis] <= 1) break;
            off[axis] = -1;
            --axis;
        }
        if (axis < 0) break;
    }
    return out;
}

std::vector<Site> nn_neighbors(const Site& x) {
    std::vector<Site> out;
    out.reserve(2 * x.dim());
    for (int i = 0; i < x.dim(); ++i) {
        out.push_back(x.shifted(i, +1));
        out.push_back(x.shifted(i, -1));
    }
    return out;
}

Paving::Paving(Coord ell, Site off) : side(ell), offset(std::move(off)) {
    if (ell <= 0) throw std::invalid_argument("Paving: side must be positive");
}

Site Paving::index_of(const Site& x) const {
    if (x.dim() != dim()) throw std::invalid_argument("Paving: dimension mismatch");
    Site k = x;
    for (int i = 0; i < dim(); ++i) k.c[i] = detail::floor_div(x[i] - offset[i], side);
    return k;
}

Box Paving::box_at(const Site& index) const {
    Site lo = offset;
    for (int i = 0; i < dim(); ++i) lo.c[i] += side * index[i];
    return Box::cube(lo, side);
}

Box Paving::half_kernel_at(const Site& index) const {
    // integer points of [ell/4, 3 ell/4) relative to the tile anchor
    const Coord lo = detail::ceil_div(side, 4);
    const Coord hi = detail::ceil_div(3 * side, 4);  // first excluded integer
    if (hi <= lo) throw std::invalid_argument("Paving: side too small for a half-kernel");
    Box tile = box_at(index);
    Site anchor = tile.lower;
    for (int i = 0; i < dim(); ++i) anchor.c[i] += lo;
    return Box::cube(anchor, hi - lo);
}

bool Paving::in_half_kernel(const Site& x) const {
    return half_kernel_at(index_of(x)).contains(x);
}

KernelTriple kernel_triple(Coord L, Coord R, const Site& index) {
    if (L <= 0 || R <= 0) throw std::invalid_argument("kernel_triple: L and R must be positive");
    if (5 * R > L)
        throw std::invalid_argument("kernel_triple: need 5R <= L, got 5*" + std::to_string(R) +
                                    " = " + std::to_string(5 * R) + " > " + std::to_string(L));
    const int d = index.dim();
    Site anchor = index;
    for (int i = 0; i < d; ++i) anchor.c[i] *= L;
    KernelTriple t;
    t.ring = R;
    t.outer = Box::cube(anchor, L);
    Site mid = anchor, inn = anchor;
    for (int i = 0; i < d; ++i) {
        mid.c[i] += R;
        inn.c[i] += 2 * R;
    }
    t.middle = Box::cube(mid, L - 2 * R);
    t.inner = Box::cube(inn, L - 4 * R);
    return t;
}

DyadicAnnuli dyadic_annuli(int i0, int i_max, int d) {
    if (i_max < i0) throw std::invalid_argument("dyadic_annuli: i_max < i0");
    if (i0 < 0 || i_max > 62) throw std::invalid_argument("dyadic_annuli: level out of range");
    return DyadicAnnuli{i0, i_max, d};
}

std::vector<DyadicAnnuli::Shell> DyadicAnnuli::shells() const {
    std::vector<Shell> out;
    out.push_back(Shell{i0, 0, Coord(1) << i0, true});
    for (int i = i0 + 1; i <= i_max; ++i)
        out.push_back(Shell{i, Coord(1) << (i - 1), Coord(1) << i, false});
    return out;
}

int DyadicAnnuli::level_of(const Site& x) const {
    const Coord n = linf_norm(x);
    if (n <= (Coord(1) << i0)) return i0;
    for (int i = i0 + 1; i <= i_max; ++i)
        if (n <= (Coord(1) << i)) return i;
    throw std::out_of_range("dyadic_annuli: site outside covered ball");
}

}  // namespace arwlab
