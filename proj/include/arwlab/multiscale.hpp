#pragma once

#include <array>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace arwlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;
// ~100 decimal digits: far below the 1e-30 working tolerance of the
// certificate computations
using BigFloat = boost::multiprecision::cpp_bin_float_100;

// floor(L^gamma) for rational gamma = p/q in lowest terms, exact: integer
// q-th root of L^p by binary search.
BigInt floor_pow(const BigInt& base, const BigRat& gamma);

// L_{k+1} = floor(L_k^gamma)^2 L_k and R_{k+1} = floor(L_k^gamma) L_k, exact.
// R_0 is not part of the recursion; the table stores R[0] = L[0] as a
// sentinel so the 5R <= L search starts failing at k = 0 by construction.
struct ScaleTable {
    BigInt L0;
    BigRat gamma;
    std::vector<BigInt> L;
    std::vector<BigInt> R;
    int first_small_ring = -1;  // first k with 5 R_k <= L_k; -1 when absent
};

ScaleTable scale_table(const BigInt& L0, const BigRat& gamma, int k_max);

// zeta_k = zeta0 (1 - 1/4 sum_{j=1..k} 1/j^2), with intermediate densities
// zeta_k^r = zeta_k - r zeta0 / (16 (k+1)^2), r = 0..4, all exact rationals;
// zeta_k^4 equals zeta_{k+1} identically.
struct DensityLadder {
    BigRat zeta0;
    std::vector<BigRat> zeta;                     // k = 0..k_max
    std::vector<std::array<BigRat, 5>> between;   // k = 0..k_max-1, r = 0..4
};

DensityLadder density_ladder(const BigRat& zeta0, int k_max);

struct RecursionParams {
    int d = 1;
    BigFloat c3 = 1;
    BigFloat c4 = 1;
    int k_bar = 0;
    BigFloat p_start = 0;  // p at k_bar
};

// One application of the recursion bound:
// p_{k+1} <= (L_{k+1}/L_k)^{2d} p_k^2 + c3 exp(-c4 L_k^{gamma/3}),
// clamped to [0, 1].
BigFloat recursion_step(const BigFloat& p_k, int k, const RecursionParams& params,
                        const ScaleTable& table);

// The inductive-step inequality at level k:
// L_k^{4 d gamma} exp(-(1 - 2 gamma) ln^2 L_k) + c3 exp(-c4 L_k^{gamma/3}) <= 1.
// Natural logarithms throughout.
bool induction_check(int k, int d, const BigRat& gamma, const ScaleTable& table,
                     const BigFloat& c3, const BigFloat& c4);

struct CertificateRow {
    int k = 0;
    BigFloat threshold;      // exp(-ln^2 L_k)
    BigFloat induction_lhs;  // left side of the inductive-step inequality
    BigFloat margin;         // 1 - induction_lhs
    bool induction_ok = false;
};

struct Certificate {
    bool granted = false;
    int failing_k = -1;  // smallest k at which the chain breaks, when refused
    bool start_ok = false;  // p_start <= threshold at k_bar
    std::vector<CertificateRow> rows;
};

// Replays the decay induction: granted iff the starting bound satisfies
// p_{k_bar} <= exp(-ln^2 L_{k_bar}) and the inductive-step inequality holds
// at every k in [k_bar, k_max]; then p_k <= exp(-ln^2 L_k) along the whole
// range. The granted set is re-derivable by the obvious loop over
// induction_check, which the tests do.
Certificate decay_certificate(const RecursionParams& params, const ScaleTable& table,
                              int k_max);

}  // namespace arwlab
