#include "arwlab/multiscale.hpp"

#include <stdexcept>

namespace arwlab {

namespace {

// largest r with r^q <= n
BigInt iroot(const BigInt& n, const BigInt& q) {
    if (n < 0) throw std::invalid_argument("iroot: negative base");
    if (n <= 1) return n;
    BigInt lo = 1, hi = n;
    while (lo < hi) {
        const BigInt mid = (lo + hi + 1) / 2;
        if (boost::multiprecision::pow(mid, q.convert_to<unsigned>()) <= n)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

BigFloat big_log(const BigInt& n) {
    return boost::multiprecision::log(BigFloat(n));
}

}  // namespace

BigInt floor_pow(const BigInt& base, const BigRat& gamma) {
    const BigInt p = boost::multiprecision::numerator(gamma);
    const BigInt q = boost::multiprecision::denominator(gamma);
    if (p < 0 || q <= 0) throw std::invalid_argument("floor_pow: gamma must be >= 0");
    return iroot(boost::multiprecision::pow(base, p.convert_to<unsigned>()), q);
}

ScaleTable scale_table(const BigInt& L0, const BigRat& gamma, int k_max) {
    if (L0 < 2) throw std::invalid_argument("scale_table: L0 must be >= 2");
    if (gamma <= 0 || gamma >= 1)
        throw std::invalid_argument("scale_table: gamma must lie in (0, 1)");
    if (k_max < 0) throw std::invalid_argument("scale_table: k_max must be >= 0");
    ScaleTable t;
    t.L0 = L0;
    t.gamma = gamma;
    t.L.push_back(L0);
    t.R.push_back(L0);  // sentinel, see header
    for (int k = 0; k < k_max; ++k) {
        const BigInt m = floor_pow(t.L[k], gamma);
        t.R.push_back(m * t.L[k]);
        t.L.push_back(m * m * t.L[k]);
    }
    for (int k = 0; k <= k_max; ++k) {
        if (5 * t.R[k] <= t.L[k]) {
            t.first_small_ring = k;
            break;
        }
    }
    return t;
}

DensityLadder density_ladder(const BigRat& zeta0, int k_max) {
    if (zeta0 <= 0 || zeta0 > 1)
        throw std::invalid_argument("density_ladder: zeta0 must lie in (0, 1]");
    if (k_max < 0) throw std::invalid_argument("density_ladder: k_max must be >= 0");
    DensityLadder lad;
    lad.zeta0 = zeta0;
    BigRat partial = 0;
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) partial += BigRat(1, BigInt(k) * k);
        lad.zeta.push_back(zeta0 * (1 - partial / 4));
    }
    for (int k = 0; k < k_max; ++k) {
        std::array<BigRat, 5> row;
        const BigRat step = zeta0 / (16 * BigRat(BigInt(k + 1) * (k + 1)));
        for (int r = 0; r <= 4; ++r) row[r] = lad.zeta[k] - r * step;
        lad.between.push_back(row);
    }
    return lad;
}

BigFloat recursion_step(const BigFloat& p_k, int k, const RecursionParams& params,
                        const ScaleTable& table) {
    if (p_k < 0 || p_k > 1)
        throw std::invalid_argument("recursion_step: p_k must lie in [0, 1]");
    if (params.c3 < 0 || params.c4 < 0)
        throw std::invalid_argument("recursion_step: constants must be >= 0");
    if (k + 1 >= static_cast<int>(table.L.size()))
        throw std::invalid_argument("recursion_step: k+1 beyond the table");
    const BigFloat ratio = BigFloat(table.L[k + 1]) / BigFloat(table.L[k]);
    const BigFloat growth = boost::multiprecision::pow(ratio, 2 * params.d);
    const BigFloat lk_pow =
        boost::multiprecision::exp(BigRat(table.gamma / 3).convert_to<BigFloat>() *
                                   big_log(table.L[k]));
    BigFloat rhs = growth * p_k * p_k +
                   params.c3 * boost::multiprecision::exp(-params.c4 * lk_pow);
    if (rhs > 1) rhs = 1;
    if (rhs < 0) rhs = 0;
    return rhs;
}

bool induction_check(int k, int d, const BigRat& gamma, const ScaleTable& table,
                     const BigFloat& c3, const BigFloat& c4) {
    if (k < 0 || k >= static_cast<int>(table.L.size()))
        throw std::invalid_argument("induction_check: k beyond the table");
    const BigFloat g = gamma.convert_to<BigFloat>();
    const BigFloat logL = big_log(table.L[k]);
    const BigFloat first =
        boost::multiprecision::exp(4 * d * g * logL - (1 - 2 * g) * logL * logL);
    const BigFloat lk_pow = boost::multiprecision::exp(BigRat(gamma / 3).convert_to<BigFloat>() * logL);
    const BigFloat second = c3 * boost::multiprecision::exp(-c4 * lk_pow);
    return first + second <= 1;
}

Certificate decay_certificate(const RecursionParams& params, const ScaleTable& table,
                              int k_max) {
    if (params.k_bar < 0 || k_max < params.k_bar ||
        k_max >= static_cast<int>(table.L.size()))
        throw std::invalid_argument("decay_certificate: k range outside the table");
    Certificate cert;
    const BigFloat g = table.gamma.convert_to<BigFloat>();
    {
        const BigFloat logL = big_log(table.L[params.k_bar]);
        cert.start_ok = params.p_start <= boost::multiprecision::exp(-logL * logL);
    }
    cert.granted = cert.start_ok;
    if (!cert.start_ok) cert.failing_k = params.k_bar;
    for (int k = params.k_bar; k <= k_max; ++k) {
        CertificateRow row;
        row.k = k;
        const BigFloat logL = big_log(table.L[k]);
        row.threshold = boost::multiprecision::exp(-logL * logL);
        const BigFloat first =
            boost::multiprecision::exp(4 * params.d * g * logL - (1 - 2 * g) * logL * logL);
        const BigFloat lk_pow =
            boost::multiprecision::exp(BigRat(table.gamma / 3).convert_to<BigFloat>() * logL);
        row.induction_lhs =
            first + params.c3 * boost::multiprecision::exp(-params.c4 * lk_pow);
        row.margin = 1 - row.induction_lhs;
        row.induction_ok = row.induction_lhs <= 1;
        if (!row.induction_ok && cert.granted) {
            cert.granted = false;
            cert.failing_k = k;
        }
        cert.rows.push_back(row);
    }
    return cert;
}

}  // namespace arwlab
