#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arwlab/multiscale.hpp"

using namespace arwlab;

namespace {

ScaleTable default_table(int k_max = 20) {
    return scale_table(BigInt(10000), BigRat(1, 10), k_max);
}

double as_double(const BigFloat& x) { return x.convert_to<double>(); }

}  // namespace

TEST_CASE("floor_pow exact integer roots") {
    CHECK(floor_pow(BigInt(10000), BigRat(1, 10)) == 2);
    CHECK(floor_pow(BigInt(1024), BigRat(1, 10)) == 2);   // exactly 2
    CHECK(floor_pow(BigInt(1023), BigRat(1, 10)) == 1);
    CHECK(floor_pow(BigInt(1), BigRat(1, 10)) == 1);
    CHECK(floor_pow(BigInt(59049), BigRat(1, 10)) == 3);  // 3^10 = 59049
    CHECK(floor_pow(BigInt(8), BigRat(2, 3)) == 4);
}

TEST_CASE("scale table frozen values") {
    const ScaleTable t = default_table(6);
    REQUIRE(t.L.size() == 7);
    const long long expected_L[] = {10000,    40000,     160000,      1440000,
                                    23040000, 576000000, 28224000000};
    const long long expected_R[] = {10000,   20000,     80000,      480000,
                                    5760000, 115200000, 4032000000};
    for (int k = 0; k <= 6; ++k) {
        CHECK(t.L[static_cast<std::size_t>(k)] == expected_L[k]);
        CHECK(t.R[static_cast<std::size_t>(k)] == expected_R[k]);
    }
    CHECK(t.first_small_ring == 5);  // 5 * 115200000 <= 576000000, first time

    CHECK_THROWS_AS(scale_table(BigInt(1), BigRat(1, 10), 3), std::invalid_argument);
    CHECK_THROWS_AS(scale_table(BigInt(10000), BigRat(3, 2), 3), std::invalid_argument);
}

TEST_CASE("scales grow and rings stay inside") {
    const ScaleTable t = default_table(12);
    for (std::size_t k = 1; k < t.L.size(); ++k) {
        CHECK(t.L[k] > t.L[k - 1]);
        CHECK(t.R[k] >= t.L[k - 1]);     // R_{k+1} = floor(L_k^gamma) L_k >= L_k
        CHECK(t.R[k] * t.R[k] >= t.L[k] * t.L[k - 1]);  // R^2 = L_{k+1} L_k exactly
        CHECK(t.R[k] * t.R[k] == t.L[k] * t.L[k - 1]);
    }
    // past the first small ring the ratio keeps improving enough to stay small
    for (std::size_t k = static_cast<std::size_t>(t.first_small_ring); k < t.L.size(); ++k)
        CHECK(5 * t.R[k] <= t.L[k]);
}

TEST_CASE("density ladder is exact and interleaved") {
    const DensityLadder lad = density_ladder(BigRat(1, 2), 30);
    REQUIRE(lad.zeta.size() == 31);
    CHECK(lad.zeta[0] == BigRat(1, 2));
    CHECK(lad.zeta[1] == BigRat(3, 8));  // zeta0 (1 - 1/4)
    for (std::size_t k = 0; k + 1 < lad.zeta.size(); ++k) {
        CHECK(lad.zeta[k + 1] < lad.zeta[k]);
        // intermediate densities strictly interleave and close the gap exactly
        const auto& row = lad.between[k];
        CHECK(row[0] == lad.zeta[k]);
        CHECK(row[4] == lad.zeta[k + 1]);
        for (int r = 0; r < 4; ++r) {
            CHECK(row[static_cast<std::size_t>(r + 1)] < row[static_cast<std::size_t>(r)]);
            // uniform step zeta0 / (16 (k+1)^2)
            CHECK(row[static_cast<std::size_t>(r)] - row[static_cast<std::size_t>(r + 1)] ==
                  BigRat(1, 2) / (16 * BigRat((k + 1) * (k + 1))));
        }
    }
    // the limit stays above zeta0 / 2: sum 1/j^2 < pi^2/6 < 2
    CHECK(lad.zeta.back() > BigRat(1, 4));

    CHECK_THROWS_AS(density_ladder(BigRat(0), 3), std::invalid_argument);
    CHECK_THROWS_AS(density_ladder(BigRat(3, 2), 3), std::invalid_argument);
}

TEST_CASE("recursion step frozen oracle") {
    const ScaleTable t = default_table(8);
    RecursionParams params;  // d=1, c3=c4=1
    // p_0 = exp(-ln^2 L_0)
    const BigFloat p0 = exp(-log(BigFloat(10000)) * log(BigFloat(10000)));
    const BigFloat p1 = recursion_step(p0, 0, params, t);
    CHECK(as_double(p1) == doctest::Approx(0.25682601934077765824).epsilon(1e-14));
    const BigFloat p2 = recursion_step(p1, 1, params, t);
    CHECK(p2 == 1);  // clamped: the quadratic term alone exceeds 1

    // zero start and zero noise stays zero
    RecursionParams quiet = params;
    quiet.c3 = 0;
    CHECK(recursion_step(BigFloat(0), 0, quiet, t) == 0);

    // clamping to [0, 1]
    CHECK(recursion_step(BigFloat(1), 0, params, t) == 1);

    // monotone in p_k and in c3
    CHECK(recursion_step(BigFloat("1e-40"), 0, params, t) <=
          recursion_step(BigFloat("1e-20"), 0, params, t));
    RecursionParams loud = params;
    loud.c3 = 10;
    CHECK(recursion_step(p0, 0, params, t) <= recursion_step(p0, 0, loud, t));

    // stepping past the end of the table is an error
    CHECK_THROWS_AS(recursion_step(p0, 8, params, t), std::invalid_argument);
}

TEST_CASE("induction check at level 0") {
    const ScaleTable t = default_table(8);
    CHECK(induction_check(0, 1, BigRat(1, 10), t, BigFloat(1), BigFloat(1)));
    CHECK_FALSE(induction_check(0, 1, BigRat(1, 10), t, BigFloat(1e6), BigFloat(1)));
    // once true it stays true along the table (both terms shrink in k)
    bool seen_true = false;
    for (int k = 0; k <= 8; ++k) {
        const bool ok = induction_check(k, 1, BigRat(1, 10), t, BigFloat(1), BigFloat(1));
        if (seen_true) CHECK(ok);
        seen_true = seen_true || ok;
    }
    CHECK(seen_true);
}

TEST_CASE("decay certificate: granted range matches the explicit loop") {
    const int k_max = 20;
    const ScaleTable t = default_table(k_max);
    for (int k_bar : {0, 1, 3, 7}) {
        RecursionParams params;
        params.k_bar = k_bar;
        params.p_start =
            exp(-log(BigFloat(t.L[static_cast<std::size_t>(k_bar)])) *
                log(BigFloat(t.L[static_cast<std::size_t>(k_bar)])));
        const Certificate cert = decay_certificate(params, t, k_max);
        CHECK(cert.start_ok);
        // independent re-derivation: the certificate is exactly the chain of
        // induction checks from k_bar to k_max
        bool expect = true;
        for (int k = k_bar; k <= k_max; ++k)
            expect = expect && induction_check(k, 1, BigRat(1, 10), t, params.c3, params.c4);
        CHECK(cert.granted == expect);
        CHECK(cert.granted);
        CHECK(static_cast<int>(cert.rows.size()) == k_max - k_bar + 1);
        for (const auto& row : cert.rows) {
            CHECK(row.induction_ok);
            CHECK(row.margin > 0);
            CHECK(row.threshold > 0);
        }
    }
}

TEST_CASE("decay certificate refusals") {
    const ScaleTable t = default_table(10);

    // starting bound too weak
    RecursionParams high;
    high.p_start = BigFloat("0.5");
    const Certificate c1 = decay_certificate(high, t, 10);
    CHECK_FALSE(c1.start_ok);
    CHECK_FALSE(c1.granted);

    // c4 = 0 kills the noise decay: the inductive step fails everywhere
    RecursionParams dead;
    dead.c4 = 0;
    dead.p_start = exp(-log(BigFloat(10000)) * log(BigFloat(10000)));
    const Certificate c2 = decay_certificate(dead, t, 10);
    CHECK(c2.start_ok);
    CHECK_FALSE(c2.granted);
    CHECK(c2.failing_k == 0);

    // oversized noise amplitude also refuses, at a positive level
    RecursionParams loud;
    loud.c3 = BigFloat("1e6");
    loud.p_start = dead.p_start;
    const Certificate c3 = decay_certificate(loud, t, 10);
    CHECK_FALSE(c3.granted);
    CHECK(c3.failing_k >= 0);
}
