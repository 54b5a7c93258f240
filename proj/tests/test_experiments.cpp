#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "arwlab/experiments.hpp"

using namespace arwlab;

TEST_CASE("parallel_trials: deterministic and complete for any job count") {
    const long long n = 64;
    auto run = [&](int jobs) {
        std::vector<std::uint64_t> out(static_cast<std::size_t>(n), 0);
        parallel_trials(n, jobs, 99, [&](long long t, Rng& rng) {
            out[static_cast<std::size_t>(t)] = rng.next_u64();
        });
        return out;
    };
    const auto serial = run(1);
    for (std::uint64_t v : serial) CHECK(v != 0);
    CHECK(run(4) == serial);
    CHECK(run(0) == serial);
    CHECK_THROWS_AS(parallel_trials(-1, 1, 0, [](long long, Rng&) {}),
                    std::invalid_argument);
}

TEST_CASE("estimate_escape validation and empty starts") {
    EscapeSpec spec;
    spec.box = Box(Site{0}, {5});
    spec.trials = 0;
    CHECK_THROWS_AS(estimate_escape(spec), std::invalid_argument);

    spec.trials = 10;
    spec.fixed_sites = {Site{0}};  // on the boundary
    CHECK_THROWS_AS(estimate_escape(spec), std::invalid_argument);

    // density zero: nothing ever escapes, exactly
    spec.fixed_sites.clear();
    spec.density = 0;
    spec.trials = 50;
    const TrialReport r = estimate_escape(spec);
    CHECK(r.trials == 50);
    CHECK(r.successes == 0);
    CHECK(r.excluded == 0);
}

TEST_CASE("single particle in a 3-site box escapes with probability 1/(1+lambda)") {
    // interior site 1 of [0, 3): the first instruction decides the trial —
    // a sleep fixes the particle, any jump reaches the boundary
    EscapeSpec spec;
    spec.box = Box(Site{0}, {3});
    spec.fixed_sites = {Site{1}};
    spec.lambda = 1.0;
    spec.trials = 4000;
    spec.seed = 21;
    spec.jobs = 2;
    const TrialReport r = estimate_escape(spec);
    CHECK(r.excluded == 0);
    CHECK(r.interval.lo < 0.5);
    CHECK(r.interval.hi > 0.5);
    CHECK(static_cast<double>(r.successes) / static_cast<double>(r.trials) ==
          doctest::Approx(0.5).epsilon(0.05));

    spec.lambda = 3.0;
    spec.seed = 22;
    const TrialReport r3 = estimate_escape(spec);
    CHECK(static_cast<double>(r3.successes) / static_cast<double>(r3.trials) ==
          doctest::Approx(0.25).epsilon(0.1));
}

TEST_CASE("estimate_escape flags budget-exhausted trials as excluded") {
    EscapeSpec spec;
    spec.box = Box(Site{0}, {5});
    spec.fixed_sites = {Site{2}};
    spec.trials = 20;
    spec.max_steps = 0;
    const TrialReport r = estimate_escape(spec);
    CHECK(r.excluded == 20);
    CHECK(r.trials == 0);
}

TEST_CASE("SSM escape backend agrees with a hand case") {
    // one message into the center of a 3-site box at kappa = 1: it is always
    // forwarded to a boundary site, so escape is certain
    EscapeSpec spec;
    spec.model = Model::SSM;
    spec.kappa = 1;
    spec.box = Box(Site{0}, {3});
    spec.fixed_sites = {Site{1}};
    spec.trials = 200;
    const TrialReport r = estimate_escape(spec);
    CHECK(r.successes == r.trials);

    // at kappa = 2 a single message is retained at the center: never escapes
    spec.kappa = 2;
    const TrialReport r2 = estimate_escape(spec);
    CHECK(r2.successes == 0);
}

TEST_CASE("escape_indicator: hand cases and paired-subset domination") {
    const Box box = Box(Site{-4}, {9});

    // a particle already on the boundary escapes by definition
    {
        TapeSet tapes(1, 0.5, 1);
        World w = World::from_particles(1, {Site{4}});
        CHECK(escape_indicator(w, tapes, box));
    }
    // the empty configuration never escapes
    {
        TapeSet tapes(1, 0.5, 2);
        World w;
        w.d = 1;
        CHECK_FALSE(escape_indicator(w, tapes, box));
    }

    // shared tapes: removing particles can only turn escapes off
    Rng rng(33);
    for (int rep = 0; rep < 200; ++rep) {
        TapeSet tapes(1, 0.5, rng.next_u64());
        std::vector<Site> pts;
        const int n = 2 + static_cast<int>(rng.uniform_below(6));
        for (int i = 0; i < n; ++i)
            pts.push_back(Site{static_cast<Coord>(rng.uniform_below(7)) - 3});
        std::vector<Site> fewer = pts;
        fewer.erase(fewer.begin() + static_cast<long>(rng.uniform_below(fewer.size())));

        const bool big = escape_indicator(World::from_particles(1, pts), tapes, box);
        const bool small = escape_indicator(World::from_particles(1, fewer), tapes, box);
        if (small) CHECK(big);
    }
}

TEST_CASE("is_balanced counts per tile") {
    const Paving paving(4, Site{0});
    // tiles [0,4) and [4,8); zeta * ell = 2 points allowed per tile
    CHECK(is_balanced({Site{0}, Site{1}, Site{4}}, paving, 0.5));
    CHECK_FALSE(is_balanced({Site{0}, Site{1}, Site{2}}, paving, 0.5));
    CHECK(is_balanced({}, paving, 0.0));
    CHECK_FALSE(is_balanced({Site{9}}, paving, 0.0));
}

TEST_CASE("coupled initials: the sparse set is a sub-multiset of the dense set") {
    Rng rng(5);
    for (int rep = 0; rep < 50; ++rep) {
        const auto [sparse, dense] = coupled_initials(0.2, 0.7, 4, 1 + rep % 2, rng);
        std::map<Site, long long> count;
        for (const Site& x : dense) ++count[x];
        for (const Site& x : sparse) CHECK(--count[x] >= 0);
    }
    Rng r2(6);
    CHECK_THROWS_AS(coupled_initials(0.7, 0.2, 2, 1, r2), std::invalid_argument);
}

TEST_CASE("origin activity proxy is monotone under coupled initials") {
    Rng rng(8);
    for (int rep = 0; rep < 100; ++rep) {
        const auto [sparse, dense] = coupled_initials(0.3, 0.8, 3, 1, rng);
        TapeSet tapes(1, 1.0, rng.next_u64());
        StabilizeOptions opts;
        opts.policy = OrderPolicy::SiteSweep;
        const long long lo =
            origin_activity_proxy(World::from_particles(1, sparse), tapes, opts);
        const long long hi =
            origin_activity_proxy(World::from_particles(1, dense), tapes, opts);
        CHECK(lo <= hi);
        CHECK(lo >= 0);
    }
}

TEST_CASE("fixation tails: exact structural properties") {
    FixationSpec spec;
    spec.zeta = 0.25;
    spec.m_ladder = {1, 2, 4};
    spec.l_grid = {0, 1, 2, 4, 8};
    spec.trials = 60;
    spec.seed = 7;
    spec.tape_proxy = true;
    const FixationTable t = fixation_tail(spec);
    REQUIRE(t.tail.size() == 3);
    for (const auto& row : t.tail) {
        REQUIRE(row.size() == 5);
        CHECK(row[0] == 1.0);  // every activity count is >= 0
        for (std::size_t j = 1; j < row.size(); ++j) CHECK(row[j] <= row[j - 1]);
    }

    // zeta = 0: no particles, so every positive-l tail is exactly zero
    FixationSpec quiet = spec;
    quiet.zeta = 0.0;
    const FixationTable tq = fixation_tail(quiet);
    for (const auto& row : tq.tail)
        for (std::size_t j = 1; j < row.size(); ++j) CHECK(row[j] == 0.0);

    // paired zeta-monotonicity is exact: same seed, coupled initials, shared
    // tape streams, monotone statistic
    FixationSpec dense = spec;
    dense.zeta = 0.6;
    const FixationTable td = fixation_tail(dense);
    for (std::size_t i = 0; i < t.tail.size(); ++i)
        for (std::size_t j = 0; j < t.tail[i].size(); ++j)
            CHECK(t.tail[i][j] <= td.tail[i][j]);

    // the timed backend runs and keeps the structural tail shape
    FixationSpec timed = spec;
    timed.tape_proxy = false;
    timed.trials = 20;
    timed.horizon = 10;
    const FixationTable tt = fixation_tail(timed);
    for (const auto& row : tt.tail)
        for (std::size_t j = 1; j < row.size(); ++j) CHECK(row[j] <= row[j - 1]);

    FixationSpec bad = spec;
    bad.m_ladder = {2, 2};
    CHECK_THROWS_AS(fixation_tail(bad), std::invalid_argument);
}

TEST_CASE("driven dissipation: single SSM site cycles mod kappa") {
    DDSpec spec;
    spec.model = Model::SSM;
    spec.d = 1;
    spec.n = 1;
    spec.kappa = 3;
    spec.insertions = 9;
    spec.seed = 7;
    const DDCurve c = driven_dissipation(spec);
    CHECK_FALSE(c.aborted);
    CHECK(c.remaining == std::vector<long long>({1, 2, 0, 1, 2, 0, 1, 2, 0}));
    CHECK(c.inserted == 9);
    // every completed triple is forwarded out of the single-site box
    CHECK(c.dissipated == 9);
}

TEST_CASE("driven dissipation: conservation on small boxes, both engines") {
    for (Model model : {Model::ARW, Model::SSM}) {
        DDSpec spec;
        spec.model = model;
        spec.d = 1;
        spec.n = 5;
        spec.kappa = 3;
        spec.lambda = 1.0;
        spec.insertions = 40;
        spec.seed = 3;
        const DDCurve c = driven_dissipation(spec);
        CHECK_FALSE(c.aborted);
        REQUIRE(c.remaining.size() == 40);
        CHECK(c.remaining.back() + c.dissipated == c.inserted);
        for (std::size_t i = 0; i < c.remaining.size(); ++i) {
            CHECK(c.remaining[i] >= 0);
            CHECK(c.remaining[i] <= static_cast<long long>(i) + 1);
        }
    }
}
