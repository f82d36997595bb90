#include <cmath>
#include <random>

#include "doctest.h"
#include "lptorus/littlewood_paley.hpp"
#include "lptorus/maximal.hpp"
#include "lptorus/median.hpp"
#include "lptorus/spaces.hpp"

using namespace lpt;

namespace {

Ladder constant_entry_ladder(const Grid& g, double c, int k) {
    Ladder ladder;
    ladder.grid = g;
    ladder.A = 1.0;
    ladder.k_min = k;
    ladder.entries.push_back(SampledFunction::constant(g, cd{c, 0.0}));
    return ladder;
}

Ladder random_test_ladder(const Grid& g, std::uint64_t seed) {
    Ladder ladder;
    ladder.grid = g;
    ladder.A = 1.0;
    ladder.k_min = 0;
    for (int k = 0; k <= g.J; ++k)
        ladder.entries.push_back(random_band_limited(seed ^ (17u * static_cast<std::uint64_t>(k + 1)),
                                                     std::min(std::ldexp(1.0, k), g.N / 2.0 - 1.0),
                                                     g, false));
    return ladder;
}

}  // namespace

TEST_CASE("rearrangement queries") {
    std::vector<double> constant(10, 4.0);
    const Rearrangement rc = rearrangement(constant, 1.0);
    CHECK(rc.query(0.25 * 10.0) == 4.0);
    CHECK(rc.query(0.9 * 10.0) == 4.0);

    std::vector<double> vals = {3.0, 1.0, 2.0};
    const Rearrangement rv = rearrangement(vals, 1.0);
    CHECK(rv.query(2.5) == 1.0);
    CHECK(rv.query(2.5) == ref::rearrangement_query_scan(vals, 1.0, 2.5));

    std::vector<double> zeros(8, 0.0);
    const Rearrangement rz = rearrangement(zeros, 0.25);
    for (double gamma : {0.1, 0.5, 0.9}) CHECK(rz.query(gamma * rz.total_measure()) == 0.0);

    CHECK_THROWS_AS(rearrangement(std::vector<double>{-1.0}, 1.0), std::invalid_argument);
}

TEST_CASE("exceedance bound of the rearrangement threshold") {
    std::mt19937_64 eng(404);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + eng() % 32;
        std::vector<double> vals(n);
        for (double& v : vals) v = static_cast<double>(eng() % 6);  // heavy ties
        const Rearrangement r = rearrangement(vals, 1.0);
        const double gamma = 0.05 + 0.9 * static_cast<double>(eng() % 100) / 100.0;
        const double level = r.query(gamma * static_cast<double>(n));
        std::size_t count = 0;
        for (double v : vals) count += v > level ? 1 : 0;
        CHECK(static_cast<double>(count) <= gamma * static_cast<double>(n));
    }
}

TEST_CASE("order-statistic threshold agrees with the scan oracle") {
    std::vector<double> constant(16, 2.0);
    CHECK(gamma_median(constant, 0.5) == 2.0);

    std::vector<double> half(8, 0.0);
    for (int i = 0; i < 4; ++i) half[static_cast<std::size_t>(i)] = 1.0;
    CHECK(gamma_median(half, 0.5) == 0.0);

    std::vector<double> zeros(8, 0.0);
    CHECK(gamma_median(zeros, 0.25) == 0.0);

    std::mt19937_64 eng(11);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 1 + eng() % 64;
        std::vector<double> vals(n);
        for (double& v : vals) v = static_cast<double>(eng() % 5) * 0.5;
        for (double gamma : {0.25, 0.5, 0.9}) {
            CHECK(gamma_median(vals, gamma) == ref::gamma_median_scan(vals, gamma));
        }
    }
    CHECK_THROWS_AS(gamma_median(std::vector<double>{}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(gamma_median(constant, 1.5), std::invalid_argument);
}

TEST_CASE("tail aggregation over a cube") {
    const Grid g = make_grid(1, 5);
    const DyadicCube P{2, {1, 0}};

    const Ladder cl = constant_entry_ladder(g, 3.0, 4);
    const auto gp = g_function(cl, P, 2.0);
    for (double v : gp) CHECK(v == doctest::Approx(3.0).epsilon(1e-13));

    Ladder zl = cl;
    zl.entries[0] = SampledFunction::zero(g);
    for (double v : g_function(zl, P, 2.0)) CHECK(v == 0.0);

    const Ladder rnd = random_test_ladder(g, 5);
    for (double q : {0.8, 2.0}) {
        const auto fast = g_function(rnd, P, q);
        const auto brute = ref::g_function_brute(rnd, P, q);
        for (std::size_t i = 0; i < fast.size(); ++i)
            CHECK(fast[i] == doctest::Approx(brute[i]).epsilon(1e-12));
    }
}

TEST_CASE("median envelope") {
    const Grid g = make_grid(1, 5);
    const Ladder cl = constant_entry_ladder(g, 2.0, 3);
    const MedianField env = median_envelope(cl, 0.5, 2.0, 0);
    for (double v : env.values) CHECK(v == doctest::Approx(2.0).epsilon(1e-13));

    const Ladder rnd = random_test_ladder(g, 9);
    // deepest level only: each point sees the median of its own singleton cube
    const MedianField deep = median_envelope(rnd, 0.5, 2.0, g.J);
    const auto mins = ladder_min_fields(rnd);
    for (std::size_t x = 0; x < g.point_count(); ++x) {
        double tail = 0.0;
        for (int k = g.J; k <= rnd.k_max(); ++k)
            tail += std::pow(mins[static_cast<std::size_t>(k - rnd.k_min)][x], 2.0);
        CHECK(deep.values[x] == doctest::Approx(std::sqrt(tail)).epsilon(1e-12));
    }
    // shrinking the admissible family can only lower the envelope
    const MedianField e0 = median_envelope(rnd, 0.5, 2.0, 0);
    const MedianField e2 = median_envelope(rnd, 0.5, 2.0, 2);
    const MedianField e4 = median_envelope(rnd, 0.5, 2.0, 4);
    for (std::size_t x = 0; x < g.point_count(); ++x) {
        CHECK(e0.values[x] + 1e-15 >= e2.values[x]);
        CHECK(e2.values[x] + 1e-15 >= e4.values[x]);
    }
}

TEST_CASE("per-cube exceedance of the cube median stays within gamma") {
    const Grid g = make_grid(1, 5);
    const Ladder rnd = random_test_ladder(g, 404);
    for (double gamma : {0.25, 0.5, 0.9}) {
        for (int nu : {1, 3}) {
            for (const DyadicCube& P : cubes_at_level(g, nu)) {
                const auto gp = g_function(rnd, P, 2.0);
                const double med = gamma_median(gp, gamma);
                std::size_t exceed = 0;
                for (double v : gp) exceed += v > med ? 1 : 0;
                CHECK(static_cast<double>(exceed) <= gamma * static_cast<double>(gp.size()));
            }
        }
    }
}

TEST_CASE("subset selection meets the measure bound") {
    const Grid g = make_grid(1, 6);
    const Ladder cl = constant_entry_ladder(g, 1.0, 2);
    const Selection full = select_subsets(cl, 0.5, 2.0);
    for (int nu = 0; nu <= g.J; ++nu)
        for (const DyadicCube& q : cubes_at_level(g, nu))
            CHECK(full.mask_for(q).fraction() == 1.0);

    const Ladder rnd = random_test_ladder(g, 31);
    for (double gamma : {0.05, 0.5}) {
        const Selection sel = select_subsets(rnd, gamma, 2.0);
        for (int nu = 0; nu <= g.J; ++nu)
            for (const DyadicCube& q : cubes_at_level(g, nu)) {
                const SubsetMask sm = sel.mask_for(q);
                CHECK(static_cast<double>(sm.count()) >=
                      (1.0 - gamma) * static_cast<double>(sm.mask.size()));
            }
    }
    // smaller removal fraction keeps more points, cube by cube
    const Selection tight = select_subsets(rnd, 0.05, 2.0);
    const Selection loose = select_subsets(rnd, 0.5, 2.0);
    for (int nu = 0; nu <= g.J; ++nu)
        for (const DyadicCube& q : cubes_at_level(g, nu))
            CHECK(tight.mask_for(q).count() >= loose.mask_for(q).count());
}

TEST_CASE("masked sup norm") {
    const Grid g = make_grid(1, 5);
    const Ladder rnd = random_test_ladder(g, 77);
    const Selection sel = select_subsets(rnd, 0.5, 2.0);
    for (int mu : {0, 2}) {
        const double fast = masked_linfty_lq(rnd, sel, mu, 2.0);
        const double brute = ref::masked_linfty_lq_brute(rnd, sel, mu, 2.0);
        CHECK(fast == doctest::Approx(brute).epsilon(1e-12));
    }

    Ladder zl = rnd;
    for (auto& e : zl.entries) e = SampledFunction::zero(g);
    const Selection zsel = select_subsets(zl, 0.5, 2.0);
    CHECK(masked_linfty_lq(zl, zsel, 0, 2.0) == 0.0);

    // full masks reduce to the unmasked sup of the tail field
    const Ladder cl = constant_entry_ladder(g, 2.0, 3);
    const Selection full = select_subsets(cl, 0.5, 2.0);
    CHECK(masked_linfty_lq(cl, full, 0, 2.0) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("two-sided comparison rows") {
    const Grid g = make_grid(1, 6);

    Ladder zl;
    zl.grid = g;
    zl.A = 1.0;
    zl.k_min = 0;
    for (int k = 0; k <= g.J; ++k) zl.entries.push_back(SampledFunction::zero(g));
    const EquivalenceRow zrow = equivalence_report(zl, 0.5, 2.0, 2.0, 1.0, 0);
    CHECK(zrow.lhs == 0.0);
    CHECK(zrow.rhs == 0.0);
    CHECK(std::isnan(zrow.ratio));

    const Ladder cl = constant_entry_ladder(g, 1.0, 3);
    const EquivalenceRow crow = equivalence_report(cl, 0.5, 2.0, 2.0, 1.0, 0);
    CHECK(std::isfinite(crow.ratio));
    CHECK(crow.ratio > 0.2);
    CHECK(crow.ratio < 5.0);

    const Ladder rnd = random_test_ladder(g, 123);
    const EquivalenceRow rrow = equivalence_report(rnd, 0.5, 2.0, 2.0, 1.0, 2);
    CHECK(std::isfinite(rrow.ratio));
    CHECK(rrow.rhs <= rrow.envelope_sup * (1.0 + 1e-12));

    CHECK_THROWS_AS(equivalence_report(rnd, 0.5, 2.0, 0.5, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(equivalence_report(rnd, 0.5, 2.0, 2.0, 4.0, 0), std::invalid_argument);
}

TEST_CASE("arbitrary admissible masks keep the aggregation comparable") {
    const Grid g = make_grid(1, 5);
    const Ladder rnd = random_test_ladder(g, 55);
    const auto mins = ladder_min_fields(rnd);
    const double gamma = 0.5;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const Selection sel = random_selection(g, gamma, seed);
        // ladder of masked cube-min fields
        Ladder masked;
        masked.grid = g;
        masked.A = 1.0;
        masked.k_min = rnd.k_min;
        for (int k = rnd.k_min; k <= rnd.k_max(); ++k) {
            std::vector<cd> v(g.point_count());
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = sel.in_subset(k, i)
                           ? cd{mins[static_cast<std::size_t>(k - rnd.k_min)][i], 0.0}
                           : cd{0.0, 0.0};
            masked.entries.push_back(SampledFunction::from_values(g, std::move(v)));
        }
        const double full = carleson_sup(rnd, 2.0, 0);
        const double cut = carleson_sup(masked, 2.0, 0);
        const double ratio = cut / full;
        CHECK(std::isfinite(ratio));
        CHECK(ratio > 0.05);
        CHECK(ratio < 5.0);
    }
}
