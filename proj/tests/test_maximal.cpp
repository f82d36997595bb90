#include <cmath>

#include "doctest.h"
#include "lptorus/maximal.hpp"
#include "lptorus/spaces.hpp"

using namespace lpt;

TEST_CASE("window maximal of constants and spikes") {
    const Grid g = make_grid(1, 4);
    const SampledFunction c = SampledFunction::constant(g, cd{-3.0, 0.0});
    const MaximalField mc = hl_maximal(c, 1.0);
    for (double v : mc.values) CHECK(v == doctest::Approx(3.0).epsilon(1e-12));

    std::vector<cd> spike(g.point_count(), cd{0.0, 0.0});
    spike[2] = cd{1.0, 0.0};
    const SampledFunction f = SampledFunction::from_values(g, std::move(spike));
    const MaximalField fast = hl_maximal(f, 1.0);
    const MaximalField brute = ref::hl_maximal_brute(f, 1.0);
    for (std::size_t i = 0; i < fast.values.size(); ++i)
        CHECK(fast.values[i] == doctest::Approx(brute.values[i]).epsilon(1e-12));
    for (std::size_t i = 0; i < fast.values.size(); ++i)
        CHECK(fast.values[i] + 1e-12 >= std::abs(f.values[i]));
}

TEST_CASE("window maximal agrees with the exhaustive scan") {
    for (int d : {1, 2}) {
        const Grid g = make_grid(d, d == 1 ? 5 : 4);
        const SampledFunction f = random_band_limited(21, g.N / 2.0 - 1.0, g, false);
        for (double r : {0.5, 1.0, 2.0}) {
            const MaximalField fast = hl_maximal(f, r);
            const MaximalField brute = ref::hl_maximal_brute(f, r);
            double dev = 0.0;
            for (std::size_t i = 0; i < fast.values.size(); ++i)
                dev = std::max(dev, std::abs(fast.values[i] - brute.values[i]));
            CHECK(dev < 1e-11);
        }
    }
}

TEST_CASE("penalized variant") {
    const Grid g = make_grid(1, 5);
    const SampledFunction f = random_band_limited(4, 8.0, g, false);
    const MaximalField base = hl_maximal(f, 1.0);
    const MaximalField eps0 = variant_maximal(f, 1.0, 3, 0.0);
    for (std::size_t i = 0; i < base.values.size(); ++i) CHECK(base.values[i] == eps0.values[i]);

    const SampledFunction c = SampledFunction::constant(g, cd{2.0, 0.0});
    const MaximalField vc = variant_maximal(c, 1.0, 3, 1.5);
    for (double v : vc.values) CHECK(v == doctest::Approx(2.0).epsilon(1e-12));

    const MaximalField e1 = variant_maximal(f, 1.0, 3, 0.5);
    const MaximalField e2 = variant_maximal(f, 1.0, 3, 1.0);
    for (std::size_t i = 0; i < e1.values.size(); ++i) CHECK(e1.values[i] + 1e-15 >= e2.values[i]);

    CHECK_THROWS_AS(hl_maximal(f, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(variant_maximal(f, 1.0, 3, -0.5), std::invalid_argument);
}

TEST_CASE("weighted local-size operator") {
    const Grid g = make_grid(1, 6);
    const SampledFunction mode = SampledFunction::single_mode(g, {9, 0});
    const MaximalField sup_field = peetre_maximal(mode, 2.0, 4, t_infinity);
    for (double v : sup_field.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    // finite-exponent field of a single mode is the weight quadrature
    const int k = 4;
    const double sigma = 2.0, t = 1.0;
    const MaximalField avg_field = peetre_maximal(mode, sigma, k, t);
    double wsum = 0.0;
    for (std::size_t y = 0; y < g.point_count(); ++y)
        wsum += std::pow(1.0 + std::ldexp(1.0, k) * torus_dist(g, y, 0), -sigma * t);
    const double expected =
        std::pow(std::ldexp(1.0, k), g.d / t) * std::pow(wsum * g.cell_volume, 1.0 / t);
    for (double v : avg_field.values) CHECK(v == doctest::Approx(expected).epsilon(1e-11));

    const MaximalField z = peetre_maximal(SampledFunction::zero(g), 2.0, 3, 1.0);
    for (double v : z.values) CHECK(v == 0.0);

    CHECK_THROWS_AS(peetre_maximal(mode, -1.0, 3, 1.0), std::invalid_argument);
}

TEST_CASE("transform path matches the direct sum") {
    const Grid g = make_grid(1, 5);
    const SampledFunction f = random_band_limited(31, 8.0, g, false);
    for (double t : {0.7, 1.0, 2.0}) {
        const MaximalField fast = peetre_maximal(f, 2.5, 3, t);
        const MaximalField direct = ref::peetre_maximal_direct(f, 2.5, 3, t);
        double dev = 0.0;
        for (std::size_t i = 0; i < fast.values.size(); ++i)
            dev = std::max(dev, std::abs(fast.values[i] - direct.values[i]));
        CHECK(dev < 1e-11);
    }
    const MaximalField fast_inf = peetre_maximal(f, 2.5, 3, t_infinity);
    const MaximalField direct_inf = ref::peetre_maximal_direct(f, 2.5, 3, t_infinity);
    for (std::size_t i = 0; i < fast_inf.values.size(); ++i)
        CHECK(fast_inf.values[i] == doctest::Approx(direct_inf.values[i]).epsilon(1e-12));
}

TEST_CASE("stacked window-maximal fields keep ladder norms comparable") {
    const Grid g = make_grid(1, 6);
    Ladder ladder;
    ladder.grid = g;
    ladder.A = 1.0;
    ladder.k_min = 0;
    for (int k = 0; k <= g.J; ++k)
        ladder.entries.push_back(random_band_limited(300 + static_cast<std::uint64_t>(k),
                                                     std::min(std::ldexp(1.0, k), g.N / 2.0 - 1.0),
                                                     g, false));
    Ladder maximal;
    maximal.grid = g;
    maximal.A = 1.0;
    maximal.k_min = 0;
    for (int k = 0; k <= g.J; ++k) {
        const MaximalField mf = hl_maximal(ladder.at(k), 1.0);  // r = 1 < min(p, q) = 2
        std::vector<cd> v(mf.values.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = cd{mf.values[i], 0.0};
        maximal.entries.push_back(SampledFunction::from_values(g, std::move(v)));
    }
    const double ratio = lp_lq_norm(maximal, 2.0, 2.0) / lp_lq_norm(ladder, 2.0, 2.0);
    CHECK(ratio >= 1.0 - 1e-12);  // the field dominates pointwise
    CHECK(ratio < 10.0);
}

TEST_CASE("domination ratios stay finite at a fixed seed") {
    const Grid g = make_grid(1, 5);
    const int k = 3;
    const SampledFunction f = random_band_limited(8, std::ldexp(1.0, k), g, false);
    const MaximalField m1 = peetre_maximal(f, 2.0, k, 1.0);
    const MaximalField m2 = peetre_maximal(f, 2.0, k, 2.0);
    const MaximalField hl = variant_maximal(f, 1.0, k, 0.5);
    double r_compare = 0.0, r_dom = 0.0;
    for (std::size_t i = 0; i < m1.values.size(); ++i) {
        if (m1.values[i] > 1e-13) r_compare = std::max(r_compare, m2.values[i] / m1.values[i]);
        if (hl.values[i] > 1e-13) r_dom = std::max(r_dom, m1.values[i] / hl.values[i]);
    }
    CHECK(std::isfinite(r_compare));
    CHECK(r_compare < 20.0);
    CHECK(std::isfinite(r_dom));
    CHECK(r_dom < 50.0);
}
