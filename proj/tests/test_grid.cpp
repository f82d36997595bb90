#include <cmath>

#include "doctest.h"
#include "lptorus/grid.hpp"
#include "lptorus/reduce.hpp"

using namespace lpt;

TEST_CASE("make_grid accepts the documented range") {
    const Grid g1 = make_grid(1, 8);
    CHECK(g1.N == 256);
    CHECK(g1.cell_volume == doctest::Approx(1.0 / 256).epsilon(1e-15));
    const Grid g2 = make_grid(2, 5);
    CHECK(g2.N == 32);
    CHECK(g2.cell_volume == doctest::Approx(1.0 / 1024).epsilon(1e-15));
    CHECK_THROWS_AS(make_grid(3, 8), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1, 13), std::invalid_argument);
}

TEST_CASE("spectrum of simple functions") {
    const Grid g = make_grid(1, 6);
    const SampledFunction c = SampledFunction::constant(g, cd{2.5, -1.0});
    CHECK(std::abs(c.spectrum[0] - cd{2.5, -1.0}) < 1e-14);
    const auto spec = to_spectrum(c);
    for (std::size_t i = 1; i < spec.size(); ++i) CHECK(std::abs(spec[i]) < 1e-13);

    const SampledFunction mode = SampledFunction::single_mode(g, {5, 0});
    const auto ms = to_spectrum(mode);
    CHECK(std::abs(ms[5] - cd{1.0, 0.0}) < 1e-13);
    CHECK(std::abs(ms[6]) < 1e-13);
}

TEST_CASE("round trip and Parseval on random data") {
    for (int d : {1, 2}) {
        const Grid g = make_grid(d, d == 1 ? 7 : 5);
        const SampledFunction f = random_band_limited(42, g.N / 2.0 - 1.0, g, false);
        const SampledFunction back = SampledFunction::from_values(g, std::vector<cd>(f.values));
        double dev = 0.0;
        for (std::size_t i = 0; i < f.spectrum.size(); ++i)
            dev = std::max(dev, std::abs(back.spectrum[i] - f.spectrum[i]));
        CHECK(dev < 1e-12);
        CHECK(l2_norm(f) == doctest::Approx(spectrum_l2(f)).epsilon(1e-12));
    }
}

TEST_CASE("band projection") {
    const Grid g = make_grid(1, 6);
    const SampledFunction mode = SampledFunction::single_mode(g, {5, 0});
    const SampledFunction keep = band_project(mode, 6.0);
    CHECK(max_abs_diff(keep, mode) < 1e-14);
    const SampledFunction kill = band_project(mode, 4.0);
    CHECK(linf_norm(kill) < 1e-14);

    const SampledFunction f = random_band_limited(7, g.N / 2.0 - 1.0, g, false);
    const SampledFunction proj = band_project(f, g.N / 4.0);
    for (std::size_t i = 0; i < proj.spectrum.size(); ++i)
        if (freq_abs(g, i) > g.N / 4.0) CHECK(proj.spectrum[i] == cd{0.0, 0.0});
    const SampledFunction twice = band_project(proj, g.N / 4.0);
    for (std::size_t i = 0; i < proj.spectrum.size(); ++i)
        CHECK(twice.spectrum[i] == proj.spectrum[i]);
}

TEST_CASE("random band-limited generator") {
    const Grid g = make_grid(1, 7);
    const SampledFunction a = random_band_limited(99, 8.0, g, false);
    const SampledFunction b = random_band_limited(99, 8.0, g, false);
    for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
    CHECK(l2_norm(a) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spectral_radius(a) <= 8.0);

    const SampledFunction c = random_band_limited(5, 0.0, g, false);
    for (const cd& z : c.values) CHECK(std::abs(z - c.values[0]) < 1e-13);
    CHECK(l2_norm(c) == doctest::Approx(1.0).epsilon(1e-12));

    const SampledFunction r = random_band_limited(11, 10.0, g, true);
    for (const cd& z : r.values) CHECK(std::abs(z.imag()) < 1e-12);

    CHECK_THROWS_AS(random_band_limited(1, g.N / 2.0, g, false), std::invalid_argument);
}

TEST_CASE("translation covariance") {
    const Grid g = make_grid(1, 6);
    const SampledFunction f = random_band_limited(13, 20.0, g, false);
    const SampledFunction sh = shift(f, {1, 0});
    double dev = 0.0;
    for (std::size_t i = 0; i < f.spectrum.size(); ++i) {
        const double xi = freq_of_index(static_cast<int>(i), g.N);
        const cd phase = std::polar(1.0, -2.0 * std::numbers::pi * xi / g.N);
        dev = std::max(dev, std::abs(sh.spectrum[i] - f.spectrum[i] * phase));
    }
    CHECK(dev < 1e-12);
}

TEST_CASE("csv round trip") {
    const Grid g = make_grid(1, 4);
    const SampledFunction f = random_band_limited(3, 5.0, g, false);
    save_csv(f, "/tmp/lpt_test_fn.csv", false);
    const SampledFunction back = load_csv("/tmp/lpt_test_fn.csv");
    CHECK(max_abs_diff(f, back) < 1e-16);
}

TEST_CASE("ladder band check") {
    const Grid g = make_grid(1, 6);
    Ladder ladder;
    ladder.grid = g;
    ladder.A = 1.0;
    ladder.k_min = 2;
    ladder.entries.push_back(random_band_limited(1, 4.0, g, false));
    ladder.entries.push_back(random_band_limited(2, 8.0, g, false));
    CHECK_NOTHROW(check_ladder(ladder));
    ladder.entries[0] = random_band_limited(1, 16.0, g, false);
    CHECK_THROWS_AS(check_ladder(ladder), std::invalid_argument);
}
