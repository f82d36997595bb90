#include <cmath>

#include "doctest.h"
#include "lptorus/littlewood_paley.hpp"
#include "lptorus/multiplier.hpp"
#include "lptorus/spaces.hpp"

using namespace lpt;

namespace {

std::vector<SampledFunction> random_pair(const Grid& g, std::uint64_t seed, double band) {
    return {random_band_limited(seed, band, g, false),
            random_band_limited(seed ^ 0xf00du, band, g, false)};
}

}  // namespace

TEST_CASE("identity symbol multiplies pointwise") {
    const Grid g = make_grid(1, 6);
    const SymbolGrid one = SymbolGrid::constant(2, g, cd{1.0, 0.0});
    const auto fs = random_pair(g, 3, g.N / 4.0 - 1.0);
    const SampledFunction out = apply_multiplier(one, fs);
    double dev = 0.0;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        dev = std::max(dev, std::abs(out.values[i] - fs[0].values[i] * fs[1].values[i]));
    CHECK(dev < 1e-10);
}

TEST_CASE("single modes pick out one symbol value") {
    const Grid g = make_grid(1, 6);
    const SymbolGrid m = make_catalog_symbol("smooth01", 2, g);
    const int a = 5, b = -9;
    const std::vector<SampledFunction> fs = {SampledFunction::single_mode(g, {a, 0}),
                                             SampledFunction::single_mode(g, {b, 0})};
    const SampledFunction out = apply_multiplier(m, fs);
    const std::size_t slot_a = static_cast<std::size_t>(index_of_freq(a, g.N));
    const std::size_t slot_b = static_cast<std::size_t>(index_of_freq(b, g.N));
    const cd mval = m.values[slot_a * g.point_count() + slot_b];
    for (std::size_t x = 0; x < out.values.size(); ++x) {
        const double pos = static_cast<double>(x) / g.N;
        const cd expect = mval * std::polar(1.0, 2.0 * std::numbers::pi * pos * (a + b));
        CHECK(std::abs(out.values[x] - expect) < 1e-12);
    }
}

TEST_CASE("unary case matches the spectral multiplier path") {
    const Grid g = make_grid(1, 6);
    const SymbolGrid m = make_catalog_symbol("riesz", 1, g);
    const SampledFunction f = random_band_limited(8, g.N / 2.0 - 1.0, g, false);
    const SampledFunction via_symbol = apply_multiplier(m, std::vector<SampledFunction>{f});
    const SampledFunction via_mask = apply_mask(f, m.values);
    CHECK(max_abs_diff(via_symbol, via_mask) < 1e-12);
}

TEST_CASE("gather path matches definition-level summation") {
    for (int d : {1, 2}) {
        const Grid g = make_grid(d, d == 1 ? 5 : 4);
        const SymbolGrid m = make_catalog_symbol("smooth01", 2, g);
        const auto fs = random_pair(g, 10, g.N / 2.0 - 1.0);
        const SampledFunction fast = apply_multiplier(m, fs);
        const SampledFunction direct = ref::apply_multiplier_direct(m, fs);
        CHECK(max_abs_diff(fast, direct) / (linf_norm(direct) + 1e-300) < 1e-10);
    }
}

TEST_CASE("separable acceleration agrees with the dense path") {
    const Grid g = make_grid(1, 5);
    SeparableSymbol sep;
    sep.n = 2;
    sep.grid = g;
    for (int rank = 0; rank < 2; ++rank) {
        std::vector<std::vector<cd>> term(2, std::vector<cd>(g.point_count()));
        for (int j = 0; j < 2; ++j)
            for (std::size_t p = 0; p < g.point_count(); ++p) {
                const double r = freq_abs(g, p);
                term[static_cast<std::size_t>(j)][p] =
                    std::polar(std::exp(-0.01 * r * r * (rank + 1)), 0.1 * r + rank + j);
            }
        sep.terms.push_back(term);
    }
    const auto fs = random_pair(g, 5, g.N / 2.0 - 1.0);
    const SampledFunction accel = apply_separable(sep, fs);
    const SampledFunction dense = ref::apply_multiplier_direct(sep.materialize(), fs);
    CHECK(max_abs_diff(accel, dense) / (linf_norm(dense) + 1e-300) < 1e-10);
}

TEST_CASE("multilinearity in the first slot") {
    const Grid g = make_grid(1, 5);
    const SymbolGrid m = make_catalog_symbol("angular", 2, g);
    const auto fs = random_pair(g, 21, 10.0);
    const SampledFunction extra = random_band_limited(99, 10.0, g, false);
    const cd alpha{0.3, -0.7}, beta{1.1, 0.2};
    std::vector<cd> combo(g.point_count());
    for (std::size_t i = 0; i < combo.size(); ++i)
        combo[i] = alpha * fs[0].spectrum[i] + beta * extra.spectrum[i];
    const std::vector<SampledFunction> mixed = {
        SampledFunction::from_spectrum(g, std::move(combo)), fs[1]};
    const SampledFunction lhs = apply_multiplier(m, mixed);
    const SampledFunction t1 = apply_multiplier(m, fs);
    const SampledFunction t2 =
        apply_multiplier(m, std::vector<SampledFunction>{extra, fs[1]});
    double dev = 0.0;
    for (std::size_t i = 0; i < lhs.values.size(); ++i)
        dev = std::max(dev, std::abs(lhs.values[i] - alpha * t1.values[i] - beta * t2.values[i]));
    CHECK(dev < 1e-12);
}

TEST_CASE("dilation-window norm") {
    const Grid g = make_grid(1, 8);
    const SymbolGrid one = SymbolGrid::constant(2, g, cd{1.0, 0.0});
    const SymbolNorm n1 = symbol_sobolev_norm(one, 1.0, 2.0, false);
    CHECK(n1.value > 0.0);
    REQUIRE(n1.per_dilation.size() >= 2);
    for (const auto& [l, v] : n1.per_dilation)
        CHECK(std::abs(v - n1.value) / n1.value < 0.1);

    const SymbolGrid zero = SymbolGrid::constant(2, g, cd{0.0, 0.0});
    CHECK(symbol_sobolev_norm(zero, 1.0, 2.0, false).value == 0.0);

    // scale-free symbol: dilation values agree up to discretization
    const SymbolGrid ang = make_catalog_symbol("angular", 2, g);
    const SymbolNorm na = symbol_sobolev_norm(ang, 1.0, 2.0, false);
    for (const auto& [l, v] : na.per_dilation)
        CHECK(std::abs(v - na.value) / na.value < 0.2);

    const SymbolNorm wide = symbol_sobolev_norm(ang, 1.0, 2.0, true);
    CHECK(std::isfinite(wide.value / na.value));
}

TEST_CASE("dominant-slot split covers the symbol") {
    const Grid g = make_grid(1, 6);
    const Partition part = build_partition(g, PartitionMode::homogeneous);
    const SymbolGrid m = make_catalog_symbol("smooth01", 2, g);
    const auto parts = decompose_symbol(m, part);
    REQUIRE(parts.size() == 2);
    double dev = 0.0;
    for (std::size_t i = 0; i < m.total_points(); ++i) {
        const std::size_t s1 = i / g.point_count(), s2 = i % g.point_count();
        if (freq_abs(g, s1) == 0.0 || freq_abs(g, s2) == 0.0) continue;
        const cd sum = parts[0].value_at(i) + parts[1].value_at(i);
        dev = std::max(dev, std::abs(sum - m.values[i]));
    }
    CHECK(dev < 1e-13);

    const SymbolGrid mono = make_catalog_symbol("riesz", 1, g);
    const Partition p1 = build_partition(g, PartitionMode::homogeneous);
    const auto single = decompose_symbol(mono, p1);
    REQUIRE(single.size() == 1);
    for (std::size_t i = 1; i < mono.total_points(); ++i)
        CHECK(std::abs(single[0].value_at(i) - mono.values[i]) < 1e-13);

    // a symbol with a silent second slot puts nothing into the second piece
    const SymbolGrid skew = SymbolGrid::from_function(2, g, [&](auto xi) {
        const double a1 = std::abs(static_cast<double>(xi[0][0]));
        const double a2 = std::abs(static_cast<double>(xi[1][0]));
        return (a2 >= 1.0 && a1 >= 16.0 * a2) ? cd{1.0, 0.0} : cd{0.0, 0.0};
    });
    const auto skew_parts = decompose_symbol(skew, part);
    double leak = 0.0;
    for (std::size_t i = 0; i < skew.total_points(); ++i)
        leak = std::max(leak, std::abs(skew_parts[1].value_at(i)));
    CHECK(leak == 0.0);
}

TEST_CASE("near-diagonal versus separated scales") {
    const Grid g = make_grid(1, 7);
    const Partition part = build_partition(g, PartitionMode::homogeneous);
    const SymbolGrid m = make_catalog_symbol("smooth01", 2, g);
    const LowHighSplit lh = split_low_high(m, part);
    const auto parts = decompose_symbol(m, part);
    double dev = 0.0;
    for (std::size_t i = 0; i < m.total_points(); ++i)
        dev = std::max(dev, std::abs(lh.low.mask[i] + lh.high.mask[i] - parts[0].mask[i]));
    CHECK(dev < 1e-13);

    // comparable scales fall in the near-diagonal part
    const int k = 5;
    const SymbolGrid diag = SymbolGrid::from_function(2, g, [&](auto xi) {
        const double a1 = std::abs(static_cast<double>(xi[0][0]));
        const double a2 = std::abs(static_cast<double>(xi[1][0]));
        const double lo = std::ldexp(1.0, k - 1), hi = std::ldexp(1.0, k);
        return (a1 > lo && a1 <= hi && a2 > lo && a2 <= hi) ? cd{1.0, 0.0} : cd{0.0, 0.0};
    });
    const LowHighSplit dsplit = split_low_high(diag, part);
    double high_leak = 0.0;
    for (std::size_t i = 0; i < diag.total_points(); ++i)
        high_leak = std::max(high_leak, std::abs(diag.values[i] * dsplit.high.mask[i]));
    CHECK(high_leak == 0.0);

    // widely separated scales fall in the separated part
    const SymbolGrid sep = SymbolGrid::from_function(2, g, [&](auto xi) {
        const double a1 = std::abs(static_cast<double>(xi[0][0]));
        const double a2 = std::abs(static_cast<double>(xi[1][0]));
        const double lo = std::ldexp(1.0, k - 1), hi = std::ldexp(1.0, k);
        return (a1 > lo && a1 <= hi && a2 >= 1.0 && a2 <= std::ldexp(1.0, k - 7))
                   ? cd{1.0, 0.0}
                   : cd{0.0, 0.0};
    });
    const LowHighSplit ssplit = split_low_high(sep, part);
    double low_leak = 0.0;
    for (std::size_t i = 0; i < sep.total_points(); ++i)
        low_leak = std::max(low_leak, std::abs(sep.values[i] * ssplit.low.mask[i]));
    CHECK(low_leak == 0.0);
}

TEST_CASE("separated-scale slice output lives on an annulus") {
    const Grid g = make_grid(1, 7);
    const Partition part = build_partition(g, PartitionMode::homogeneous);
    const SymbolGrid m = make_catalog_symbol("smooth01", 2, g);
    const int k = g.J - 3;
    const MaskedSymbol slice = high_slice(m, part, k);
    const auto fs = random_pair(g, 44, g.N / 2.0 - 1.0);
    const SampledFunction out = apply_multiplier(slice, fs);
    double inside = 0.0, outside = 0.0;
    for (std::size_t i = 0; i < out.spectrum.size(); ++i) {
        const double r = freq_abs(g, i);
        const double a = std::abs(out.spectrum[i]);
        if (r < std::ldexp(1.0, k - 3) || r > std::ldexp(1.0, k + 2)) outside = std::max(outside, a);
        else inside = std::max(inside, a);
    }
    CHECK(outside <= 1e-12 * std::max(inside, 1e-300));
}

TEST_CASE("slot transposition") {
    const Grid g = make_grid(1, 5);
    const SymbolGrid one = SymbolGrid::constant(2, g, cd{1.0, 0.0});
    const SymbolGrid tone = transpose_symbol(one, 1);
    for (std::size_t i = 0; i < tone.values.size(); ++i) CHECK(tone.values[i] == cd{1.0, 0.0});

    const SymbolGrid m = make_catalog_symbol("smooth01", 2, g);
    for (int j : {1, 2}) {
        const SymbolGrid twice = transpose_symbol(transpose_symbol(m, j), j);
        for (std::size_t i = 0; i < m.values.size(); ++i) CHECK(twice.values[i] == m.values[i]);
    }

    // adjoint identity under the bilinear pairing
    const auto fs = random_pair(g, 71, g.N / 2.0 - 1.0);
    const SampledFunction h = random_band_limited(5, g.N / 2.0 - 1.0, g, false);
    const cd left = pairing(apply_multiplier(m, fs), h);
    const SymbolGrid m1 = transpose_symbol(m, 1);
    const cd right = pairing(apply_multiplier(m1, std::vector<SampledFunction>{h, fs[1]}), fs[0]);
    CHECK(std::abs(left - right) / std::abs(left) < 1e-9);
}

TEST_CASE("ratio probe basics") {
    const Grid g = make_grid(1, 7);
    ProbeConfig cfg;
    cfg.p = 2.0;
    cfg.p_ij = {{4.0, 4.0}, {4.0, 4.0}};
    cfg.s = 1.5;
    cfg.trials = 4;
    cfg.seed = 17;

    const SymbolGrid zero = SymbolGrid::constant(2, g, cd{0.0, 0.0});
    const ProbeTable zt = boundedness_probe(zero, cfg);
    for (const ProbeRow& r : zt.rows) CHECK(r.lhs == 0.0);

    const SymbolGrid m = make_catalog_symbol("smooth01", 2, g);
    SymbolGrid m2 = m;
    for (cd& z : m2.values) z *= 2.0;
    const ProbeTable t1 = boundedness_probe(m, cfg);
    const ProbeTable t2 = boundedness_probe(m2, cfg);
    for (std::size_t i = 0; i < t1.rows.size(); ++i)
        CHECK(t1.rows[i].ratio == doctest::Approx(t2.rows[i].ratio).epsilon(1e-12));

    ProbeConfig bmo_cfg = cfg;
    bmo_cfg.p_ij = {{std::numeric_limits<double>::infinity(), 2.0}, {4.0, 4.0}};
    const ProbeTable bt = boundedness_probe(SymbolGrid::constant(2, g, cd{1.0, 0.0}), bmo_cfg);
    CHECK(std::isfinite(bt.max_ratio));

    ProbeConfig bad = cfg;
    bad.p_ij = {{4.0, 4.0}, {3.0, 4.0}};
    CHECK_THROWS_AS(boundedness_probe(m, bad), std::invalid_argument);
}

TEST_CASE("budget guards") {
    const Grid g = make_grid(2, 5);
    CHECK_THROWS_AS(SymbolGrid::constant(3, g, cd{1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("product-space cutoffs") {
    const Grid g = make_grid(1, 5);
    for (int n : {1, 2}) {
        const CutoffTheta c = build_cutoff(n, g);
        const double rt = std::sqrt(static_cast<double>(n));
        for (std::size_t i = 0; i < c.theta.size(); ++i) {
            CHECK(c.theta[i] >= 0.0);
            CHECK(c.theta[i] <= 1.0);
            double r2 = 0.0;
            std::size_t rem = i;
            for (int j = 0; j < n; ++j) {
                const std::size_t slot = rem % g.point_count();
                rem /= g.point_count();
                const double fr = freq_abs(g, slot);
                r2 += fr * fr;
            }
            const double r = std::sqrt(r2);
            if (r >= 0.5 && r <= 2.0) CHECK(c.theta[i] == 1.0);
            if (r < 0.25 || r > 4.0) CHECK(c.theta[i] == 0.0);
            if (r >= 0.25 / rt && r <= 2.0 * rt) CHECK(c.theta_wide[i] == 1.0);
            if (r < 0.125 / rt || r > 4.0 * rt) CHECK(c.theta_wide[i] == 0.0);
        }
    }
}
