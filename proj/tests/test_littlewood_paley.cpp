#include <cmath>
#include <fstream>

#include "doctest.h"
#include "lptorus/littlewood_paley.hpp"
#include "lptorus/spaces.hpp"

using namespace lpt;

TEST_CASE("partition sums to one on the resolved band") {
    for (int d : {1, 2}) {
        const Grid g = make_grid(d, d == 1 ? 8 : 5);
        const Partition part = build_partition(g, PartitionMode::inhomogeneous);
        double dev = 0.0;
        for (std::size_t i = 0; i < g.point_count(); ++i) {
            if (freq_abs(g, i) > g.N / 4.0) continue;
            double sum = part.phi0_hat[i];
            for (int k = 1; k <= g.J; ++k) sum += part.phik(k)[i];
            dev = std::max(dev, std::abs(sum - 1.0));
        }
        CHECK(dev <= 1e-12);
    }
}

TEST_CASE("band masks: hard support, origin, plateau") {
    const Grid g = make_grid(1, 7);
    const Partition part = build_partition(g, PartitionMode::inhomogeneous);
    for (int k = 1; k <= g.J; ++k) {
        CHECK(part.phik(k)[0] == 0.0);
        for (std::size_t i = 0; i < g.point_count(); ++i) {
            const double r = freq_abs(g, i);
            if (r < std::ldexp(1.0, k - 2) || r > std::ldexp(1.0, k))
                CHECK(part.phik(k)[i] == 0.0);
            CHECK(part.phik(k)[i] >= 0.0);
            CHECK(part.phik(k)[i] <= 1.0);
        }
    }
    // value 1 at |xi| = 2^{k-1}
    for (int k = 2; k <= 6; ++k) {
        const int xi = 1 << (k - 1);
        CHECK(part.phik(k)[static_cast<std::size_t>(xi)] == 1.0);
    }
}

TEST_CASE("masks of separated bands never overlap") {
    const Grid g = make_grid(1, 7);
    const Partition part = build_partition(g, PartitionMode::homogeneous);
    for (int k = 1; k <= g.J; ++k)
        for (int j = k + 2; j <= g.J; ++j)
            for (std::size_t i = 0; i < g.point_count(); ++i)
                CHECK(part.phik(k)[i] * part.phik(j)[i] == 0.0);
}

TEST_CASE("decompose routes energy by band") {
    const Grid g = make_grid(1, 7);
    const Partition part = build_partition(g, PartitionMode::inhomogeneous);

    // a mode on the plateau lands in exactly one slot
    const int k0 = 4;
    const SampledFunction mode = SampledFunction::single_mode(g, {1 << (k0 - 1), 0});
    const Ladder lm = decompose(mode, part);
    for (int k = lm.k_min; k <= lm.k_max(); ++k) {
        if (k == k0) CHECK(max_abs_diff(lm.at(k), mode) < 1e-12);
        else CHECK(linf_norm(lm.at(k)) < 1e-12);
    }

    const SampledFunction c = SampledFunction::constant(g, cd{3.0, 0.0});
    const Ladder lc = decompose(c, part);
    CHECK(max_abs_diff(lc.at(0), c) < 1e-12);
    for (int k = 1; k <= lc.k_max(); ++k) CHECK(linf_norm(lc.at(k)) < 1e-13);

    const Ladder lz = decompose(SampledFunction::zero(g), part);
    for (const auto& e : lz.entries) CHECK(linf_norm(e) == 0.0);
}

TEST_CASE("reconstruct inverts decompose on band-limited input") {
    const Grid g = make_grid(1, 8);
    const Partition part = build_partition(g, PartitionMode::inhomogeneous);
    const SampledFunction f = random_band_limited(17, g.N / 4.0, g, false);
    const SampledFunction back = reconstruct(decompose(f, part));
    CHECK(max_abs_diff(f, back) / linf_norm(f) < 1e-10);

    Ladder single;
    single.grid = g;
    single.A = 1.0;
    single.k_min = 3;
    single.entries.push_back(f);
    CHECK(max_abs_diff(reconstruct(single), f) == 0.0);
}

TEST_CASE("companion masks") {
    const Grid g = make_grid(1, 8);
    const Partition part = build_partition(g, PartitionMode::inhomogeneous);
    const CompanionMasks cm = companion_masks(part);

    for (int k = 1; k <= g.J; ++k) {
        const auto& tilde = cm.phi_tilde[static_cast<std::size_t>(k)];
        const auto& star = cm.phi_star[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < g.point_count(); ++i) {
            // tilde equals one wherever the band mask lives
            CHECK(tilde[i] * part.phik(k)[i] == part.phik(k)[i]);
            if (tilde[i] != 0.0) CHECK(star[i] == 1.0);
            const double r = freq_abs(g, i);
            if (r < std::ldexp(1.0, k - 3) || r > std::ldexp(1.0, k + 1)) CHECK(tilde[i] == 0.0);
            if (r < std::ldexp(1.0, k - 4) || r > std::ldexp(1.0, k + 2)) CHECK(star[i] == 0.0);
        }
    }
    // low-pass nesting
    for (int k = 0; k + 1 <= g.J; ++k) {
        const auto& fine = cm.Phi[static_cast<std::size_t>(k + 1)];
        const auto& coarse = cm.Phi[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < g.point_count(); ++i)
            if (coarse[i] != 0.0) CHECK(fine[i] == 1.0);
    }
    // widened mask equals the three-band sum away from the clipped top
    for (int k = 2; k <= g.J - 1; ++k) {
        const auto& tilde = cm.phi_tilde[static_cast<std::size_t>(k)];
        double dev = 0.0;
        for (std::size_t i = 0; i < g.point_count(); ++i) {
            const double sum = part.phik(k - 1)[i] + part.phik(k)[i] + part.phik(k + 1)[i];
            dev = std::max(dev, std::abs(sum - tilde[i]));
        }
        CHECK(dev < 1e-12);
    }
    CHECK(cm.tilde_clipped[static_cast<std::size_t>(g.J)]);
    CHECK_FALSE(cm.tilde_clipped[2]);
}

TEST_CASE("masks export as plottable tables") {
    const Grid g = make_grid(1, 4);
    const Partition part = build_partition(g, PartitionMode::inhomogeneous);
    save_mask_csv(g, part.phik(2), "/tmp/lpt_mask.csv");
    std::ifstream in("/tmp/lpt_mask.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "flat,xi0,xi1,value");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == g.point_count());
}

TEST_CASE("band-overlap resummation stays bounded") {
    // ladders supported on single bands, re-filtered after summing neighbors
    const int h = 1;
    std::vector<double> cs;
    for (int J : {5, 6}) {
        const Grid g = make_grid(1, J);
        const Partition part = build_partition(g, PartitionMode::homogeneous);
        Ladder gl;
        gl.grid = g;
        gl.A = 1.0;
        gl.k_min = 1;
        for (int l = 1; l <= g.J; ++l)
            gl.entries.push_back(apply_mask(
                random_band_limited(100 + static_cast<std::uint64_t>(l), g.N / 2.0 - 1.0, g, false),
                part.phik(l)));
        Ladder filtered;
        filtered.grid = g;
        filtered.A = 1.0;
        filtered.k_min = 1;
        for (int k = 1; k <= g.J; ++k) {
            std::vector<cd> acc(g.point_count(), cd{0.0, 0.0});
            for (int l = std::max(1, k - h); l <= std::min(g.J, k + h); ++l)
                for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += gl.at(l).spectrum[i];
            filtered.entries.push_back(
                apply_mask(SampledFunction::from_spectrum(g, std::move(acc)), part.phik(k)));
        }
        cs.push_back(lp_lq_norm(filtered, 2.0, 2.0) / lp_lq_norm(gl, 2.0, 2.0));
    }
    for (double c : cs) {
        CHECK(std::isfinite(c));
        CHECK(c < 4.0);
    }
    CHECK(std::abs(cs[0] - cs[1]) / cs[0] < 0.35);
}
