#include "lptorus/littlewood_paley.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lpt {

double transition(double r) {
    if (r <= 0.5) return 1.0;
    if (r >= 1.0) return 0.0;
    const double a = std::exp(-1.0 / (2.0 * (1.0 - r)));
    const double b = std::exp(-1.0 / (2.0 * r - 1.0));
    return a / (a + b);
}

double phik_profile(int k, double abs_xi) {
    const double s = std::ldexp(abs_xi, -k);  // |xi| / 2^k
    return transition(s) - transition(2.0 * s);
}

const std::vector<double>& Partition::slot_mask(int k) const {
    if (k == 0) {
        if (mode != PartitionMode::inhomogeneous)
            throw std::invalid_argument("slot_mask: homogeneous partition has no k=0 slot");
        return phi0_hat;
    }
    return phik(k);
}

Partition build_partition(const Grid& grid, PartitionMode mode) {
    Partition p;
    p.grid = grid;
    p.mode = mode;
    const std::size_t n = grid.point_count();
    p.phi0_hat.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.phi0_hat[i] = phi0_profile(freq_abs(grid, i));
    p.phik_hat.resize(static_cast<std::size_t>(grid.J));
    for (int k = 1; k <= grid.J; ++k) {
        std::vector<double>& m = p.phik_hat[static_cast<std::size_t>(k - 1)];
        m.resize(n);
        for (std::size_t i = 0; i < n; ++i) m[i] = phik_profile(k, freq_abs(grid, i));
    }
    return p;
}

std::vector<double> low_pass_mask(const Grid& grid, int k) {
    std::vector<double> m(grid.point_count());
    for (std::size_t i = 0; i < m.size(); ++i)
        m[i] = phi0_profile(std::ldexp(freq_abs(grid, i), -k));
    return m;
}

SampledFunction apply_mask(const SampledFunction& f, const std::vector<double>& mask) {
    if (mask.size() != f.spectrum.size()) throw std::invalid_argument("apply_mask: size mismatch");
    std::vector<cd> s(f.spectrum.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = f.spectrum[i] * mask[i];
    return SampledFunction::from_spectrum(f.grid, std::move(s));
}

SampledFunction apply_mask(const SampledFunction& f, const std::vector<cd>& mask) {
    if (mask.size() != f.spectrum.size()) throw std::invalid_argument("apply_mask: size mismatch");
    std::vector<cd> s(f.spectrum.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = f.spectrum[i] * mask[i];
    return SampledFunction::from_spectrum(f.grid, std::move(s));
}

Ladder decompose(const SampledFunction& f, const Partition& part) {
    if (!(f.grid == part.grid)) throw std::invalid_argument("decompose: grid mismatch");
    Ladder ladder;
    ladder.grid = f.grid;
    ladder.A = 1.0;
    ladder.k_min = part.mode == PartitionMode::inhomogeneous ? 0 : 1;
    const int k_max = f.grid.J;
    ladder.entries.resize(static_cast<std::size_t>(k_max - ladder.k_min + 1));
#pragma omp parallel for schedule(dynamic)
    for (int k = ladder.k_min; k <= k_max; ++k) {
        SampledFunction e = apply_mask(f, part.slot_mask(k));
        e.band = std::pow(2.0, k);
        ladder.entries[static_cast<std::size_t>(k - ladder.k_min)] = std::move(e);
    }
    return ladder;
}

SampledFunction reconstruct(const Ladder& ladder) {
    if (ladder.entries.empty()) return SampledFunction::zero(ladder.grid);
    std::vector<cd> s(ladder.grid.point_count(), cd{0.0, 0.0});
    for (const SampledFunction& e : ladder.entries)
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += e.spectrum[i];
    return SampledFunction::from_spectrum(ladder.grid, std::move(s));
}

CompanionMasks companion_masks(const Partition& part) {
    const Grid& g = part.grid;
    const std::size_t n = g.point_count();
    const double nyquist = g.N / 2.0;
    CompanionMasks cm;
    cm.phi_tilde.resize(static_cast<std::size_t>(g.J + 1));
    cm.phi_star.resize(static_cast<std::size_t>(g.J + 1));
    cm.Phi.resize(static_cast<std::size_t>(g.J + 1));
    cm.tilde_clipped.resize(static_cast<std::size_t>(g.J + 1));
    cm.star_clipped.resize(static_cast<std::size_t>(g.J + 1));
    for (int k = 0; k <= g.J; ++k) {
        cm.Phi[static_cast<std::size_t>(k)] = low_pass_mask(g, k);
        std::vector<double> tilde(n), star(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double r = freq_abs(g, i);
            if (k == 0) {
                // widened variants of the low-pass block
                tilde[i] = phi0_profile(std::ldexp(r, -1));
                star[i] = phi0_profile(std::ldexp(r, -2));
            } else {
                // telescoped sums: 1 on the inner annulus, hard zeros outside
                tilde[i] = phi0_profile(std::ldexp(r, -(k + 1))) - phi0_profile(std::ldexp(r, -(k - 2)));
                star[i] = phi0_profile(std::ldexp(r, -(k + 2))) - phi0_profile(std::ldexp(r, -(k - 3)));
            }
        }
        cm.phi_tilde[static_cast<std::size_t>(k)] = std::move(tilde);
        cm.phi_star[static_cast<std::size_t>(k)] = std::move(star);
        cm.tilde_clipped[static_cast<std::size_t>(k)] = std::pow(2.0, k + 1) > nyquist;
        cm.star_clipped[static_cast<std::size_t>(k)] = std::pow(2.0, k + 2) > nyquist;
    }
    return cm;
}

void save_mask_csv(const Grid& grid, const std::vector<double>& mask, const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) throw std::runtime_error("save_mask_csv: cannot open " + path);
    std::fprintf(fp, "flat,xi0,xi1,value\n");
    for (std::size_t i = 0; i < mask.size(); ++i) {
        const auto ax = axes_of_flat(grid, i);
        std::fprintf(fp, "%zu,%d,%d,%.17g\n", i, freq_of_index(ax[0], grid.N),
                     grid.d == 2 ? freq_of_index(ax[1], grid.N) : 0, mask[i]);
    }
    std::fclose(fp);
}

}  // namespace lpt
