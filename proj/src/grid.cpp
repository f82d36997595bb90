#include "lptorus/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

#include "lptorus/reduce.hpp"

namespace lpt {

Grid make_grid(int d, int J) {
    if (d != 1 && d != 2) throw std::invalid_argument("make_grid: d must be 1 or 2");
    if (J < 4 || J > 12) throw std::invalid_argument("make_grid: J must be in [4,12]");
    Grid g;
    g.d = d;
    g.J = J;
    g.N = 1 << J;
    g.cell_volume = 1.0;
    for (int i = 0; i < d; ++i) g.cell_volume /= static_cast<double>(g.N);
    return g;
}

double freq_abs(const Grid& g, std::size_t flat) {
    const auto ax = axes_of_flat(g, flat);
    double s = 0.0;
    for (int i = 0; i < g.d; ++i) {
        const double f = freq_of_index(ax[static_cast<std::size_t>(i)], g.N);
        s += f * f;
    }
    return std::sqrt(s);
}

double torus_dist(const Grid& g, std::size_t a, std::size_t b) {
    const auto pa = axes_of_flat(g, a);
    const auto pb = axes_of_flat(g, b);
    double s = 0.0;
    for (int i = 0; i < g.d; ++i) {
        int o = pa[static_cast<std::size_t>(i)] - pb[static_cast<std::size_t>(i)];
        o = ((o % g.N) + g.N) % g.N;
        const double w = std::min(o, g.N - o) / static_cast<double>(g.N);
        s += w * w;
    }
    return std::sqrt(s);
}

SampledFunction SampledFunction::from_values(const Grid& g, std::vector<cd> v) {
    if (v.size() != g.point_count()) throw std::invalid_argument("from_values: size mismatch");
    SampledFunction f;
    f.grid = g;
    f.spectrum = values_to_spectrum(v, g.d, static_cast<std::size_t>(g.N));
    f.values = std::move(v);
    return f;
}

SampledFunction SampledFunction::from_spectrum(const Grid& g, std::vector<cd> s) {
    if (s.size() != g.point_count()) throw std::invalid_argument("from_spectrum: size mismatch");
    SampledFunction f;
    f.grid = g;
    f.values = spectrum_to_values(s, g.d, static_cast<std::size_t>(g.N));
    f.spectrum = std::move(s);
    return f;
}

SampledFunction SampledFunction::zero(const Grid& g) {
    SampledFunction f;
    f.grid = g;
    f.values.assign(g.point_count(), cd{0.0, 0.0});
    f.spectrum.assign(g.point_count(), cd{0.0, 0.0});
    f.band = 0.0;
    return f;
}

SampledFunction SampledFunction::constant(const Grid& g, cd c) {
    SampledFunction f;
    f.grid = g;
    f.values.assign(g.point_count(), c);
    f.spectrum.assign(g.point_count(), cd{0.0, 0.0});
    f.spectrum[0] = c;
    f.band = 0.0;
    return f;
}

SampledFunction SampledFunction::single_mode(const Grid& g, std::array<int, 2> xi, cd amp) {
    std::vector<cd> s(g.point_count(), cd{0.0, 0.0});
    const int i0 = index_of_freq(xi[0], g.N);
    const int i1 = g.d == 2 ? index_of_freq(xi[1], g.N) : 0;
    s[flat_of_axes(g, i0, i1)] = amp;
    SampledFunction f = from_spectrum(g, std::move(s));
    double r = 0.0;
    for (int i = 0; i < g.d; ++i) r += static_cast<double>(xi[static_cast<std::size_t>(i)]) *
                                       static_cast<double>(xi[static_cast<std::size_t>(i)]);
    f.band = std::sqrt(r);
    return f;
}

std::vector<cd> to_spectrum(const SampledFunction& f) {
    return values_to_spectrum(f.values, f.grid.d, static_cast<std::size_t>(f.grid.N));
}

SampledFunction band_project(const SampledFunction& f, double B) {
    if (B < 0.0) throw std::invalid_argument("band_project: B must be >= 0");
    std::vector<cd> s = f.spectrum;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (freq_abs(f.grid, i) > B) s[i] = cd{0.0, 0.0};
    SampledFunction out = SampledFunction::from_spectrum(f.grid, std::move(s));
    out.band = B;
    return out;
}

double spectral_radius(const SampledFunction& f, double rel_tol) {
    double peak = 0.0;
    for (const cd& z : f.spectrum) peak = std::max(peak, std::abs(z));
    const double cut = peak * rel_tol;
    double r = 0.0;
    for (std::size_t i = 0; i < f.spectrum.size(); ++i)
        if (std::abs(f.spectrum[i]) > cut) r = std::max(r, freq_abs(f.grid, i));
    return r;
}

namespace {

// Platform-independent uniform in [0,1) from the top 53 bits.
double uniform53(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

cd gaussian_pair(std::mt19937_64& eng) {
    // Box-Muller; rejects u == 0 to keep log finite.
    double u = 0.0;
    do { u = uniform53(eng); } while (u == 0.0);
    const double v = uniform53(eng);
    const double rad = std::sqrt(-2.0 * std::log(u));
    const double ang = 2.0 * std::numbers::pi * v;
    return {rad * std::cos(ang), rad * std::sin(ang)};
}

}  // namespace

SampledFunction random_band_limited(std::uint64_t seed, double B, const Grid& g,
                                    bool real_valued) {
    if (B > g.N / 2.0 - 1.0)
        throw std::invalid_argument("random_band_limited: band exceeds grid");
    std::mt19937_64 eng(seed);
    std::vector<cd> s(g.point_count(), cd{0.0, 0.0});
    // Frequencies filled in flat-index order so the draw sequence is fixed.
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (freq_abs(g, i) > B) continue;
        s[i] = gaussian_pair(eng);
    }
    if (real_valued) {
        // Mirror the canonical half; self-paired bins become real.
        for (std::size_t i = 0; i < s.size(); ++i) {
            const auto ax = axes_of_flat(g, i);
            const int m0 = (g.N - ax[0]) % g.N;
            const int m1 = g.d == 2 ? (g.N - ax[1]) % g.N : 0;
            const std::size_t j = flat_of_axes(g, m0, m1);
            if (j == i) {
                s[i] = cd{s[i].real(), 0.0};
            } else if (j < i) {
                s[i] = std::conj(s[j]);
            }
        }
    }
    double norm2 = 0.0;
    for (const cd& z : s) norm2 += std::norm(z);
    if (norm2 == 0.0) {
        s[0] = cd{1.0, 0.0};
        norm2 = 1.0;
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (cd& z : s) z *= scale;
    SampledFunction f = SampledFunction::from_spectrum(g, std::move(s));
    f.band = B;
    return f;
}

double l2_norm(const SampledFunction& f) {
    std::vector<double> sq(f.values.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = std::norm(f.values[i]);
    return std::sqrt(pairwise_sum(sq) * f.grid.cell_volume);
}

double spectrum_l2(const SampledFunction& f) {
    std::vector<double> sq(f.spectrum.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = std::norm(f.spectrum[i]);
    return std::sqrt(pairwise_sum(sq));
}

double linf_norm(const SampledFunction& f) {
    double m = 0.0;
    for (const cd& z : f.values) m = std::max(m, std::abs(z));
    return m;
}

double max_abs_diff(const SampledFunction& a, const SampledFunction& b) {
    if (a.values.size() != b.values.size()) throw std::invalid_argument("max_abs_diff: size mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

SampledFunction shift(const SampledFunction& f, std::array<int, 2> cells) {
    const Grid& g = f.grid;
    std::vector<cd> v(f.values.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto ax = axes_of_flat(g, i);
        const int s0 = ((ax[0] - cells[0]) % g.N + g.N) % g.N;
        const int s1 = g.d == 2 ? ((ax[1] - cells[1]) % g.N + g.N) % g.N : 0;
        v[i] = f.values[flat_of_axes(g, s0, s1)];
    }
    return SampledFunction::from_values(g, std::move(v));
}

void save_csv(const SampledFunction& f, const std::string& path, bool spectrum_side) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) throw std::runtime_error("save_csv: cannot open " + path);
    std::fprintf(fp, "%d,%d,%s\n", f.grid.d, f.grid.J, spectrum_side ? "spectrum" : "values");
    const std::vector<cd>& side = spectrum_side ? f.spectrum : f.values;
    for (const cd& z : side) std::fprintf(fp, "%.17g,%.17g\n", z.real(), z.imag());
    std::fclose(fp);
}

SampledFunction load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open " + path);
    int d = 0, J = 0;
    char comma = 0;
    std::string kind;
    in >> d >> comma >> J >> comma >> kind;
    const Grid g = make_grid(d, J);
    std::vector<cd> data;
    data.reserve(g.point_count());
    double re = 0.0, im = 0.0;
    while (in >> re >> comma >> im) data.emplace_back(re, im);
    if (data.size() != g.point_count()) throw std::runtime_error("load_csv: truncated file");
    if (kind == "spectrum") return SampledFunction::from_spectrum(g, std::move(data));
    return SampledFunction::from_values(g, std::move(data));
}

void check_ladder(const Ladder& ladder) {
    for (int k = ladder.k_min; k <= ladder.k_max(); ++k) {
        const SampledFunction& f = ladder.at(k);
        if (!(f.grid == ladder.grid)) throw std::invalid_argument("ladder: grid mismatch");
        const double limit = ladder.A * std::pow(2.0, k);
        if (spectral_radius(f) > limit + 1e-9)
            throw std::invalid_argument("ladder: entry exceeds its band");
    }
}

}  // namespace lpt
