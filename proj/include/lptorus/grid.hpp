#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lptorus/fft.hpp"

namespace lpt {

// Discrete periodic domain: the unit torus sampled at N = 2^J points per axis,
// d in {1,2}. Frequencies are integer vectors in [-N/2, N/2)^d.
struct Grid {
    int d = 1;
    int J = 4;
    int N = 16;
    double cell_volume = 1.0 / 16.0;

    std::size_t point_count() const {
        std::size_t p = 1;
        for (int i = 0; i < d; ++i) p *= static_cast<std::size_t>(N);
        return p;
    }
    bool operator==(const Grid&) const = default;
};

Grid make_grid(int d, int J);

// Signed frequency of a raw array index along one axis.
inline int freq_of_index(int idx, int N) { return idx < N / 2 ? idx : idx - N; }
inline int index_of_freq(int f, int N) { return f >= 0 ? f : f + N; }

// Decode a flat row-major index into per-axis indices (d <= 2).
inline std::array<int, 2> axes_of_flat(const Grid& g, std::size_t flat) {
    if (g.d == 1) return {static_cast<int>(flat), 0};
    return {static_cast<int>(flat / static_cast<std::size_t>(g.N)),
            static_cast<int>(flat % static_cast<std::size_t>(g.N))};
}

inline std::size_t flat_of_axes(const Grid& g, int i0, int i1 = 0) {
    if (g.d == 1) return static_cast<std::size_t>(i0);
    return static_cast<std::size_t>(i0) * static_cast<std::size_t>(g.N) +
           static_cast<std::size_t>(i1);
}

// |xi| for the signed frequency vector at a flat spectrum index.
double freq_abs(const Grid& g, std::size_t flat);

// Periodic distance between grid points given by flat indices, in torus units.
double torus_dist(const Grid& g, std::size_t a, std::size_t b);

// Complex-valued function on a Grid. Values and spectrum are kept materialized
// and consistent; `band` records a radius B with spectrum == 0 for |xi| > B.
struct SampledFunction {
    Grid grid;
    std::vector<cd> values;
    std::vector<cd> spectrum;
    std::optional<double> band;

    static SampledFunction from_values(const Grid& g, std::vector<cd> v);
    static SampledFunction from_spectrum(const Grid& g, std::vector<cd> s);
    static SampledFunction zero(const Grid& g);
    static SampledFunction constant(const Grid& g, cd c);
    static SampledFunction single_mode(const Grid& g, std::array<int, 2> xi, cd amp = 1.0);
};

// spectrum such that f(x) = sum_xi spectrum[xi] e^{2pi i <x,xi>}
std::vector<cd> to_spectrum(const SampledFunction& f);

// Zero the spectrum outside |xi| <= B; idempotent, sets the band field.
SampledFunction band_project(const SampledFunction& f, double B);

// True band of the stored spectrum: max |xi| carrying a nonzero coefficient.
double spectral_radius(const SampledFunction& f, double rel_tol = 0.0);

// Deterministic band-limited test function with unit L^2 norm. Gaussian
// spectrum on |xi| <= B; conjugate symmetry enforced when real_valued.
SampledFunction random_band_limited(std::uint64_t seed, double B, const Grid& g,
                                    bool real_valued = false);

double l2_norm(const SampledFunction& f);
double spectrum_l2(const SampledFunction& f);
double linf_norm(const SampledFunction& f);
double max_abs_diff(const SampledFunction& a, const SampledFunction& b);

// Cyclic shift of the sample values by whole grid cells.
SampledFunction shift(const SampledFunction& f, std::array<int, 2> cells);

// Flat text dump: one header line "d,J,kind" then row-major "re,im" pairs.
void save_csv(const SampledFunction& f, const std::string& path, bool spectrum_side = false);
SampledFunction load_csv(const std::string& path);

// Indexed family {f_k}, k in [k_min, k_min+entries.size()), each band-limited
// to A 2^k on a shared grid.
struct Ladder {
    Grid grid;
    double A = 1.0;
    int k_min = 0;
    std::vector<SampledFunction> entries;

    int k_max() const { return k_min + static_cast<int>(entries.size()) - 1; }
    const SampledFunction& at(int k) const { return entries.at(static_cast<std::size_t>(k - k_min)); }
    bool contains(int k) const { return k >= k_min && k <= k_max(); }
};

// Validates the shared grid and per-entry band bounds.
void check_ladder(const Ladder& ladder);

}  // namespace lpt
