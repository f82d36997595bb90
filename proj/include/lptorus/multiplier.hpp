#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lptorus/grid.hpp"
#include "lptorus/littlewood_paley.hpp"

namespace lpt {

// n-linear multiplier sampled on the product frequency grid (N^d)^n, slot-major
// row-major layout. n*d <= 4 keeps the direct algorithms at desk scale.
struct SymbolGrid {
    int n = 1;
    Grid grid;
    std::vector<cd> values;

    std::size_t slot_points() const { return grid.point_count(); }
    std::size_t total_points() const { return values.size(); }

    // Value at per-slot flat indices.
    cd at(std::span<const std::size_t> slots) const;

    template <class F>  // F: (std::span<const std::array<int,2>> signed freqs) -> cd
    static SymbolGrid from_function(int n, const Grid& grid, F&& fn);
    static SymbolGrid constant(int n, const Grid& grid, cd c);
};

std::size_t product_size(int n, const Grid& grid);
void check_symbol_budget(int n, const Grid& grid);

// Composite per-slot to flat product index and back.
std::size_t product_flat(const SymbolGrid& m, std::span<const std::size_t> slots);

// Masked view over a shared base symbol; decompositions hand these out so the
// sum-of-masks identities stay checkable without copying symbol data.
struct MaskedSymbol {
    std::shared_ptr<const SymbolGrid> base;
    std::vector<double> mask;

    cd value_at(std::size_t flat) const { return base->values[flat] * mask[flat]; }
    SymbolGrid to_symbol() const;
};

// Radial cutoffs on the product space: plateau on [1/2, 2] with support
// [1/4, 4], and the sqrt(n)-widened variant.
struct CutoffTheta {
    int n = 1;
    Grid grid;
    std::vector<double> theta;       // product-grid samples
    std::vector<double> theta_wide;
};

double theta_profile(double abs_xi);
double theta_wide_profile(int n, double abs_xi);
CutoffTheta build_cutoff(int n, const Grid& grid);

// Exact discrete realization of the n-linear action; frequency sums wrap
// modulo N (the grid sampling of the synthesized output).
SampledFunction apply_multiplier(const SymbolGrid& m, std::span<const SampledFunction> fs);
SampledFunction apply_multiplier(const MaskedSymbol& m, std::span<const SampledFunction> fs);

// Sum of rank-one tensor terms; applies as per-slot spectral multiplies.
struct SeparableSymbol {
    int n = 1;
    Grid grid;
    std::vector<std::vector<std::vector<cd>>> terms;  // [rank][slot][freq]

    SymbolGrid materialize() const;
};

SampledFunction apply_separable(const SeparableSymbol& m, std::span<const SampledFunction> fs);

struct SymbolNorm {
    double value = 0.0;
    bool clamped = false;
    std::vector<std::pair<int, double>> per_dilation;
};

// sup over dyadic dilations of the Sobolev-weighted L^r norm of the cut
// symbol; dilations realized by exact power-of-two index scaling.
SymbolNorm symbol_sobolev_norm(const SymbolGrid& m, double s, double r, bool wide_cutoff);

// Ordered-max split by the dominant slot; masks sum to the coverage product
// at every product frequency.
std::vector<MaskedSymbol> decompose_symbol(const SymbolGrid& m, const Partition& part);

// Split of the dominant-first-slot piece by whether some other slot sits
// within 3 + floor(log2 n) octaves of the top scale.
struct LowHighSplit {
    MaskedSymbol low;
    MaskedSymbol high;
};
LowHighSplit split_low_high(const SymbolGrid& m, const Partition& part);

// Single dyadic slice of the high part: dominant slot pinned at scale k.
MaskedSymbol high_slice(const SymbolGrid& m, const Partition& part, int k);

// j-th transpose: slot j replaced by minus the total frequency (mod N).
SymbolGrid transpose_symbol(const SymbolGrid& m, int j);

enum class ProbeNormSet {
    lebesgue,  // off-diagonal factors in L^{p_{i,j}}
    hardy,     // off-diagonal factors in H^{p_{i,j}}
};

struct ProbeConfig {
    double p = 2.0;
    std::vector<std::vector<double>> p_ij;  // n rows; inf allowed on the diagonal
    double s = 0.0;                         // Sobolev order for the symbol norm
    double u = 2.0;                         // integrability for the symbol norm
    ProbeNormSet norms = ProbeNormSet::hardy;
    int trials = 16;
    std::uint64_t seed = 1;
    double band = 0.0;  // input band; 0 picks N/(2n) - 1
};

struct ProbeRow {
    int trial = 0;
    double lhs = 0.0;
    double symbol_norm = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

struct ProbeTable {
    std::vector<ProbeRow> rows;
    double max_ratio = 0.0;
    double median_ratio = 0.0;
};

ProbeTable boundedness_probe(const SymbolGrid& m, const ProbeConfig& cfg);

// Built-in x-independent symbols: "one", "angular", "smooth01", "riesz".
SymbolGrid make_catalog_symbol(const std::string& name, int n, const Grid& grid);
std::vector<std::string> multiplier_catalog();

namespace ref {

// Definition-level direct summation: per output point, sum over the whole
// product frequency grid with the synthesis phase.
SampledFunction apply_multiplier_direct(const SymbolGrid& m, std::span<const SampledFunction> fs);

}  // namespace ref

// --- template bodies ---

template <class F>
SymbolGrid SymbolGrid::from_function(int n, const Grid& grid, F&& fn) {
    check_symbol_budget(n, grid);
    SymbolGrid m;
    m.n = n;
    m.grid = grid;
    const std::size_t P = grid.point_count();
    m.values.resize(product_size(n, grid));
    std::vector<std::size_t> slots(static_cast<std::size_t>(n), 0);
    std::vector<std::array<int, 2>> freqs(static_cast<std::size_t>(n));
    for (std::size_t flat = 0; flat < m.values.size(); ++flat) {
        std::size_t rem = flat;
        for (int j = n - 1; j >= 0; --j) {
            slots[static_cast<std::size_t>(j)] = rem % P;
            rem /= P;
        }
        for (int j = 0; j < n; ++j) {
            const auto ax = axes_of_flat(grid, slots[static_cast<std::size_t>(j)]);
            freqs[static_cast<std::size_t>(j)] = {freq_of_index(ax[0], grid.N),
                                                  grid.d == 2 ? freq_of_index(ax[1], grid.N) : 0};
        }
        m.values[flat] = fn(std::span<const std::array<int, 2>>(freqs));
    }
    return m;
}

}  // namespace lpt
