#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lptorus/grid.hpp"
#include "lptorus/littlewood_paley.hpp"

namespace lpt {

// x-dependent n-linear symbol a(x, xi_1..xi_n), callable at arbitrary real
// arguments so finite differences can step off the sample lattices.
struct PseudoSymbol {
    int n = 1;
    Grid grid;
    double order = 0.0;  // weight exponent in the symbol-class bound
    std::string name;
    // x: d coords in [0,1); xi: n*d frequency coords
    std::function<cd(std::span<const double>, std::span<const double>)> eval;
    bool fd_derivatives = true;  // derivative oracle is finite-difference based
};

struct SeminormResult {
    double value = 0.0;
    bool fd_estimated = true;
    std::vector<int> argmax_alpha;  // n*d entries
    std::vector<int> argmax_beta;   // d entries
};

// Grid-max realization of the weighted derivative sup, derivative orders per
// slot and in x up to N. Finite differences step one cell (1 in xi, 1/N in x).
SeminormResult seminorm(const PseudoSymbol& a, int N);

// Direct summation with the x-dependent symbol.
SampledFunction apply_pseudo(const PseudoSymbol& a, std::span<const SampledFunction> fs);

// Same, with an extra x-independent mask over the product frequency grid given
// as a callable on per-slot frequency coordinates.
using ProductMask = std::function<double(std::span<const double>)>;
SampledFunction apply_pseudo_masked(const PseudoSymbol& a, std::span<const SampledFunction> fs,
                                    const ProductMask& mask);

// Dominant-slot masks: slot i carries the top band, earlier slots strictly
// below it, later slots at most equal. The k=0 band folds into the low-pass
// block; the masks over i = 1..n telescope to the full coverage.
ProductMask slot_dominant_mask(const Grid& grid, int slot);
inline ProductMask first_slot_dominant_mask(const Grid& grid) {
    return slot_dominant_mask(grid, 1);
}

// Slice value a_k(x, xi) = a(x, xi) phi_k(xi_1) prod_j Phi_k(xi_j).
cd slice_value(const PseudoSymbol& a, int k, std::span<const double> x,
               std::span<const double> xi);

// Fourier coefficients of the rescaled slice over the periodization box of
// side 4 per axis: c[l](x) for |l_j|_inf <= L, sampled on the box lattice of
// oversample * 2^{k+2} points per axis. oversample > 1 refines the quadrature
// toward the continuous integrals; the window phases do not depend on it.
struct CoefficientTable {
    int k = 0;
    int L = 0;
    int n = 1;
    Grid grid;
    std::vector<std::vector<int>> l_list;     // flattened n*d integer vectors
    std::vector<std::vector<cd>> c;           // [l index][x flat]
    const std::vector<cd>& coeff(std::span<const int> l) const;
};

CoefficientTable fourier_coeffs(const PseudoSymbol& a, int k, int L, int oversample = 1);

// Window factors carrying the box phase: slot 1 gets the widened band window,
// the others the level-(k+1) low pass.
std::vector<cd> slot1_window(const Grid& grid, int k, std::span<const int> l1);
std::vector<cd> slotj_window(const Grid& grid, int k, std::span<const int> lj);

// Scale split of a coefficient function: index 0 is the level-k low pass,
// u >= 1 the band at k+u; the top slice absorbs the Nyquist remainder so the
// pieces sum back exactly.
std::vector<SampledFunction> frequency_split(const SampledFunction& c, int k);

// Truncated reassembly sum over (l, k, u); converges to the masked direct
// application as L grows.
SampledFunction apply_decomposed(const PseudoSymbol& a, std::span<const SampledFunction> fs,
                                 int L, const Partition& part);

// Relative l^2 distance, over on-grid product frequencies and all x, between
// the truncated windowed series and the exact slice values, summed over the
// scales. Independent of any argument functions.
double decomposition_error(const PseudoSymbol& a, int L);

struct RatioRow {
    int trial = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

struct RatioTable {
    std::vector<RatioRow> rows;
    double max_ratio = 0.0;
    double median_ratio = 0.0;
};

struct KatoPonceConfig {
    double s = 1.0;
    double p = 2.0, p1 = 4.0, p2 = 4.0, p1t = 4.0, p2t = 4.0;
    int trials = 16;
    std::uint64_t seed = 1;
    double band = 0.0;  // 0 picks N/4 - 1
};

// Leibniz-rule probe: J^s of a product against the cross terms, local-Hardy
// norms with the bmo endpoint at p = inf.
RatioTable kato_ponce_probe(const Grid& grid, const KatoPonceConfig& cfg);

struct PseudoBoundConfig {
    double s = 1.0;
    double q = 2.0;
    double p = 2.0;
    std::vector<std::vector<double>> p_ij;
    int N_order = 2;
    int trials = 8;
    std::uint64_t seed = 1;
    double band = 0.0;
};

// Band-sum-norm boundedness probe for the x-dependent operator.
RatioTable pseudo_bound_probe(const PseudoSymbol& a, const Partition& part,
                              const PseudoBoundConfig& cfg);

// Built-in symbols: "identity", "bspatial", "order", "osc".
PseudoSymbol make_catalog_pseudo(const std::string& name, int n, const Grid& grid,
                                 double order = 0.0);
std::vector<std::string> pseudo_catalog();

double tau_exponent(double p, int d);
double tau_exponent(double p, double q, int d);

}  // namespace lpt
