#pragma once

#include <span>
#include <vector>

#include "lptorus/dyadic.hpp"
#include "lptorus/grid.hpp"

namespace lpt {

// Nonincreasing rearrangement of a nonnegative sample set with uniform cell
// measure. query(gamma) returns inf{lambda > 0 : |{f > lambda}| <= gamma}.
struct Rearrangement {
    std::vector<double> sorted_desc;
    double cell_measure = 1.0;

    double total_measure() const { return cell_measure * static_cast<double>(sorted_desc.size()); }
    double query(double gamma_measure) const;
};

Rearrangement rearrangement(std::span<const double> values, double measure_per_cell);

// Order statistic v_{floor(gamma n)+1} of the descending-sorted values;
// the smallest threshold exceeded on at most a gamma fraction of the samples.
double gamma_median(std::span<const double> values, double gamma);

// Per-entry cube-min fields: out[k - k_min][x] = min over the level-k cube
// containing x of |f_k|.
std::vector<std::vector<double>> ladder_min_fields(const Ladder& ladder);

// l^q tail of the cube-min fields over k >= level(P), restricted to P's
// points (cube_points order).
std::vector<double> g_function(const Ladder& ladder, const DyadicCube& P, double q);

struct MedianField {
    Grid grid;
    int mu = 0;
    std::vector<double> values;
};

// Pointwise sup over ancestors P at levels >= mu of the gamma-median of the
// tail aggregation over P.
MedianField median_envelope(const Ladder& ladder, double gamma, double q, int mu);

// Per-cube masks {x in P : G_P(x) <= envelope_{level(P)}(x)} for every level.
// Construction guarantees |S_P| >= (1-gamma)|P| exactly in counting measure.
struct Selection {
    Grid grid;
    double gamma = 0.5;
    double q = 2.0;
    int level_min = 0;
    int level_max = 0;
    std::vector<std::vector<std::uint8_t>> level_masks;  // [nu - level_min][flat]

    bool in_subset(int nu, std::size_t flat) const {
        return level_masks.at(static_cast<std::size_t>(nu - level_min))[flat] != 0;
    }
    SubsetMask mask_for(const DyadicCube& cube) const;
};

Selection select_subsets(const Ladder& ladder, double gamma, double q);

// Random masks meeting the same measure bound, for robustness probes.
Selection random_selection(const Grid& grid, double gamma, std::uint64_t seed);

// max over x of the l^q norm in k >= mu of the masked cube-min field.
double masked_linfty_lq(const Ladder& ladder, const Selection& sel, int mu, double q);

struct EquivalenceRow {
    double lhs = 0.0;    // dyadic-sup aggregation of the raw ladder
    double rhs = 0.0;    // masked L^inf(l^q) of the weighted-maximal ladder
    double ratio = 0.0;  // lhs/rhs, NaN when both sides are negligible
    double envelope_sup = 0.0;
};

// Two-sided comparison at parameters (gamma, q, sigma, t, mu); requires
// sigma > d/t > d/q. Ratios are recorded, never judged here.
EquivalenceRow equivalence_report(const Ladder& f_ladder, double gamma, double q, double sigma,
                                  double t, int mu);

namespace ref {

// Threshold scan over the candidate set {0} u {values}.
double gamma_median_scan(std::span<const double> values, double gamma);
double rearrangement_query_scan(std::span<const double> values, double cell, double gamma_measure);

// Direct triple-loop G_P^q.
std::vector<double> g_function_brute(const Ladder& ladder, const DyadicCube& P, double q);

// Direct per-point evaluation of the masked norm.
double masked_linfty_lq_brute(const Ladder& ladder, const Selection& sel, int mu, double q);

}  // namespace ref

}  // namespace lpt
