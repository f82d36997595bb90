#pragma once

#include <limits>
#include <string>
#include <vector>

#include "lptorus/grid.hpp"

namespace lpt {

constexpr double t_infinity = std::numeric_limits<double>::infinity();

// Nonnegative field produced by a maximal operator, tagged with its origin.
struct MaximalField {
    Grid grid;
    std::vector<double> values;
    std::string provenance;
};

// Hardy-Littlewood type maximal function over the dyadic-sided cube family:
// all axis-aligned cubes of side 2^-m, m in [0,J], at every position.
// Sliding-window evaluation; O(N^d J).
MaximalField hl_maximal(const SampledFunction& f, double r);

// Variant with a (2^k l(Q))^-eps penalty on cubes larger than 2^-k.
MaximalField variant_maximal(const SampledFunction& f, double r, int k, double eps);

// Weighted local-size operator at scale 2^k: for finite t the weighted L^t
// average with weight (1 + 2^k |y|)^-sigma and periodic distance, for t = inf
// the weighted sup. Inputs are expected band-limited to ~2^k.
MaximalField peetre_maximal(const SampledFunction& f, double sigma, int k, double t);

// {peetre_maximal(f_k)}_k with per-entry scale 2^k.
Ladder peetre_ladder(const Ladder& ladder, double sigma, double t);

namespace ref {

// Exhaustive scan over every cube in the implemented family. O(N^d * family).
MaximalField hl_maximal_brute(const SampledFunction& f, double r);
MaximalField variant_maximal_brute(const SampledFunction& f, double r, int k, double eps);

// Direct double-loop realization of the weighted average / sup.
MaximalField peetre_maximal_direct(const SampledFunction& f, double sigma, int k, double t);

}  // namespace ref

}  // namespace lpt
