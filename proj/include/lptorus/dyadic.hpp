#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lptorus/grid.hpp"

namespace lpt {

// Half-open cube [j 2^-k, (j+1) 2^-k)^d on the torus, 0 <= k <= J.
struct DyadicCube {
    int level = 0;
    std::array<int, 2> offset = {0, 0};

    double side() const { return std::ldexp(1.0, -level); }
    double measure(int d) const { return std::ldexp(1.0, -level * d); }
    bool operator==(const DyadicCube&) const = default;
};

std::vector<DyadicCube> cubes_at_level(const Grid& grid, int k);

// Number of grid points per axis inside a level-k cube.
inline int cube_width(const Grid& grid, int k) { return grid.N >> k; }

// The unique level-k cube containing the grid point with the given axis indices.
DyadicCube containing_cube(const Grid& grid, std::array<int, 2> point, int k);

// Flat grid indices covered by a cube, in row-major order.
std::vector<std::size_t> cube_points(const Grid& grid, const DyadicCube& q);

// Extremes of a real field over the cube's grid points.
double cube_min(const Grid& grid, std::span<const double> field, const DyadicCube& q);
double cube_max(const Grid& grid, std::span<const double> field, const DyadicCube& q);
double cube_mean(const Grid& grid, std::span<const double> field, const DyadicCube& q);

// Per-point aggregations against the level-k tiling: out[x] = min/sum over the
// level-k cube containing x.
std::vector<double> level_min_field(const Grid& grid, std::span<const double> field, int k);
std::vector<double> level_sum_per_cube(const Grid& grid, std::span<const double> field, int k);

// Flat index of a cube within its level (row-major over offsets).
std::size_t cube_rank(const Grid& grid, const DyadicCube& q);
std::size_t cubes_per_level(const Grid& grid, int k);
DyadicCube cube_from_rank(const Grid& grid, int k, std::size_t rank);

// Boolean mask over a cube's grid points; reports |S_Q| in counting measure.
struct SubsetMask {
    DyadicCube cube;
    std::vector<std::uint8_t> mask;  // aligned with cube_points order

    std::size_t count() const;
    double fraction() const { return mask.empty() ? 0.0 : static_cast<double>(count()) / static_cast<double>(mask.size()); }
};

}  // namespace lpt
