#include "lptorus/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lptorus/reduce.hpp"

namespace lpt {

std::vector<DyadicCube> cubes_at_level(const Grid& grid, int k) {
    if (k < 0 || k > grid.J) throw std::invalid_argument("cubes_at_level: level outside [0,J]");
    const int m = 1 << k;
    std::vector<DyadicCube> out;
    if (grid.d == 1) {
        out.reserve(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) out.push_back({k, {j, 0}});
    } else {
        out.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
        for (int j0 = 0; j0 < m; ++j0)
            for (int j1 = 0; j1 < m; ++j1) out.push_back({k, {j0, j1}});
    }
    return out;
}

DyadicCube containing_cube(const Grid& grid, std::array<int, 2> point, int k) {
    if (k < 0 || k > grid.J) throw std::invalid_argument("containing_cube: level outside [0,J]");
    const int w = cube_width(grid, k);
    DyadicCube q;
    q.level = k;
    q.offset[0] = point[0] / w;
    q.offset[1] = grid.d == 2 ? point[1] / w : 0;
    return q;
}

std::vector<std::size_t> cube_points(const Grid& grid, const DyadicCube& q) {
    const int w = cube_width(grid, q.level);
    std::vector<std::size_t> pts;
    if (grid.d == 1) {
        pts.reserve(static_cast<std::size_t>(w));
        const int base = q.offset[0] * w;
        for (int i = 0; i < w; ++i) pts.push_back(static_cast<std::size_t>(base + i));
    } else {
        pts.reserve(static_cast<std::size_t>(w) * static_cast<std::size_t>(w));
        const int b0 = q.offset[0] * w, b1 = q.offset[1] * w;
        for (int i0 = 0; i0 < w; ++i0)
            for (int i1 = 0; i1 < w; ++i1) pts.push_back(flat_of_axes(grid, b0 + i0, b1 + i1));
    }
    return pts;
}

double cube_min(const Grid& grid, std::span<const double> field, const DyadicCube& q) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t p : cube_points(grid, q)) m = std::min(m, field[p]);
    return m;
}

double cube_max(const Grid& grid, std::span<const double> field, const DyadicCube& q) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t p : cube_points(grid, q)) m = std::max(m, field[p]);
    return m;
}

double cube_mean(const Grid& grid, std::span<const double> field, const DyadicCube& q) {
    const auto pts = cube_points(grid, q);
    std::vector<double> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = field[pts[i]];
    return pairwise_sum(vals) / static_cast<double>(pts.size());
}

std::vector<double> level_min_field(const Grid& grid, std::span<const double> field, int k) {
    const std::size_t n = grid.point_count();
    std::vector<double> out(n);
    const std::size_t ncubes = cubes_per_level(grid, k);
    const std::size_t w = static_cast<std::size_t>(cube_width(grid, k));
    const auto N = static_cast<std::size_t>(grid.N);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(ncubes); ++r) {
        const DyadicCube q = cube_from_rank(grid, k, static_cast<std::size_t>(r));
        if (grid.d == 1) {
            const std::size_t base = static_cast<std::size_t>(q.offset[0]) * w;
            double m = field[base];
            for (std::size_t i = 1; i < w; ++i) m = std::min(m, field[base + i]);
            for (std::size_t i = 0; i < w; ++i) out[base + i] = m;
        } else {
            const std::size_t b0 = static_cast<std::size_t>(q.offset[0]) * w;
            const std::size_t b1 = static_cast<std::size_t>(q.offset[1]) * w;
            double m = std::numeric_limits<double>::infinity();
            for (std::size_t i0 = 0; i0 < w; ++i0) {
                const std::size_t row = (b0 + i0) * N + b1;
                for (std::size_t i1 = 0; i1 < w; ++i1) m = std::min(m, field[row + i1]);
            }
            for (std::size_t i0 = 0; i0 < w; ++i0) {
                const std::size_t row = (b0 + i0) * N + b1;
                for (std::size_t i1 = 0; i1 < w; ++i1) out[row + i1] = m;
            }
        }
    }
    return out;
}

std::vector<double> level_sum_per_cube(const Grid& grid, std::span<const double> field, int k) {
    const std::size_t ncubes = cubes_per_level(grid, k);
    std::vector<double> sums(ncubes);
    const std::size_t w = static_cast<std::size_t>(cube_width(grid, k));
    const auto N = static_cast<std::size_t>(grid.N);
#pragma omp parallel
    {
        std::vector<double> rows;
#pragma omp for schedule(static)
        for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(ncubes); ++r) {
            const DyadicCube q = cube_from_rank(grid, k, static_cast<std::size_t>(r));
            if (grid.d == 1) {
                const std::size_t base = static_cast<std::size_t>(q.offset[0]) * w;
                sums[static_cast<std::size_t>(r)] = pairwise_sum(field.subspan(base, w));
            } else {
                const std::size_t b0 = static_cast<std::size_t>(q.offset[0]) * w;
                const std::size_t b1 = static_cast<std::size_t>(q.offset[1]) * w;
                rows.resize(w);
                for (std::size_t i0 = 0; i0 < w; ++i0)
                    rows[i0] = pairwise_sum(field.subspan((b0 + i0) * N + b1, w));
                sums[static_cast<std::size_t>(r)] = pairwise_sum(std::span<const double>(rows));
            }
        }
    }
    return sums;
}

std::size_t cube_rank(const Grid& grid, const DyadicCube& q) {
    const std::size_t m = static_cast<std::size_t>(1) << q.level;
    if (grid.d == 1) return static_cast<std::size_t>(q.offset[0]);
    return static_cast<std::size_t>(q.offset[0]) * m + static_cast<std::size_t>(q.offset[1]);
}

std::size_t cubes_per_level(const Grid& grid, int k) {
    std::size_t c = 1;
    for (int i = 0; i < grid.d; ++i) c *= static_cast<std::size_t>(1) << k;
    return c;
}

DyadicCube cube_from_rank(const Grid& grid, int k, std::size_t rank) {
    const std::size_t m = static_cast<std::size_t>(1) << k;
    DyadicCube q;
    q.level = k;
    if (grid.d == 1) {
        q.offset[0] = static_cast<int>(rank);
    } else {
        q.offset[0] = static_cast<int>(rank / m);
        q.offset[1] = static_cast<int>(rank % m);
    }
    return q;
}

std::size_t SubsetMask::count() const {
    std::size_t c = 0;
    for (std::uint8_t b : mask) c += b ? 1 : 0;
    return c;
}

}  // namespace lpt
