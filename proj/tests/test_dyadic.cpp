#include <set>

#include "doctest.h"
#include "lptorus/dyadic.hpp"

using namespace lpt;

TEST_CASE("cube enumeration and tiling") {
    const Grid g1 = make_grid(1, 5);
    CHECK(cubes_at_level(g1, 0).size() == 1);
    CHECK(cubes_at_level(g1, 3).size() == 8);
    CHECK(cubes_at_level(g1, 3)[0].side() == doctest::Approx(0.125));
    CHECK_THROWS_AS(cubes_at_level(g1, 6), std::invalid_argument);

    const Grid g2 = make_grid(2, 4);
    const auto cubes = cubes_at_level(g2, 2);
    CHECK(cubes.size() == 16);
    std::set<std::size_t> seen;
    for (const DyadicCube& q : cubes)
        for (std::size_t p : cube_points(g2, q)) CHECK(seen.insert(p).second);
    CHECK(seen.size() == g2.point_count());

    double measure = 0.0;
    for (const DyadicCube& q : cubes) measure += q.measure(g2.d);
    CHECK(measure == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("containing cube and nesting") {
    const Grid g = make_grid(1, 5);
    CHECK(containing_cube(g, {0, 0}, 3).offset[0] == 0);
    CHECK(containing_cube(g, {g.N / 2, 0}, 1).offset[0] == 1);
    for (int k = 0; k + 1 <= g.J; ++k) {
        for (int x = 0; x < g.N; ++x) {
            const DyadicCube coarse = containing_cube(g, {x, 0}, k);
            const DyadicCube fine = containing_cube(g, {x, 0}, k + 1);
            // the finer cube sits inside the coarser one
            CHECK(fine.offset[0] / 2 == coarse.offset[0]);
        }
    }
}

TEST_CASE("cube extremes") {
    const Grid g = make_grid(1, 4);
    std::vector<double> field(g.point_count(), 2.0);
    const DyadicCube q{1, {0, 0}};
    CHECK(cube_min(g, field, q) == 2.0);
    CHECK(cube_max(g, field, q) == 2.0);

    field[1] = 7.0;
    CHECK(cube_min(g, field, q) == 2.0);
    CHECK(cube_max(g, field, q) == 7.0);
    const double mean = cube_mean(g, field, q);
    CHECK(cube_min(g, field, q) <= mean);
    CHECK(mean <= cube_max(g, field, q));
}

TEST_CASE("per-level min field matches direct scans") {
    const Grid g = make_grid(2, 4);
    std::vector<double> field(g.point_count());
    for (std::size_t i = 0; i < field.size(); ++i) field[i] = std::sin(0.37 * static_cast<double>(i)) + 2.0;
    for (int k : {0, 1, 3}) {
        const auto mins = level_min_field(g, field, k);
        for (const DyadicCube& q : cubes_at_level(g, k)) {
            const double direct = cube_min(g, field, q);
            for (std::size_t p : cube_points(g, q)) CHECK(mins[p] == direct);
        }
    }
}
