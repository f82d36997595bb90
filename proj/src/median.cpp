#include "lptorus/median.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "lptorus/maximal.hpp"
#include "lptorus/reduce.hpp"
#include "lptorus/spaces.hpp"

namespace lpt {

double Rearrangement::query(double gamma_measure) const {
    if (gamma_measure < 0.0) throw std::invalid_argument("rearrangement: negative measure");
    const double allowed = gamma_measure / cell_measure;  // admissible exceedance count
    const auto n = static_cast<double>(sorted_desc.size());
    if (allowed >= n) return 0.0;
    const auto idx = static_cast<std::size_t>(std::floor(allowed));
    return idx < sorted_desc.size() ? std::max(sorted_desc[idx], 0.0) : 0.0;
}

Rearrangement rearrangement(std::span<const double> values, double measure_per_cell) {
    for (double v : values)
        if (v < 0.0) throw std::invalid_argument("rearrangement: negative input");
    Rearrangement r;
    r.cell_measure = measure_per_cell;
    r.sorted_desc.assign(values.begin(), values.end());
    std::sort(r.sorted_desc.begin(), r.sorted_desc.end(), std::greater<>());
    return r;
}

double gamma_median(std::span<const double> values, double gamma) {
    if (values.empty()) throw std::invalid_argument("gamma_median: empty cube");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma_median: gamma outside (0,1)");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end(), std::greater<>());
    const auto c = static_cast<std::size_t>(std::floor(gamma * static_cast<double>(v.size())));
    return std::max(v[c], 0.0);
}

std::vector<std::vector<double>> ladder_min_fields(const Ladder& ladder) {
    const Grid& g = ladder.grid;
    std::vector<std::vector<double>> out(ladder.entries.size());
    for (int k = ladder.k_min; k <= ladder.k_max(); ++k) {
        std::vector<double> a(g.point_count());
        const SampledFunction& e = ladder.at(k);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(e.values[i]);
        out[static_cast<std::size_t>(k - ladder.k_min)] = level_min_field(g, a, k);
    }
    return out;
}

namespace {

// tailq[nu][x] = sum_{k >= nu} minfield_k(x)^q for nu in [0, J].
// Comparisons and medians run on this q-power scale; the 1/q root is applied
// only when a value leaves the module.
std::vector<std::vector<double>> tail_power_fields(const Grid& g,
                                                   const std::vector<std::vector<double>>& mins,
                                                   int k_min, double q) {
    const std::size_t n = g.point_count();
    std::vector<std::vector<double>> tailq(static_cast<std::size_t>(g.J) + 1);
    std::vector<double> acc(n, 0.0);
    for (int nu = g.J; nu >= 0; --nu) {
        const int idx = nu - k_min;
        if (idx >= 0 && idx < static_cast<int>(mins.size())) {
            const std::vector<double>& m = mins[static_cast<std::size_t>(idx)];
            for (std::size_t i = 0; i < n; ++i) acc[i] += std::pow(m[i], q);
        }
        tailq[static_cast<std::size_t>(nu)] = acc;
    }
    return tailq;
}

// Per-level field of gamma-medians of tailq over the level's cubes.
std::vector<double> level_median_field(const Grid& g, const std::vector<double>& tq, int nu,
                                       double gamma) {
    std::vector<double> out(g.point_count());
    const std::size_t ncubes = cubes_per_level(g, nu);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(ncubes); ++r) {
        const auto pts = cube_points(g, cube_from_rank(g, nu, static_cast<std::size_t>(r)));
        std::vector<double> vals(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = tq[pts[i]];
        const double med = gamma_median(vals, gamma);
        for (std::size_t p : pts) out[p] = med;
    }
    return out;
}

struct EnvelopeData {
    std::vector<std::vector<double>> tailq;  // [nu][x]
    std::vector<std::vector<double>> envq;   // [nu][x], suffix max of medians
};

EnvelopeData build_envelopes(const Ladder& ladder, double gamma, double q) {
    const Grid& g = ladder.grid;
    EnvelopeData ed;
    ed.tailq = tail_power_fields(g, ladder_min_fields(ladder), ladder.k_min, q);
    ed.envq.resize(static_cast<std::size_t>(g.J) + 1);
    std::vector<double> suffix(g.point_count(), 0.0);
    for (int nu = g.J; nu >= 0; --nu) {
        const std::vector<double> med =
            level_median_field(g, ed.tailq[static_cast<std::size_t>(nu)], nu, gamma);
        for (std::size_t i = 0; i < suffix.size(); ++i) suffix[i] = std::max(suffix[i], med[i]);
        ed.envq[static_cast<std::size_t>(nu)] = suffix;
    }
    return ed;
}

void check_params(double gamma, double q) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma outside (0,1)");
    if (!(q > 0.0) || std::isinf(q)) throw std::invalid_argument("q must be finite positive");
}

}  // namespace

std::vector<double> g_function(const Ladder& ladder, const DyadicCube& P, double q) {
    if (!(q > 0.0)) throw std::invalid_argument("g_function: q must be positive");
    if (P.level < 0 || P.level > ladder.grid.J)
        throw std::invalid_argument("g_function: level outside grid range");
    const Grid& g = ladder.grid;
    const auto mins = ladder_min_fields(ladder);
    const auto pts = cube_points(g, P);
    std::vector<double> out(pts.size(), 0.0);
    const bool use_max = std::isinf(q);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double acc = 0.0;
        for (int k = std::max(P.level, ladder.k_min); k <= ladder.k_max(); ++k) {
            const double v = mins[static_cast<std::size_t>(k - ladder.k_min)][pts[i]];
            if (use_max) acc = std::max(acc, v);
            else acc += std::pow(v, q);
        }
        out[i] = use_max ? acc : std::pow(acc, 1.0 / q);
    }
    return out;
}

MedianField median_envelope(const Ladder& ladder, double gamma, double q, int mu) {
    check_params(gamma, q);
    if (mu < 0 || mu > ladder.grid.J) throw std::invalid_argument("median_envelope: mu outside [0,J]");
    const EnvelopeData ed = build_envelopes(ladder, gamma, q);
    MedianField mf;
    mf.grid = ladder.grid;
    mf.mu = mu;
    const std::vector<double>& eq = ed.envq[static_cast<std::size_t>(mu)];
    mf.values.resize(eq.size());
    for (std::size_t i = 0; i < eq.size(); ++i) mf.values[i] = std::pow(eq[i], 1.0 / q);
    return mf;
}

SubsetMask Selection::mask_for(const DyadicCube& cube) const {
    SubsetMask sm;
    sm.cube = cube;
    const auto pts = cube_points(grid, cube);
    sm.mask.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        sm.mask[i] = in_subset(cube.level, pts[i]) ? 1 : 0;
    return sm;
}

Selection select_subsets(const Ladder& ladder, double gamma, double q) {
    check_params(gamma, q);
    const Grid& g = ladder.grid;
    const EnvelopeData ed = build_envelopes(ladder, gamma, q);
    Selection sel;
    sel.grid = g;
    sel.gamma = gamma;
    sel.q = q;
    sel.level_min = 0;
    sel.level_max = g.J;
    sel.level_masks.resize(static_cast<std::size_t>(g.J) + 1);
    for (int nu = 0; nu <= g.J; ++nu) {
        const std::vector<double>& tq = ed.tailq[static_cast<std::size_t>(nu)];
        const std::vector<double>& eq = ed.envq[static_cast<std::size_t>(nu)];
        std::vector<std::uint8_t> mask(g.point_count());
        for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = tq[i] <= eq[i] ? 1 : 0;
        // measure bound: at most floor(gamma * n) points per cube may drop out
        const std::size_t ncubes = cubes_per_level(g, nu);
        for (std::size_t r = 0; r < ncubes; ++r) {
            const auto pts = cube_points(g, cube_from_rank(g, nu, r));
            std::size_t removed = 0;
            for (std::size_t p : pts) removed += mask[p] ? 0 : 1;
            const auto budget = static_cast<std::size_t>(
                std::floor(gamma * static_cast<double>(pts.size())));
            if (removed > budget)
                throw std::logic_error("select_subsets: measure bound violated");
        }
        sel.level_masks[static_cast<std::size_t>(nu)] = std::move(mask);
    }
    return sel;
}

Selection random_selection(const Grid& grid, double gamma, std::uint64_t seed) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma outside (0,1)");
    std::mt19937_64 eng(seed);
    Selection sel;
    sel.grid = grid;
    sel.gamma = gamma;
    sel.q = 0.0;
    sel.level_min = 0;
    sel.level_max = grid.J;
    sel.level_masks.assign(static_cast<std::size_t>(grid.J) + 1,
                           std::vector<std::uint8_t>(grid.point_count(), 1));
    for (int nu = 0; nu <= grid.J; ++nu) {
        std::vector<std::uint8_t>& mask = sel.level_masks[static_cast<std::size_t>(nu)];
        const std::size_t ncubes = cubes_per_level(grid, nu);
        for (std::size_t r = 0; r < ncubes; ++r) {
            const auto pts = cube_points(grid, cube_from_rank(grid, nu, r));
            // strictly fewer than gamma * n removals keeps |S_Q| > (1-gamma)|Q|
            auto budget = static_cast<std::size_t>(std::floor(gamma * static_cast<double>(pts.size())));
            if (budget > 0 && static_cast<double>(budget) == gamma * static_cast<double>(pts.size()))
                --budget;
            if (budget == 0) continue;
            const std::size_t removals = eng() % (budget + 1);
            for (std::size_t i = 0; i < removals; ++i)
                mask[pts[eng() % pts.size()]] = 0;
        }
    }
    return sel;
}

double masked_linfty_lq(const Ladder& ladder, const Selection& sel, int mu, double q) {
    if (!(q > 0.0) || std::isinf(q)) throw std::invalid_argument("masked_linfty_lq: q must be finite positive");
    const Grid& g = ladder.grid;
    const int k_lo = std::max(mu, ladder.k_min);
    if (k_lo < sel.level_min || ladder.k_max() > sel.level_max)
        throw std::invalid_argument("masked_linfty_lq: selection does not cover the level range");
    const auto mins = ladder_min_fields(ladder);
    const std::size_t n = g.point_count();
    std::vector<double> acc(n, 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        double s = 0.0;
        for (int k = k_lo; k <= ladder.k_max(); ++k) {
            if (!sel.in_subset(k, static_cast<std::size_t>(i))) continue;
            s += std::pow(mins[static_cast<std::size_t>(k - ladder.k_min)][static_cast<std::size_t>(i)], q);
        }
        acc[static_cast<std::size_t>(i)] = s;
    }
    double best = 0.0;
    for (double v : acc) best = std::max(best, v);
    return std::pow(best, 1.0 / q);
}

EquivalenceRow equivalence_report(const Ladder& f_ladder, double gamma, double q, double sigma,
                                  double t, int mu) {
    check_params(gamma, q);
    const int d = f_ladder.grid.d;
    if (!(sigma > d / t && d / t > d / q))
        throw std::invalid_argument("equivalence_report: need sigma > d/t > d/q");
    if (mu < 0 || mu > f_ladder.grid.J)
        throw std::invalid_argument("equivalence_report: mu outside [0,J]");

    EquivalenceRow row;
    row.lhs = carleson_sup(f_ladder, q, mu);

    const Ladder peetre = peetre_ladder(f_ladder, sigma, t);
    const Selection sel = select_subsets(peetre, gamma, q);
    row.rhs = masked_linfty_lq(peetre, sel, mu, q);

    const MedianField env = median_envelope(peetre, gamma, q, mu);
    double env_sup = 0.0;
    for (double v : env.values) env_sup = std::max(env_sup, v);
    row.envelope_sup = env_sup;
    if (row.rhs > env_sup * (1.0 + 1e-12))
        throw std::logic_error("equivalence_report: masked norm exceeds the median envelope");

    row.ratio = (row.lhs < 1e-13 && row.rhs < 1e-13)
                    ? std::numeric_limits<double>::quiet_NaN()
                    : row.lhs / row.rhs;
    return row;
}

namespace ref {

double gamma_median_scan(std::span<const double> values, double gamma) {
    const auto n = static_cast<double>(values.size());
    const double allowed = gamma * n;
    std::vector<double> cands(values.begin(), values.end());
    cands.push_back(0.0);
    std::sort(cands.begin(), cands.end());
    for (double lambda : cands) {
        std::size_t count = 0;
        for (double v : values) count += v > lambda ? 1 : 0;
        if (static_cast<double>(count) <= allowed) return std::max(lambda, 0.0);
    }
    return cands.back();
}

double rearrangement_query_scan(std::span<const double> values, double cell,
                                double gamma_measure) {
    std::vector<double> cands(values.begin(), values.end());
    cands.push_back(0.0);
    std::sort(cands.begin(), cands.end());
    for (double lambda : cands) {
        std::size_t count = 0;
        for (double v : values) count += v > lambda ? 1 : 0;
        if (static_cast<double>(count) * cell <= gamma_measure) return std::max(lambda, 0.0);
    }
    return cands.back();
}

std::vector<double> g_function_brute(const Ladder& ladder, const DyadicCube& P, double q) {
    const Grid& g = ladder.grid;
    const auto pts = cube_points(g, P);
    std::vector<double> out(pts.size(), 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto xa = axes_of_flat(g, pts[i]);
        double acc = 0.0;
        for (int k = std::max(P.level, ladder.k_min); k <= ladder.k_max(); ++k) {
            const DyadicCube qk = containing_cube(g, xa, k);
            double m = std::numeric_limits<double>::infinity();
            for (std::size_t p : cube_points(g, qk))
                m = std::min(m, std::abs(ladder.at(k).values[p]));
            acc += std::pow(m, q);
        }
        out[i] = std::pow(acc, 1.0 / q);
    }
    return out;
}

double masked_linfty_lq_brute(const Ladder& ladder, const Selection& sel, int mu, double q) {
    const Grid& g = ladder.grid;
    double best = 0.0;
    for (std::size_t x = 0; x < g.point_count(); ++x) {
        const auto xa = axes_of_flat(g, x);
        double s = 0.0;
        for (int k = std::max(mu, ladder.k_min); k <= ladder.k_max(); ++k) {
            if (!sel.in_subset(k, x)) continue;
            const DyadicCube qk = containing_cube(g, xa, k);
            double m = std::numeric_limits<double>::infinity();
            for (std::size_t p : cube_points(g, qk))
                m = std::min(m, std::abs(ladder.at(k).values[p]));
            s += std::pow(m, q);
        }
        best = std::max(best, std::pow(s, 1.0 / q));
    }
    return best;
}

}  // namespace ref

}  // namespace lpt
