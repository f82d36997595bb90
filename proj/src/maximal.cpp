#include "lptorus/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "lptorus/dyadic.hpp"
#include "lptorus/fft.hpp"

namespace lpt {

namespace {

std::vector<double> abs_pow_field(const SampledFunction& f, double r) {
    std::vector<double> g(f.values.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::pow(std::abs(f.values[i]), r);
    return g;
}

// S[s] = sum of g over the cyclic window [s, s+w).
void window_sums_1d(const double* g, int N, int w, double* S) {
    std::vector<double> P(static_cast<std::size_t>(N) + 1, 0.0);
    for (int i = 0; i < N; ++i) P[static_cast<std::size_t>(i) + 1] = P[static_cast<std::size_t>(i)] + g[i];
    for (int s = 0; s < N; ++s) {
        S[s] = s + w <= N ? P[static_cast<std::size_t>(s + w)] - P[static_cast<std::size_t>(s)]
                          : (P[static_cast<std::size_t>(N)] - P[static_cast<std::size_t>(s)]) +
                                P[static_cast<std::size_t>(s + w - N)];
    }
}

// M[j] = max of S over the cyclic window [j, j+w), deque sliding maximum.
void window_max_1d(const double* S, int N, int w, double* M) {
    std::deque<int> q;
    const int total = N + w - 1;
    for (int i = 0; i < total; ++i) {
        const double v = S[i % N];
        while (!q.empty() && S[q.back() % N] <= v) q.pop_back();
        q.push_back(i);
        if (q.front() <= i - w) q.pop_front();
        if (i >= w - 1) M[(i - w + 1) % N] = S[q.front() % N];
    }
}

// Per point, the best (max) average of g over windows of width w containing it.
std::vector<double> best_window_avg(const Grid& grid, const std::vector<double>& g, int w) {
    const int N = grid.N;
    std::vector<double> out(g.size());
    if (grid.d == 1) {
        std::vector<double> S(static_cast<std::size_t>(N)), M(static_cast<std::size_t>(N));
        window_sums_1d(g.data(), N, w, S.data());
        window_max_1d(S.data(), N, w, M.data());
        // window starting at s covers x iff s in (x-w, x]; M[j] = max over [j, j+w)
        for (int x = 0; x < N; ++x) out[static_cast<std::size_t>(x)] =
            M[static_cast<std::size_t>(((x - w + 1) % N + N) % N)] / static_cast<double>(w);
    } else {
        std::vector<double> rows(g.size()), S(g.size());
#pragma omp parallel for schedule(static)
        for (int r = 0; r < N; ++r)
            window_sums_1d(g.data() + static_cast<std::size_t>(r) * N, N, w,
                           rows.data() + static_cast<std::size_t>(r) * N);
#pragma omp parallel for schedule(static)
        for (int c = 0; c < N; ++c) {
            std::vector<double> col(static_cast<std::size_t>(N)), colS(static_cast<std::size_t>(N));
            for (int r = 0; r < N; ++r) col[static_cast<std::size_t>(r)] = rows[static_cast<std::size_t>(r) * N + c];
            window_sums_1d(col.data(), N, w, colS.data());
            for (int r = 0; r < N; ++r) S[static_cast<std::size_t>(r) * N + c] = colS[static_cast<std::size_t>(r)];
        }
        // sliding max along axis 1, then axis 0
        std::vector<double> T(g.size());
#pragma omp parallel for schedule(static)
        for (int r = 0; r < N; ++r) {
            std::vector<double> M(static_cast<std::size_t>(N));
            window_max_1d(S.data() + static_cast<std::size_t>(r) * N, N, w, M.data());
            for (int x1 = 0; x1 < N; ++x1)
                T[static_cast<std::size_t>(r) * N + x1] =
                    M[static_cast<std::size_t>(((x1 - w + 1) % N + N) % N)];
        }
        const double cells = static_cast<double>(w) * static_cast<double>(w);
#pragma omp parallel for schedule(static)
        for (int c = 0; c < N; ++c) {
            std::vector<double> col(static_cast<std::size_t>(N)), M(static_cast<std::size_t>(N));
            for (int r = 0; r < N; ++r) col[static_cast<std::size_t>(r)] = T[static_cast<std::size_t>(r) * N + c];
            window_max_1d(col.data(), N, w, M.data());
            for (int x0 = 0; x0 < N; ++x0)
                out[static_cast<std::size_t>(x0) * N + c] =
                    M[static_cast<std::size_t>(((x0 - w + 1) % N + N) % N)] / cells;
        }
    }
    return out;
}

MaximalField combine_scales(const SampledFunction& f, double r, int k, double eps,
                            const char* tag) {
    if (r <= 0.0) throw std::invalid_argument("maximal: r must be positive");
    if (eps < 0.0) throw std::invalid_argument("maximal: eps must be >= 0");
    const Grid& g = f.grid;
    const std::vector<double> gr = abs_pow_field(f, r);
    std::vector<double> best(g.point_count(), 0.0);
    for (int m = 0; m <= g.J; ++m) {
        const int w = g.N >> m;
        const std::vector<double> avg = best_window_avg(g, gr, w);
        // side 2^-m; cubes larger than 2^-k carry the decay factor
        const double factor = m >= k ? 1.0 : std::pow(std::ldexp(1.0, k - m), -eps);
        for (std::size_t i = 0; i < best.size(); ++i) {
            const double v = factor * std::pow(avg[i], 1.0 / r);
            best[i] = std::max(best[i], v);
        }
    }
    MaximalField out;
    out.grid = g;
    out.values = std::move(best);
    out.provenance = tag;
    return out;
}

}  // namespace

MaximalField hl_maximal(const SampledFunction& f, double r) {
    return combine_scales(f, r, 0, 0.0, "hl");
}

MaximalField variant_maximal(const SampledFunction& f, double r, int k, double eps) {
    if (k < 0 || k > f.grid.J) throw std::invalid_argument("variant_maximal: k outside [0,J]");
    return combine_scales(f, r, k, eps, "hl-variant");
}

namespace {

std::vector<double> peetre_weight(const Grid& g, int k, double exponent) {
    // weight over offsets, exponent = sigma (t = inf) or sigma * t
    std::vector<double> w(g.point_count());
    const double scale = std::ldexp(1.0, k);
    for (std::size_t o = 0; o < w.size(); ++o)
        w[o] = std::pow(1.0 + scale * torus_dist(g, o, 0), -exponent);
    return w;
}

}  // namespace

MaximalField peetre_maximal(const SampledFunction& f, double sigma, int k, double t) {
    if (sigma <= 0.0) throw std::invalid_argument("peetre_maximal: sigma must be positive");
    if (!(t > 0.0)) throw std::invalid_argument("peetre_maximal: t must be positive");
    const Grid& g = f.grid;
    MaximalField out;
    out.grid = g;
    out.values.assign(g.point_count(), 0.0);
    // the domination properties assume a band-limited input at scale ~2^k
    out.provenance = f.band.has_value() ? "peetre" : "peetre (unbanded input)";
    if (std::isinf(t)) {
        const std::vector<double> w = peetre_weight(g, k, sigma);
        std::vector<double> af(g.point_count());
        for (std::size_t i = 0; i < af.size(); ++i) af[i] = std::abs(f.values[i]);
        const int N = g.N;
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t x = 0; x < static_cast<std::ptrdiff_t>(af.size()); ++x) {
            const auto xa = axes_of_flat(g, static_cast<std::size_t>(x));
            double m = 0.0;
            for (std::size_t y = 0; y < af.size(); ++y) {
                const auto ya = axes_of_flat(g, y);
                const int o0 = ((xa[0] - ya[0]) % N + N) % N;
                const int o1 = g.d == 2 ? ((xa[1] - ya[1]) % N + N) % N : 0;
                m = std::max(m, af[y] * w[flat_of_axes(g, o0, o1)]);
            }
            out.values[static_cast<std::size_t>(x)] = m;
        }
        return out;
    }
    // finite t: circular convolution of |f|^t against the weight
    const std::vector<double> w = peetre_weight(g, k, sigma * t);
    std::vector<cd> gw(w.begin(), w.end());
    std::vector<cd> gf(g.point_count());
    for (std::size_t i = 0; i < gf.size(); ++i)
        gf[i] = cd{std::pow(std::abs(f.values[i]), t), 0.0};
    const std::size_t n = static_cast<std::size_t>(g.N);
    fft_nd(gw.data(), g.d, n, -1);
    fft_nd(gf.data(), g.d, n, -1);
    for (std::size_t i = 0; i < gf.size(); ++i) gf[i] *= gw[i];
    fft_nd(gf.data(), g.d, n, +1);
    const double inv_pts = 1.0 / static_cast<double>(g.point_count());
    const double amp = std::pow(std::ldexp(1.0, k), g.d / t);
    for (std::size_t i = 0; i < gf.size(); ++i) {
        const double conv = std::max(0.0, gf[i].real() * inv_pts);
        out.values[i] = amp * std::pow(conv * g.cell_volume, 1.0 / t);
    }
    return out;
}

Ladder peetre_ladder(const Ladder& ladder, double sigma, double t) {
    Ladder out;
    out.grid = ladder.grid;
    out.A = ladder.A;
    out.k_min = ladder.k_min;
    out.entries.resize(ladder.entries.size());
#pragma omp parallel for schedule(dynamic)
    for (int k = ladder.k_min; k <= ladder.k_max(); ++k) {
        const MaximalField mf = peetre_maximal(ladder.at(k), sigma, k, t);
        std::vector<cd> v(mf.values.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = cd{mf.values[i], 0.0};
        SampledFunction e = SampledFunction::from_values(out.grid, std::move(v));
        out.entries[static_cast<std::size_t>(k - out.k_min)] = std::move(e);
    }
    return out;
}

namespace ref {

MaximalField hl_maximal_brute(const SampledFunction& f, double r) {
    return variant_maximal_brute(f, r, 0, 0.0);
}

MaximalField variant_maximal_brute(const SampledFunction& f, double r, int k, double eps) {
    if (r <= 0.0) throw std::invalid_argument("maximal: r must be positive");
    const Grid& g = f.grid;
    const int N = g.N;
    std::vector<double> gr(g.point_count());
    for (std::size_t i = 0; i < gr.size(); ++i) gr[i] = std::pow(std::abs(f.values[i]), r);
    MaximalField out;
    out.grid = g;
    out.values.assign(g.point_count(), 0.0);
    out.provenance = "hl-brute";
    for (int m = 0; m <= g.J; ++m) {
        const int w = N >> m;
        const double factor = m >= k ? 1.0 : std::pow(std::ldexp(1.0, k - m), -eps);
        const double cells = std::pow(static_cast<double>(w), g.d);
        const int s1_range = g.d == 2 ? N : 1;
        for (int s0 = 0; s0 < N; ++s0) {
            for (int s1 = 0; s1 < s1_range; ++s1) {
                double sum = 0.0;
                for (int i0 = 0; i0 < w; ++i0)
                    for (int i1 = 0; i1 < (g.d == 2 ? w : 1); ++i1)
                        sum += gr[flat_of_axes(g, (s0 + i0) % N, (s1 + i1) % N)];
                const double v = factor * std::pow(sum / cells, 1.0 / r);
                for (int i0 = 0; i0 < w; ++i0)
                    for (int i1 = 0; i1 < (g.d == 2 ? w : 1); ++i1) {
                        double& slot = out.values[flat_of_axes(g, (s0 + i0) % N, (s1 + i1) % N)];
                        slot = std::max(slot, v);
                    }
            }
        }
    }
    return out;
}

MaximalField peetre_maximal_direct(const SampledFunction& f, double sigma, int k, double t) {
    if (sigma <= 0.0) throw std::invalid_argument("peetre_maximal: sigma must be positive");
    const Grid& g = f.grid;
    MaximalField out;
    out.grid = g;
    out.values.assign(g.point_count(), 0.0);
    out.provenance = "peetre-direct";
    const double scale = std::ldexp(1.0, k);
    for (std::size_t x = 0; x < g.point_count(); ++x) {
        if (std::isinf(t)) {
            double m = 0.0;
            for (std::size_t y = 0; y < g.point_count(); ++y)
                m = std::max(m, std::abs(f.values[y]) * std::pow(1.0 + scale * torus_dist(g, x, y), -sigma));
            out.values[x] = m;
        } else {
            double sum = 0.0;
            for (std::size_t y = 0; y < g.point_count(); ++y)
                sum += std::pow(std::abs(f.values[y]), t) *
                       std::pow(1.0 + scale * torus_dist(g, x, y), -sigma * t);
            out.values[x] = std::pow(scale, g.d / t) * std::pow(sum * g.cell_volume, 1.0 / t);
        }
    }
    return out;
}

}  // namespace ref

}  // namespace lpt
