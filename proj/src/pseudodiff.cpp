#include "lptorus/pseudodiff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lptorus/reduce.hpp"
#include "lptorus/spaces.hpp"

namespace lpt {

double tau_exponent(double p, int d) {
    return d / std::min(1.0, p) - d;
}

double tau_exponent(double p, double q, int d) {
    return d / std::min({1.0, p, q}) - d;
}

namespace {

void check_pseudo_budget(int n, const Grid& grid) {
    if (n < 1 || n > 3) throw std::invalid_argument("pseudo: n must be in {1,2,3}");
    if (grid.d == 1 && n > 3) throw std::invalid_argument("pseudo: n too large for d=1");
    if (grid.d == 2 && n > 2) throw std::invalid_argument("pseudo: n too large for d=2");
}

std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

// Inhomogeneous band profile for slot 1: level 0 is the low-pass block.
double band_profile(int k, double abs_xi) {
    return k == 0 ? phi0_profile(abs_xi) : phik_profile(k, abs_xi);
}

}  // namespace

cd slice_value(const PseudoSymbol& a, int k, std::span<const double> x,
               std::span<const double> xi) {
    const int d = a.grid.d;
    double r1 = 0.0;
    for (int i = 0; i < d; ++i) r1 += xi[static_cast<std::size_t>(i)] * xi[static_cast<std::size_t>(i)];
    double mask = band_profile(k, std::sqrt(r1));
    for (int j = 1; j < a.n && mask != 0.0; ++j) {
        double rj = 0.0;
        for (int i = 0; i < d; ++i) {
            const double v = xi[static_cast<std::size_t>(j * d + i)];
            rj += v * v;
        }
        mask *= phi0_profile(std::ldexp(std::sqrt(rj), -k));
    }
    return mask == 0.0 ? cd{0.0, 0.0} : a.eval(x, xi) * mask;
}

ProductMask slot_dominant_mask(const Grid& grid, int slot) {
    if (slot < 1) throw std::invalid_argument("slot_dominant_mask: slot must be >= 1");
    const int d = grid.d;
    const int J = grid.J;
    return [d, J, slot](std::span<const double> xi) {
        const int n = static_cast<int>(xi.size()) / d;
        const int owner = slot - 1;
        double radii[3] = {0.0, 0.0, 0.0};
        for (int j = 0; j < n; ++j) {
            double rj = 0.0;
            for (int i = 0; i < d; ++i) {
                const double v = xi[static_cast<std::size_t>(j * d + i)];
                rj += v * v;
            }
            radii[j] = std::sqrt(rj);
        }
        double total = 0.0;
        for (int k = 0; k <= J; ++k) {
            double m = band_profile(k, radii[owner]);
            for (int j = 0; j < n && m != 0.0; ++j) {
                if (j == owner) continue;
                // earlier slots sit strictly below the top band
                const int cap = j < owner ? k - 1 : k;
                m *= cap < 0 ? 0.0 : phi0_profile(std::ldexp(radii[j], -cap));
            }
            total += m;
        }
        return total;
    };
}

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Iterated central difference in the x variables, evaluated through the
// closure so it works on any x lattice. Step is one grid cell per axis.
cd x_derivative(const PseudoSymbol& a, std::span<const double> x, std::span<const double> xi,
                std::span<const int> beta, double hx) {
    const int d = static_cast<int>(x.size());
    double shifted[2] = {x[0], d == 2 ? x[1] : 0.0};
    cd acc{0.0, 0.0};
    const int b0 = beta[0];
    const int b1 = d == 2 ? beta[1] : 0;
    for (int j0 = 0; j0 <= b0; ++j0) {
        for (int j1 = 0; j1 <= b1; ++j1) {
            shifted[0] = x[0] + (b0 - 2 * j0) * hx;
            if (d == 2) shifted[1] = x[1] + (b1 - 2 * j1) * hx;
            const double sign = ((j0 + j1) % 2 == 0) ? 1.0 : -1.0;
            acc += sign * binomial(b0, j0) * binomial(b1, j1) *
                   a.eval(std::span<const double>(shifted, static_cast<std::size_t>(d)), xi);
        }
    }
    return acc / std::pow(2.0 * hx, b0 + b1);
}

}  // namespace

SeminormResult seminorm(const PseudoSymbol& a, int N) {
    check_pseudo_budget(a.n, a.grid);
    if (N < 0 || N > 4) throw std::invalid_argument("seminorm: derivative order outside [0,4]");
    const Grid& g = a.grid;
    const int d = g.d;
    const int n = a.n;

    // x lattice, strided when the full evaluation array would blow the budget
    const std::size_t xi_total = ipow(static_cast<std::size_t>(g.N), n * d);
    int x_stride = 1;
    while ((g.point_count() / ipow(static_cast<std::size_t>(x_stride), d)) * xi_total >
           (static_cast<std::size_t>(1) << 22))
        x_stride *= 2;

    std::vector<std::array<int, 2>> x_axes;
    if (d == 1) {
        for (int i = 0; i < g.N; i += x_stride) x_axes.push_back({i, 0});
    } else {
        for (int i0 = 0; i0 < g.N; i0 += x_stride)
            for (int i1 = 0; i1 < g.N; i1 += x_stride) x_axes.push_back({i0, i1});
    }
    const std::size_t total = x_axes.size() * xi_total;
    const auto axis_len = static_cast<std::size_t>(g.N);

    // multi-indices with block order <= N
    std::vector<std::vector<int>> multis;
    {
        std::vector<int> cur(static_cast<std::size_t>(d), 0);
        const std::function<void(int, int)> rec = [&](int pos, int left) {
            if (pos == d) {
                multis.push_back(cur);
                return;
            }
            for (int o = 0; o <= left; ++o) {
                cur[static_cast<std::size_t>(pos)] = o;
                rec(pos + 1, left - o);
            }
        };
        rec(0, N);
    }

    SeminormResult best;
    best.value = 0.0;
    best.fd_estimated = a.fd_derivatives;
    const double hx = 1.0 / g.N;

    for (const std::vector<int>& beta : multis) {
        int beta_total = 0;
        for (int b : beta) beta_total += b;

        // base array holds the x derivative at this beta, laid out as
        // [x][xi vars...] with every xi axis in monotone frequency order
        // (position p <-> frequency p - N/2) so stencils never cross a wrap.
        std::vector<cd> base(total);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(total); ++t) {
            const std::size_t xi_flat = static_cast<std::size_t>(t) % xi_total;
            const std::size_t xs = static_cast<std::size_t>(t) / xi_total;
            double xc[2], xic[6];
            for (int i = 0; i < d; ++i)
                xc[i] = static_cast<double>(x_axes[xs][static_cast<std::size_t>(i)]) / g.N;
            std::size_t rem = xi_flat;
            for (int v = n * d - 1; v >= 0; --v) {
                const auto pos = static_cast<std::ptrdiff_t>(rem % axis_len);
                rem /= axis_len;
                xic[v] = static_cast<double>(pos - g.N / 2);
            }
            const std::span<const double> xcs(xc, static_cast<std::size_t>(d));
            const std::span<const double> xis(xic, static_cast<std::size_t>(n * d));
            base[static_cast<std::size_t>(t)] =
                beta_total == 0 ? a.eval(xcs, xis) : x_derivative(a, xcs, xis, beta, hx);
        }

        // alpha combinations on top of this beta block
        std::vector<std::size_t> combo(static_cast<std::size_t>(n), 0);
        while (true) {
            std::vector<int> alpha(static_cast<std::size_t>(n * d), 0);
            int alpha_total = 0;
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < d; ++i) {
                    const int o = multis[combo[static_cast<std::size_t>(j)]][static_cast<std::size_t>(i)];
                    alpha[static_cast<std::size_t>(j * d + i)] = o;
                    alpha_total += o;
                }

            std::vector<cd> D = base;
            int margin = 0;
            for (int v = 0; v < n * d; ++v) {
                const int ord = alpha[static_cast<std::size_t>(v)];
                if (ord == 0) continue;
                margin = std::max(margin, ord);
                std::size_t stride = 1;
                for (int w = n * d - 1; w > v; --w) stride *= axis_len;
                const std::size_t axis_block = stride * axis_len;
                for (int rep = 0; rep < ord; ++rep) {
                    std::vector<cd> next(D.size());
#pragma omp parallel for schedule(static)
                    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(D.size()); ++t) {
                        const std::size_t bpos = static_cast<std::size_t>(t) / axis_block * axis_block;
                        const std::size_t within = static_cast<std::size_t>(t) % axis_block;
                        const std::size_t axis_pos = within / stride;
                        const std::size_t off = within % stride;
                        cd hi{0.0, 0.0}, lo{0.0, 0.0};
                        if (axis_pos + 1 < axis_len) hi = D[bpos + (axis_pos + 1) * stride + off];
                        if (axis_pos >= 1) lo = D[bpos + (axis_pos - 1) * stride + off];
                        next[static_cast<std::size_t>(t)] = (hi - lo) / 2.0;  // unit step in xi
                    }
                    D = std::move(next);
                }
            }

            double local_best = 0.0;
            const double expo = -a.order + alpha_total - beta_total;
#pragma omp parallel for schedule(static) reduction(max : local_best)
            for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(D.size()); ++t) {
                std::size_t rem = static_cast<std::size_t>(t) % xi_total;
                double sum_abs = 0.0;
                bool interior = true;
                for (int j = n - 1; j >= 0 && interior; --j) {
                    double rj = 0.0;
                    for (int i = d - 1; i >= 0; --i) {
                        const auto pos = static_cast<std::ptrdiff_t>(rem % axis_len);
                        rem /= axis_len;
                        if (pos < margin || pos >= static_cast<std::ptrdiff_t>(axis_len) - margin)
                            interior = false;
                        const double fr = static_cast<double>(pos - g.N / 2);
                        rj += fr * fr;
                    }
                    sum_abs += std::sqrt(rj);
                }
                if (!interior) continue;
                const double weight = std::pow(1.0 + sum_abs, expo);
                local_best = std::max(local_best, weight * std::abs(D[static_cast<std::size_t>(t)]));
            }
            if (local_best > best.value) {
                best.value = local_best;
                best.argmax_alpha = alpha;
                best.argmax_beta = beta;
            }

            int j = n - 1;
            for (; j >= 0; --j) {
                if (combo[static_cast<std::size_t>(j)] + 1 < multis.size()) {
                    ++combo[static_cast<std::size_t>(j)];
                    break;
                }
                combo[static_cast<std::size_t>(j)] = 0;
            }
            if (j < 0) break;
        }
    }
    return best;
}

namespace {

// shared direct-summation core; mask may be null
SampledFunction pseudo_direct(const PseudoSymbol& a, std::span<const SampledFunction> fs,
                              const ProductMask* mask) {
    check_pseudo_budget(a.n, a.grid);
    if (static_cast<int>(fs.size()) != a.n)
        throw std::invalid_argument("apply_pseudo: argument count mismatch");
    for (const SampledFunction& f : fs)
        if (!(f.grid == a.grid)) throw std::invalid_argument("apply_pseudo: grid mismatch");
    const Grid& g = a.grid;
    const int n = a.n, d = g.d;
    const std::size_t P = g.point_count();
    const std::size_t xi_total = ipow(P, n);
    std::vector<cd> out(P);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t x = 0; x < static_cast<std::ptrdiff_t>(P); ++x) {
        const auto xa = axes_of_flat(g, static_cast<std::size_t>(x));
        double xc[2];
        for (int i = 0; i < d; ++i) xc[i] = static_cast<double>(xa[static_cast<std::size_t>(i)]) / g.N;
        cd acc{0.0, 0.0};
        double xic[6];
        for (std::size_t xi_flat = 0; xi_flat < xi_total; ++xi_flat) {
            std::size_t rem = xi_flat;
            cd prod{1.0, 0.0};
            double phase = 0.0;
            for (int j = n - 1; j >= 0; --j) {
                const std::size_t slot = rem % P;
                rem /= P;
                prod *= fs[static_cast<std::size_t>(j)].spectrum[slot];
                const auto ax = axes_of_flat(g, slot);
                for (int i = 0; i < d; ++i) {
                    const int fr = freq_of_index(ax[static_cast<std::size_t>(i)], g.N);
                    xic[j * d + i] = fr;
                    phase += xc[i] * fr;
                }
            }
            if (prod == cd{0.0, 0.0}) continue;
            const std::span<const double> xis(xic, static_cast<std::size_t>(n * d));
            double mval = 1.0;
            if (mask) {
                mval = (*mask)(xis);
                if (mval == 0.0) continue;
            }
            const cd aval = a.eval(std::span<const double>(xc, static_cast<std::size_t>(d)), xis);
            acc += aval * mval * prod * std::polar(1.0, 2.0 * std::numbers::pi * phase);
        }
        out[static_cast<std::size_t>(x)] = acc;
    }
    return SampledFunction::from_values(g, std::move(out));
}

}  // namespace

SampledFunction apply_pseudo(const PseudoSymbol& a, std::span<const SampledFunction> fs) {
    return pseudo_direct(a, fs, nullptr);
}

SampledFunction apply_pseudo_masked(const PseudoSymbol& a, std::span<const SampledFunction> fs,
                                    const ProductMask& mask) {
    return pseudo_direct(a, fs, &mask);
}

const std::vector<cd>& CoefficientTable::coeff(std::span<const int> l) const {
    for (std::size_t i = 0; i < l_list.size(); ++i) {
        bool eq = l_list[i].size() == l.size();
        for (std::size_t j = 0; eq && j < l.size(); ++j) eq = l_list[i][j] == l[j];
        if (eq) return c[i];
    }
    throw std::invalid_argument("CoefficientTable: l outside the truncation range");
}

CoefficientTable fourier_coeffs(const PseudoSymbol& a, int k, int L, int oversample) {
    check_pseudo_budget(a.n, a.grid);
    if (oversample < 1 || (oversample & (oversample - 1)) != 0)
        throw std::invalid_argument("fourier_coeffs: oversample must be a power of two");
    const Grid& g = a.grid;
    const int n = a.n, d = g.d;
    const int rank = n * d;
    const std::size_t M =
        static_cast<std::size_t>(oversample) << (k + 2);  // box lattice per axis
    if (L > static_cast<int>(M) / 2)
        throw std::invalid_argument("fourier_coeffs: L exceeds the box lattice Nyquist");
    std::size_t box_total = 1;
    for (int i = 0; i < rank; ++i) box_total *= M;

    CoefficientTable table;
    table.k = k;
    table.L = L;
    table.n = n;
    table.grid = g;
    // truncation window |l_j|_inf <= L; at L = M/2 the window closes over the
    // whole lattice (the -M/2 line included) and the series inverts exactly
    const int lo = -std::min(L, static_cast<int>(M) / 2);
    const int hi = std::min(L, static_cast<int>(M) / 2 - 1);
    const int win = hi - lo + 1;
    std::size_t l_count = 1;
    for (int i = 0; i < rank; ++i) l_count *= static_cast<std::size_t>(win);
    table.l_list.resize(l_count);
    table.c.assign(l_count, std::vector<cd>(g.point_count()));
    for (std::size_t li = 0; li < l_count; ++li) {
        std::size_t rem = li;
        std::vector<int> lv(static_cast<std::size_t>(rank));
        for (int i = rank - 1; i >= 0; --i) {
            lv[static_cast<std::size_t>(i)] = lo + static_cast<int>(rem % win);
            rem /= win;
        }
        table.l_list[li] = std::move(lv);
    }

    const std::size_t nx = g.point_count();
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t xf = 0; xf < static_cast<std::ptrdiff_t>(nx); ++xf) {
        const auto xa = axes_of_flat(g, static_cast<std::size_t>(xf));
        double xc[2];
        for (int i = 0; i < d; ++i) xc[i] = static_cast<double>(xa[static_cast<std::size_t>(i)]) / g.N;
        std::vector<cd> B(box_total);
        double xic[6];
        const double inv_os = 1.0 / static_cast<double>(oversample);
        for (std::size_t flat = 0; flat < box_total; ++flat) {
            std::size_t rem = flat;
            for (int v = rank - 1; v >= 0; --v) {
                const auto iv = static_cast<std::ptrdiff_t>(rem % M) - static_cast<std::ptrdiff_t>(M / 2);
                rem /= M;
                xic[v] = static_cast<double>(iv) * inv_os;
            }
            B[flat] = slice_value(a, k, std::span<const double>(xc, static_cast<std::size_t>(d)),
                                  std::span<const double>(xic, static_cast<std::size_t>(rank)));
        }
        fft_rank(B.data(), rank, M, -1);
        const double scale = 1.0 / static_cast<double>(box_total);
        for (std::size_t li = 0; li < l_count; ++li) {
            const std::vector<int>& lv = table.l_list[li];
            std::size_t src = 0;
            int lsum = 0;
            for (int i = 0; i < rank; ++i) {
                src = src * M + static_cast<std::size_t>(index_of_freq(lv[static_cast<std::size_t>(i)],
                                                                        static_cast<int>(M)));
                lsum += lv[static_cast<std::size_t>(i)];
            }
            // the box is centered, so the index-phase picks up a half-period sign
            const double sign = (lsum % 2 == 0) ? 1.0 : -1.0;
            table.c[li][static_cast<std::size_t>(xf)] = B[src] * (scale * sign);
        }
    }
    return table;
}

namespace {

double tilde_band_profile(int k, double r) {
    if (k == 0) return phi0_profile(r / 2.0);  // widened low-pass block
    return phi0_profile(std::ldexp(r, -(k + 1))) - phi0_profile(std::ldexp(r, -(k - 2)));
}

}  // namespace

std::vector<cd> slot1_window(const Grid& grid, int k, std::span<const int> l1) {
    std::vector<cd> w(grid.point_count());
    const double box_scale = std::ldexp(1.0, -(k + 2));  // phase 2pi <l, xi> / 2^{k+2}
    for (std::size_t p = 0; p < w.size(); ++p) {
        const auto ax = axes_of_flat(grid, p);
        double dot = 0.0, r2 = 0.0;
        for (int i = 0; i < grid.d; ++i) {
            const double fr = freq_of_index(ax[static_cast<std::size_t>(i)], grid.N);
            dot += static_cast<double>(l1[static_cast<std::size_t>(i)]) * fr;
            r2 += fr * fr;
        }
        const double amp = tilde_band_profile(k, std::sqrt(r2));
        w[p] = amp == 0.0 ? cd{0.0, 0.0}
                          : std::polar(amp, 2.0 * std::numbers::pi * dot * box_scale);
    }
    return w;
}

std::vector<cd> slotj_window(const Grid& grid, int k, std::span<const int> lj) {
    std::vector<cd> w(grid.point_count());
    const double box_scale = std::ldexp(1.0, -(k + 2));
    for (std::size_t p = 0; p < w.size(); ++p) {
        const auto ax = axes_of_flat(grid, p);
        double dot = 0.0, r2 = 0.0;
        for (int i = 0; i < grid.d; ++i) {
            const double fr = freq_of_index(ax[static_cast<std::size_t>(i)], grid.N);
            dot += static_cast<double>(lj[static_cast<std::size_t>(i)]) * fr;
            r2 += fr * fr;
        }
        const double amp = phi0_profile(std::ldexp(std::sqrt(r2), -(k + 1)));
        w[p] = amp == 0.0 ? cd{0.0, 0.0}
                          : std::polar(amp, 2.0 * std::numbers::pi * dot * box_scale);
    }
    return w;
}

std::vector<SampledFunction> frequency_split(const SampledFunction& c, int k) {
    const Grid& g = c.grid;
    if (k < 0 || k > g.J) throw std::invalid_argument("frequency_split: k outside [0,J]");
    const int u_max = g.J - k;
    std::vector<SampledFunction> parts;
    parts.reserve(static_cast<std::size_t>(u_max) + 1);
    if (u_max == 0) {
        parts.push_back(c);
        return parts;
    }
    parts.push_back(apply_mask(c, low_pass_mask(g, k)));
    for (int u = 1; u < u_max; ++u) {
        std::vector<double> band(g.point_count());
        for (std::size_t p = 0; p < band.size(); ++p)
            band[p] = phik_profile(k + u, freq_abs(g, p));
        parts.push_back(apply_mask(c, band));
    }
    // top slice takes everything above level J-1, Nyquist corners included
    std::vector<double> top(g.point_count());
    const std::vector<double> lp = low_pass_mask(g, g.J - 1);
    for (std::size_t p = 0; p < top.size(); ++p) top[p] = 1.0 - lp[p];
    parts.push_back(apply_mask(c, top));
    return parts;
}

SampledFunction apply_decomposed(const PseudoSymbol& a, std::span<const SampledFunction> fs,
                                 int L, const Partition& part) {
    check_pseudo_budget(a.n, a.grid);
    if (static_cast<int>(fs.size()) != a.n)
        throw std::invalid_argument("apply_decomposed: argument count mismatch");
    if (part.mode != PartitionMode::inhomogeneous)
        throw std::invalid_argument("apply_decomposed: needs the inhomogeneous partition");
    const Grid& g = a.grid;
    const int n = a.n, d = g.d;
    std::vector<cd> out(g.point_count(), cd{0.0, 0.0});
    for (int k = 0; k <= g.J; ++k) {
        // tiny boxes at small k close over their whole lattice
        const int L_k = std::min(L, 1 << (k + 1));
        const CoefficientTable table = fourier_coeffs(a, k, L_k);
        for (std::size_t li = 0; li < table.l_list.size(); ++li) {
            const std::vector<int>& lv = table.l_list[li];
            // per-slot windowed arguments
            std::vector<cd> prod(g.point_count(), cd{1.0, 0.0});
            for (int j = 0; j < n; ++j) {
                const std::span<const int> lj(lv.data() + j * d, static_cast<std::size_t>(d));
                const std::vector<cd> w = j == 0 ? slot1_window(g, k, lj) : slotj_window(g, k, lj);
                const SampledFunction piece = apply_mask(fs[static_cast<std::size_t>(j)], w);
                for (std::size_t p = 0; p < prod.size(); ++p) prod[p] *= piece.values[p];
            }
            const SampledFunction cf =
                SampledFunction::from_values(g, std::vector<cd>(table.c[li]));
            const std::vector<SampledFunction> pieces = frequency_split(cf, k);
            for (const SampledFunction& cu : pieces)
                for (std::size_t p = 0; p < out.size(); ++p) out[p] += cu.values[p] * prod[p];
        }
    }
    return SampledFunction::from_values(g, std::move(out));
}

double decomposition_error(const PseudoSymbol& a, int L) {
    check_pseudo_budget(a.n, a.grid);
    const Grid& g = a.grid;
    const int n = a.n, d = g.d;
    const int rank = n * d;
    double err2 = 0.0, ref2 = 0.0;
    for (int k = 0; k <= g.J; ++k) {
        const std::size_t M = static_cast<std::size_t>(1) << (k + 2);
        const int keep = std::min(L, 1 << (k + 1));
        std::size_t box_total = 1;
        for (int i = 0; i < rank; ++i) box_total *= M;
        const std::size_t nx = g.point_count();
        std::vector<double> err_parts(nx, 0.0), ref_parts(nx, 0.0);
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t xf = 0; xf < static_cast<std::ptrdiff_t>(nx); ++xf) {
            const auto xa = axes_of_flat(g, static_cast<std::size_t>(xf));
            double xc[2];
            for (int i = 0; i < d; ++i)
                xc[i] = static_cast<double>(xa[static_cast<std::size_t>(i)]) / g.N;
            std::vector<cd> B(box_total);
            double xic[6];
            for (std::size_t flat = 0; flat < box_total; ++flat) {
                std::size_t rem = flat;
                for (int v = rank - 1; v >= 0; --v) {
                    const auto iv = static_cast<std::ptrdiff_t>(rem % M) -
                                    static_cast<std::ptrdiff_t>(M / 2);
                    rem /= M;
                    xic[v] = static_cast<double>(iv);
                }
                B[flat] = slice_value(a, k, std::span<const double>(xc, static_cast<std::size_t>(d)),
                                      std::span<const double>(xic, static_cast<std::size_t>(rank)));
            }
            std::vector<cd> S = B;
            fft_rank(S.data(), rank, M, -1);
            // drop coefficients outside the truncation window
            for (std::size_t flat = 0; flat < box_total; ++flat) {
                std::size_t rem = flat;
                bool inside = true;
                for (int v = rank - 1; v >= 0; --v) {
                    const int lv = freq_of_index(static_cast<int>(rem % M), static_cast<int>(M));
                    rem /= M;
                    if (lv > keep || lv < -keep) inside = false;
                }
                if (!inside) S[flat] = cd{0.0, 0.0};
            }
            fft_rank(S.data(), rank, M, +1);
            const double inv_total = 1.0 / static_cast<double>(box_total);
            double e2 = 0.0, r2 = 0.0;
            for (std::size_t flat = 0; flat < box_total; ++flat) {
                std::size_t rem = flat;
                double w = 1.0;
                bool on_grid = true;
                for (int v = rank - 1; v >= 0 && w != 0.0; --v) {
                    const auto iv = static_cast<std::ptrdiff_t>(rem % M) -
                                    static_cast<std::ptrdiff_t>(M / 2);
                    rem /= M;
                    if (iv < -g.N / 2 || iv >= g.N / 2) {
                        on_grid = false;
                        break;
                    }
                    const double r = std::abs(static_cast<double>(iv));
                    // per-axis windows collapse to the slot profiles at d=1;
                    // at d=2 the slot radius needs both axes, handled below
                    if (d == 1) {
                        w *= v == 0 ? tilde_band_profile(k, r)
                                    : phi0_profile(std::ldexp(r, -(k + 1)));
                    }
                }
                if (!on_grid || w == 0.0) continue;
                if (d == 2) {
                    // recompute per-slot radii for the window amplitudes
                    rem = flat;
                    double radii2[3] = {0.0, 0.0, 0.0};
                    for (int v = rank - 1; v >= 0; --v) {
                        const auto iv = static_cast<std::ptrdiff_t>(rem % M) -
                                        static_cast<std::ptrdiff_t>(M / 2);
                        rem /= M;
                        radii2[v / d] += static_cast<double>(iv) * static_cast<double>(iv);
                    }
                    w = tilde_band_profile(k, std::sqrt(radii2[0]));
                    for (int j = 1; j < n; ++j)
                        w *= phi0_profile(std::ldexp(std::sqrt(radii2[j]), -(k + 1)));
                    if (w == 0.0) continue;
                }
                const cd series = S[flat] * inv_total;
                e2 += std::norm((series - B[flat]) * w);
                r2 += std::norm(B[flat] * w);
            }
            err_parts[static_cast<std::size_t>(xf)] = e2;
            ref_parts[static_cast<std::size_t>(xf)] = r2;
        }
        err2 += pairwise_sum(err_parts);
        ref2 += pairwise_sum(ref_parts);
    }
    return ref2 > 0.0 ? std::sqrt(err2 / ref2) : 0.0;
}

RatioTable kato_ponce_probe(const Grid& grid, const KatoPonceConfig& cfg) {
    const auto inv = [](double p) { return std::isinf(p) ? 0.0 : 1.0 / p; };
    if (std::abs(inv(cfg.p) - inv(cfg.p1) - inv(cfg.p2)) > 1e-9 ||
        std::abs(inv(cfg.p) - inv(cfg.p1t) - inv(cfg.p2t)) > 1e-9)
        throw std::invalid_argument("kato_ponce_probe: exponent relation violated");
    if (!(cfg.s > tau_exponent(cfg.p, grid.d)))
        throw std::invalid_argument("kato_ponce_probe: s must exceed the critical exponent");
    const double band = cfg.band > 0.0 ? cfg.band : grid.N / 4.0 - 1.0;

    const auto y_norm = [&](const SampledFunction& f, double p) {
        return std::isinf(p) ? bmo_local_norm(f) : hardy_norm(f, p, false);
    };
    const auto h_norm = [&](const SampledFunction& f, double p) { return hardy_norm(f, p, false); };

    RatioTable table;
    table.rows.resize(static_cast<std::size_t>(cfg.trials));
#pragma omp parallel for schedule(dynamic)
    for (int trial = 0; trial < cfg.trials; ++trial) {
        const SampledFunction f =
            random_band_limited(cfg.seed ^ static_cast<std::uint64_t>(trial), band, grid, true);
        const SampledFunction gfun = random_band_limited(
            cfg.seed ^ static_cast<std::uint64_t>(trial) ^ 0x9e37u, band, grid, true);
        std::vector<cd> prod(grid.point_count());
        for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = f.values[i] * gfun.values[i];
        const SampledFunction fg = SampledFunction::from_values(grid, std::move(prod));
        const double lhs = y_norm(fractional_laplacian(fg, cfg.s, LaplacianKind::inhomogeneous_J), cfg.p);
        const double rhs =
            y_norm(fractional_laplacian(f, cfg.s, LaplacianKind::inhomogeneous_J), cfg.p1) *
                h_norm(gfun, cfg.p2) +
            h_norm(f, cfg.p1t) *
                y_norm(fractional_laplacian(gfun, cfg.s, LaplacianKind::inhomogeneous_J), cfg.p2t);
        RatioRow row;
        row.trial = trial;
        row.lhs = lhs;
        row.rhs = rhs;
        row.ratio = rhs > 1e-300 ? lhs / rhs : 0.0;
        table.rows[static_cast<std::size_t>(trial)] = row;
    }
    std::vector<double> ratios;
    for (const RatioRow& r : table.rows) ratios.push_back(r.ratio);
    std::sort(ratios.begin(), ratios.end());
    table.max_ratio = ratios.empty() ? 0.0 : ratios.back();
    table.median_ratio = ratios.empty() ? 0.0 : ratios[ratios.size() / 2];
    return table;
}

RatioTable pseudo_bound_probe(const PseudoSymbol& a, const Partition& part,
                              const PseudoBoundConfig& cfg) {
    const int n = a.n;
    if (static_cast<int>(cfg.p_ij.size()) != n)
        throw std::invalid_argument("pseudo_bound_probe: p_ij needs n rows");
    const auto inv = [](double p) { return std::isinf(p) ? 0.0 : 1.0 / p; };
    for (const auto& row : cfg.p_ij) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("pseudo_bound_probe: p_ij needs n columns");
        double sum = 0.0;
        for (double p : row) sum += inv(p);
        if (std::abs(sum - inv(cfg.p)) > 1e-9)
            throw std::invalid_argument("pseudo_bound_probe: row violates the exponent relation");
    }
    if (!(cfg.s > tau_exponent(cfg.p, cfg.q, a.grid.d)))
        throw std::invalid_argument("pseudo_bound_probe: s must exceed the critical exponent");
    const Grid& g = a.grid;
    const double band = cfg.band > 0.0 ? cfg.band : g.N / (2.0 * n) - 1.0;
    const SeminormResult sn = seminorm(a, cfg.N_order);

    RatioTable table;
    table.rows.resize(static_cast<std::size_t>(cfg.trials));
#pragma omp parallel for schedule(dynamic)
    for (int trial = 0; trial < cfg.trials; ++trial) {
        std::vector<SampledFunction> fs;
        for (int j = 0; j < n; ++j)
            fs.push_back(random_band_limited(
                cfg.seed ^ static_cast<std::uint64_t>(trial) ^ (0x100u * static_cast<std::uint64_t>(j + 1)),
                band, g, true));
        const SampledFunction Ta = apply_pseudo(a, fs);
        const double lhs = triebel_norm(Ta, part, cfg.p, cfg.q, cfg.s);
        std::vector<double> terms(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            double prod = 1.0;
            for (int j = 0; j < n; ++j) {
                const double pij = cfg.p_ij[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                const SampledFunction& fj = fs[static_cast<std::size_t>(j)];
                prod *= i == j ? triebel_norm(fj, part, pij, cfg.q, cfg.s + a.order)
                               : hardy_norm(fj, pij, false);
            }
            terms[static_cast<std::size_t>(i)] = prod;
        }
        const double rhs = sn.value * pairwise_sum(terms);
        RatioRow row;
        row.trial = trial;
        row.lhs = lhs;
        row.rhs = rhs;
        row.ratio = rhs > 1e-300 ? lhs / rhs : 0.0;
        table.rows[static_cast<std::size_t>(trial)] = row;
    }
    std::vector<double> ratios;
    for (const RatioRow& r : table.rows) ratios.push_back(r.ratio);
    std::sort(ratios.begin(), ratios.end());
    table.max_ratio = ratios.empty() ? 0.0 : ratios.back();
    table.median_ratio = ratios.empty() ? 0.0 : ratios[ratios.size() / 2];
    return table;
}

PseudoSymbol make_catalog_pseudo(const std::string& name, int n, const Grid& grid, double order) {
    check_pseudo_budget(n, grid);
    PseudoSymbol a;
    a.n = n;
    a.grid = grid;
    a.order = order;
    a.name = name;
    const int d = grid.d;
    if (name == "identity") {
        a.order = 0.0;
        a.eval = [](std::span<const double>, std::span<const double>) { return cd{1.0, 0.0}; };
        return a;
    }
    if (name == "bspatial") {
        a.order = 0.0;
        a.eval = [](std::span<const double> x, std::span<const double>) {
            return cd{1.0 + 0.5 * std::cos(2.0 * std::numbers::pi * x[0]), 0.0};
        };
        return a;
    }
    if (name == "order") {
        a.eval = [order, d](std::span<const double>, std::span<const double> xi) {
            double sum = 0.0;
            const int n_slots = static_cast<int>(xi.size()) / d;
            for (int j = 0; j < n_slots; ++j) {
                double r2 = 0.0;
                for (int i = 0; i < d; ++i) {
                    const double v = xi[static_cast<std::size_t>(j * d + i)];
                    r2 += v * v;
                }
                sum += std::sqrt(r2);
            }
            return cd{std::pow(1.0 + sum * sum, order / 2.0), 0.0};
        };
        return a;
    }
    if (name == "osc") {
        a.eval = [order, d](std::span<const double> x, std::span<const double> xi) {
            double sum = 0.0;
            const int n_slots = static_cast<int>(xi.size()) / d;
            for (int j = 0; j < n_slots; ++j) {
                double r2 = 0.0;
                for (int i = 0; i < d; ++i) {
                    const double v = xi[static_cast<std::size_t>(j * d + i)];
                    r2 += v * v;
                }
                sum += r2;
            }
            const double angular = sum / (1.0 + sum);
            const double spatial = 1.0 + 0.5 * std::cos(2.0 * std::numbers::pi * x[0]) * angular;
            return cd{std::pow(1.0 + sum, order / 2.0) * spatial, 0.0};
        };
        return a;
    }
    throw std::invalid_argument("unknown catalog pseudo symbol: " + name);
}

std::vector<std::string> pseudo_catalog() { return {"identity", "bspatial", "order", "osc"}; }

}  // namespace lpt
