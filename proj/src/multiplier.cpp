#include "lptorus/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lptorus/reduce.hpp"
#include "lptorus/spaces.hpp"

namespace lpt {

std::size_t product_size(int n, const Grid& grid) {
    std::size_t s = 1;
    for (int i = 0; i < n; ++i) s *= grid.point_count();
    return s;
}

void check_symbol_budget(int n, const Grid& grid) {
    if (n < 1 || n > 3) throw std::invalid_argument("symbol: n must be in {1,2,3}");
    if (n * grid.d > 4)
        throw std::invalid_argument("symbol: n*d exceeds the direct-algorithm budget");
    if (product_size(n, grid) > (static_cast<std::size_t>(1) << 26))
        throw std::invalid_argument("symbol: product grid too large");
}

cd SymbolGrid::at(std::span<const std::size_t> slots) const {
    return values[product_flat(*this, slots)];
}

std::size_t product_flat(const SymbolGrid& m, std::span<const std::size_t> slots) {
    const std::size_t P = m.slot_points();
    std::size_t flat = 0;
    for (int j = 0; j < m.n; ++j) flat = flat * P + slots[static_cast<std::size_t>(j)];
    return flat;
}

SymbolGrid SymbolGrid::constant(int n, const Grid& grid, cd c) {
    check_symbol_budget(n, grid);
    SymbolGrid m;
    m.n = n;
    m.grid = grid;
    m.values.assign(product_size(n, grid), c);
    return m;
}

SymbolGrid MaskedSymbol::to_symbol() const {
    SymbolGrid out = *base;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= mask[i];
    return out;
}

double theta_profile(double abs_xi) {
    return transition(abs_xi / 4.0) * (1.0 - transition(2.0 * abs_xi));
}

double theta_wide_profile(int n, double abs_xi) {
    const double rt = std::sqrt(static_cast<double>(n));
    return transition(abs_xi / (4.0 * rt)) * (1.0 - transition(4.0 * rt * abs_xi));
}

namespace {

// Euclidean norm of the full product-frequency vector at a product flat index.
double product_freq_abs(int n, const Grid& g, std::size_t flat) {
    const std::size_t P = g.point_count();
    double s = 0.0;
    for (int j = n - 1; j >= 0; --j) {
        const std::size_t slot = flat % P;
        flat /= P;
        const auto ax = axes_of_flat(g, slot);
        for (int a = 0; a < g.d; ++a) {
            const double f = freq_of_index(ax[static_cast<std::size_t>(a)], g.N);
            s += f * f;
        }
    }
    return std::sqrt(s);
}

void decode_slots(int n, std::size_t P, std::size_t flat, std::size_t* slots) {
    for (int j = n - 1; j >= 0; --j) {
        slots[j] = flat % P;
        flat /= P;
    }
}

}  // namespace

CutoffTheta build_cutoff(int n, const Grid& grid) {
    check_symbol_budget(n, grid);
    CutoffTheta c;
    c.n = n;
    c.grid = grid;
    const std::size_t total = product_size(n, grid);
    c.theta.resize(total);
    c.theta_wide.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
        const double r = product_freq_abs(n, grid, i);
        c.theta[i] = theta_profile(r);
        c.theta_wide[i] = theta_wide_profile(n, r);
    }
    return c;
}

namespace {

void check_inputs(const SymbolGrid& m, std::span<const SampledFunction> fs) {
    if (static_cast<int>(fs.size()) != m.n)
        throw std::invalid_argument("apply_multiplier: argument count mismatch");
    for (const SampledFunction& f : fs)
        if (!(f.grid == m.grid)) throw std::invalid_argument("apply_multiplier: grid mismatch");
}

// out_spec[eta] = sum over the first n-1 slots, the last slot solving the
// frequency budget eta = sum xi_j modulo N per axis. Parallel over eta.
template <class Value>
SampledFunction apply_gather(const Grid& g, int n, std::span<const SampledFunction> fs,
                             Value&& symbol_value) {
    const std::size_t P = g.point_count();
    const int N = g.N;
    std::size_t inner = 1;
    for (int j = 0; j + 1 < n; ++j) inner *= P;
    std::vector<cd> out_spec(P, cd{0.0, 0.0});
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t eta = 0; eta < static_cast<std::ptrdiff_t>(P); ++eta) {
        const auto eta_ax = axes_of_flat(g, static_cast<std::size_t>(eta));
        std::size_t slots[4] = {0, 0, 0, 0};
        cd acc{0.0, 0.0};
        for (std::size_t q = 0; q < inner; ++q) {
            decode_slots(n - 1, P, q, slots);
            cd prod{1.0, 0.0};
            int rem0 = eta_ax[0], rem1 = eta_ax[1];
            for (int j = 0; j + 1 < n; ++j) {
                const auto ax = axes_of_flat(g, slots[j]);
                prod *= fs[static_cast<std::size_t>(j)].spectrum[slots[j]];
                rem0 -= ax[0];
                rem1 -= ax[1];
            }
            const int l0 = ((rem0 % N) + N) % N;
            const int l1 = g.d == 2 ? ((rem1 % N) + N) % N : 0;
            const std::size_t last = flat_of_axes(g, l0, l1);
            slots[n - 1] = last;
            prod *= fs[static_cast<std::size_t>(n - 1)].spectrum[last];
            std::size_t flat = 0;
            for (int j = 0; j < n; ++j) flat = flat * P + slots[j];
            acc += symbol_value(flat) * prod;
        }
        out_spec[static_cast<std::size_t>(eta)] = acc;
    }
    return SampledFunction::from_spectrum(g, std::move(out_spec));
}

}  // namespace

SampledFunction apply_multiplier(const SymbolGrid& m, std::span<const SampledFunction> fs) {
    check_inputs(m, fs);
    return apply_gather(m.grid, m.n, fs, [&](std::size_t flat) { return m.values[flat]; });
}

SampledFunction apply_multiplier(const MaskedSymbol& m, std::span<const SampledFunction> fs) {
    check_inputs(*m.base, fs);
    return apply_gather(m.base->grid, m.base->n, fs,
                        [&](std::size_t flat) { return m.base->values[flat] * m.mask[flat]; });
}

SymbolGrid SeparableSymbol::materialize() const {
    SymbolGrid m = SymbolGrid::constant(n, grid, cd{0.0, 0.0});
    const std::size_t P = grid.point_count();
    for (const auto& term : terms) {
        std::size_t slots[4];
        for (std::size_t flat = 0; flat < m.values.size(); ++flat) {
            decode_slots(n, P, flat, slots);
            cd prod{1.0, 0.0};
            for (int j = 0; j < n; ++j) prod *= term[static_cast<std::size_t>(j)][slots[j]];
            m.values[flat] += prod;
        }
    }
    return m;
}

SampledFunction apply_separable(const SeparableSymbol& m, std::span<const SampledFunction> fs) {
    if (static_cast<int>(fs.size()) != m.n)
        throw std::invalid_argument("apply_separable: argument count mismatch");
    const Grid& g = m.grid;
    std::vector<cd> out(g.point_count(), cd{0.0, 0.0});
    for (const auto& term : m.terms) {
        std::vector<cd> prod(g.point_count(), cd{1.0, 0.0});
        for (int j = 0; j < m.n; ++j) {
            const SampledFunction piece = apply_mask(fs[static_cast<std::size_t>(j)],
                                                     term[static_cast<std::size_t>(j)]);
            for (std::size_t i = 0; i < prod.size(); ++i) prod[i] *= piece.values[i];
        }
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += prod[i];
    }
    return SampledFunction::from_values(g, std::move(out));
}

SymbolNorm symbol_sobolev_norm(const SymbolGrid& m, double s, double r, bool wide_cutoff) {
    if (!(r > 0.0) || std::isinf(r))
        throw std::invalid_argument("symbol_sobolev_norm: r must be finite positive");
    const Grid& g = m.grid;
    const int n = m.n;
    const int rank = n * g.d;
    // box side for the rescaled window; power of two covering the support
    const int lambda_log = n == 1 ? 3 : 4;
    const int box = 1 << lambda_log;
    const int l_max = g.J - lambda_log;
    const int l_min = std::max(2, l_max - 3);
    if (l_max < 2) throw std::invalid_argument("symbol_sobolev_norm: grid too coarse");

    SymbolNorm result;
    const std::size_t P = g.point_count();
    for (int l = l_min; l <= l_max; ++l) {
        const std::size_t M = static_cast<std::size_t>(box) << l;  // samples per axis
        std::size_t total = 1;
        for (int i = 0; i < rank; ++i) total *= M;
        std::vector<cd> A(total);
        const double h = std::ldexp(1.0, -l);  // lattice spacing
        // sample m(2^l zeta) theta(zeta) on the lattice zeta = (i - M/2) h
        std::vector<std::size_t> idx(static_cast<std::size_t>(rank), 0);
        for (std::size_t flat = 0; flat < total; ++flat) {
            std::size_t rem = flat;
            for (int a = rank - 1; a >= 0; --a) {
                idx[static_cast<std::size_t>(a)] = rem % M;
                rem /= M;
            }
            double zeta2 = 0.0;
            bool in_grid = true;
            std::size_t sym_flat = 0;
            for (int j = 0; j < n && in_grid; ++j) {
                int ax0 = 0, ax1 = 0;
                for (int a = 0; a < g.d; ++a) {
                    const auto iv = static_cast<std::ptrdiff_t>(idx[static_cast<std::size_t>(j * g.d + a)]) -
                                    static_cast<std::ptrdiff_t>(M / 2);
                    const double z = static_cast<double>(iv) * h;
                    zeta2 += z * z;
                    const auto jfreq = static_cast<int>(iv);  // = 2^l zeta, integer
                    if (jfreq < -g.N / 2 || jfreq >= g.N / 2) {
                        in_grid = false;
                        break;
                    }
                    if (a == 0) ax0 = index_of_freq(jfreq, g.N);
                    else ax1 = index_of_freq(jfreq, g.N);
                }
                if (in_grid) sym_flat = sym_flat * P + flat_of_axes(g, ax0, ax1);
            }
            if (!in_grid) {
                A[flat] = cd{0.0, 0.0};
                continue;
            }
            const double rr = std::sqrt(zeta2);
            const double cut = wide_cutoff ? theta_wide_profile(n, rr) : theta_profile(rr);
            A[flat] = cut == 0.0 ? cd{0.0, 0.0} : m.values[sym_flat] * cut;
        }
        // Sobolev weight in the box dual variable
        fft_rank(A.data(), rank, M, -1);
        const double inv_total = 1.0 / static_cast<double>(total);
        for (std::size_t flat = 0; flat < total; ++flat) {
            std::size_t rem = flat;
            double v2 = 0.0;
            for (int a = rank - 1; a >= 0; --a) {
                const std::size_t ia = rem % M;
                rem /= M;
                const double w = freq_of_index(static_cast<int>(ia), static_cast<int>(M)) /
                                 static_cast<double>(box);
                v2 += w * w;
            }
            double weight = std::pow(1.0 + v2, s / 2.0);
            if (weight > 1e300 || !std::isfinite(weight)) {
                weight = 1e300;
                result.clamped = true;
            }
            A[flat] *= weight * inv_total;
        }
        fft_rank(A.data(), rank, M, +1);
        std::vector<double> pw(total);
        double cell = 1.0;
        for (int i = 0; i < rank; ++i) cell *= h;
        for (std::size_t i = 0; i < total; ++i) pw[i] = std::pow(std::abs(A[i]), r);
        const double norm = std::pow(pairwise_sum(pw) * cell, 1.0 / r);
        result.per_dilation.emplace_back(l, norm);
        result.value = std::max(result.value, norm);
    }
    return result;
}

namespace {

// Per slot point, the bands k in [1,J] whose mask is nonzero there (at most 2).
struct SlotBands {
    int count = 0;
    int k[2] = {0, 0};
    double value[2] = {0.0, 0.0};
};

std::vector<SlotBands> slot_band_table(const Partition& part) {
    const Grid& g = part.grid;
    std::vector<SlotBands> table(g.point_count());
    for (std::size_t p = 0; p < table.size(); ++p) {
        SlotBands sb;
        for (int k = 1; k <= g.J; ++k) {
            const double v = part.phik(k)[p];
            if (v != 0.0) {
                if (sb.count < 2) {
                    sb.k[sb.count] = k;
                    sb.value[sb.count] = v;
                }
                ++sb.count;
            }
        }
        if (sb.count > 2) throw std::logic_error("slot_band_table: more than two active bands");
        table[p] = sb;
    }
    return table;
}

}  // namespace

std::vector<MaskedSymbol> decompose_symbol(const SymbolGrid& m, const Partition& part) {
    if (!(part.grid == m.grid)) throw std::invalid_argument("decompose_symbol: grid mismatch");
    const int n = m.n;
    const std::size_t P = m.slot_points();
    const auto bands = slot_band_table(part);
    auto base = std::make_shared<SymbolGrid>(m);
    std::vector<MaskedSymbol> parts(static_cast<std::size_t>(n));
    for (auto& piece : parts) {
        piece.base = base;
        piece.mask.assign(m.total_points(), 0.0);
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t flat = 0; flat < static_cast<std::ptrdiff_t>(m.total_points()); ++flat) {
        std::size_t slots[4];
        decode_slots(n, P, static_cast<std::size_t>(flat), slots);
        const SlotBands* sb[4];
        bool covered = true;
        for (int j = 0; j < n; ++j) {
            sb[j] = &bands[slots[j]];
            if (sb[j]->count == 0) covered = false;
        }
        if (!covered) continue;
        int choice[4] = {0, 0, 0, 0};
        while (true) {
            // classify this band tuple by its first maximal slot
            int kmax = -1, owner = 0;
            double prod = 1.0;
            for (int j = 0; j < n; ++j) {
                const int kj = sb[j]->k[choice[j]];
                prod *= sb[j]->value[choice[j]];
                if (kj > kmax) {
                    kmax = kj;
                    owner = j;
                }
            }
            parts[static_cast<std::size_t>(owner)].mask[static_cast<std::size_t>(flat)] += prod;
            int j = n - 1;
            for (; j >= 0; --j) {
                if (choice[j] + 1 < sb[j]->count) {
                    ++choice[j];
                    break;
                }
                choice[j] = 0;
            }
            if (j < 0) break;
        }
    }
    return parts;
}

LowHighSplit split_low_high(const SymbolGrid& m, const Partition& part) {
    if (m.n < 2) throw std::invalid_argument("split_low_high: needs n >= 2");
    if (!(part.grid == m.grid)) throw std::invalid_argument("split_low_high: grid mismatch");
    const int n = m.n;
    const std::size_t P = m.slot_points();
    const int gap = 3 + static_cast<int>(std::floor(std::log2(static_cast<double>(n))));
    const auto bands = slot_band_table(part);
    auto base = std::make_shared<SymbolGrid>(m);
    LowHighSplit out;
    out.low.base = base;
    out.high.base = base;
    out.low.mask.assign(m.total_points(), 0.0);
    out.high.mask.assign(m.total_points(), 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t flat = 0; flat < static_cast<std::ptrdiff_t>(m.total_points()); ++flat) {
        std::size_t slots[4];
        decode_slots(n, P, static_cast<std::size_t>(flat), slots);
        const SlotBands* sb[4];
        bool covered = true;
        for (int j = 0; j < n; ++j) {
            sb[j] = &bands[slots[j]];
            if (sb[j]->count == 0) covered = false;
        }
        if (!covered) continue;
        int choice[4] = {0, 0, 0, 0};
        while (true) {
            int kmax = -1, owner = 0, rest_max = -1;
            double prod = 1.0;
            for (int j = 0; j < n; ++j) {
                const int kj = sb[j]->k[choice[j]];
                prod *= sb[j]->value[choice[j]];
                if (kj > kmax) {
                    kmax = kj;
                    owner = j;
                }
            }
            if (owner == 0) {  // first-slot-dominant piece only
                for (int j = 1; j < n; ++j) rest_max = std::max(rest_max, sb[j]->k[choice[j]]);
                if (rest_max >= kmax - gap)
                    out.low.mask[static_cast<std::size_t>(flat)] += prod;
                else
                    out.high.mask[static_cast<std::size_t>(flat)] += prod;
            }
            int j = n - 1;
            for (; j >= 0; --j) {
                if (choice[j] + 1 < sb[j]->count) {
                    ++choice[j];
                    break;
                }
                choice[j] = 0;
            }
            if (j < 0) break;
        }
    }
    return out;
}

MaskedSymbol high_slice(const SymbolGrid& m, const Partition& part, int k) {
    if (m.n < 2) throw std::invalid_argument("high_slice: needs n >= 2");
    const int n = m.n;
    const Grid& g = m.grid;
    const std::size_t P = m.slot_points();
    const int gap = 4 + static_cast<int>(std::floor(std::log2(static_cast<double>(n))));
    const std::vector<double> low_mask = low_pass_mask(g, k - gap);
    MaskedSymbol out;
    out.base = std::make_shared<SymbolGrid>(m);
    out.mask.assign(m.total_points(), 0.0);
    const double scale = std::ldexp(1.0, k);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t flat = 0; flat < static_cast<std::ptrdiff_t>(m.total_points()); ++flat) {
        std::size_t slots[4];
        decode_slots(n, P, static_cast<std::size_t>(flat), slots);
        double v = part.phik(k)[slots[0]];
        for (int j = 1; j < n; ++j) v *= low_mask[slots[j]];
        if (v == 0.0) continue;
        const double r = product_freq_abs(n, g, static_cast<std::size_t>(flat));
        out.mask[static_cast<std::size_t>(flat)] = v * theta_wide_profile(n, r / scale);
    }
    return out;
}

SymbolGrid transpose_symbol(const SymbolGrid& m, int j) {
    if (j < 1 || j > m.n) throw std::invalid_argument("transpose_symbol: slot out of range");
    const int n = m.n;
    const Grid& g = m.grid;
    const std::size_t P = m.slot_points();
    SymbolGrid out;
    out.n = n;
    out.grid = g;
    out.values.resize(m.total_points());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t flat = 0; flat < static_cast<std::ptrdiff_t>(m.total_points()); ++flat) {
        std::size_t slots[4];
        decode_slots(n, P, static_cast<std::size_t>(flat), slots);
        // slot j-1 <- minus the total frequency, per axis mod N
        int s0 = 0, s1 = 0;
        for (int i = 0; i < n; ++i) {
            const auto ax = axes_of_flat(g, slots[i]);
            s0 += ax[0];
            s1 += ax[1];
        }
        const int neg0 = ((-s0) % g.N + g.N) % g.N;
        const int neg1 = g.d == 2 ? ((-s1) % g.N + g.N) % g.N : 0;
        std::size_t src[4];
        for (int i = 0; i < n; ++i) src[i] = slots[i];
        src[j - 1] = flat_of_axes(g, neg0, neg1);
        std::size_t src_flat = 0;
        for (int i = 0; i < n; ++i) src_flat = src_flat * P + src[i];
        out.values[static_cast<std::size_t>(flat)] = m.values[src_flat];
    }
    return out;
}

ProbeTable boundedness_probe(const SymbolGrid& m, const ProbeConfig& cfg) {
    const int n = m.n;
    if (static_cast<int>(cfg.p_ij.size()) != n)
        throw std::invalid_argument("boundedness_probe: p_ij needs n rows");
    for (const auto& row : cfg.p_ij) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("boundedness_probe: p_ij needs n columns");
        double sum = 0.0;
        for (double p : row) {
            if (!(p > 0.0)) throw std::invalid_argument("boundedness_probe: exponents must be positive");
            sum += std::isinf(p) ? 0.0 : 1.0 / p;
        }
        const double target = std::isinf(cfg.p) ? 0.0 : 1.0 / cfg.p;
        if (std::abs(sum - target) > 1e-9)
            throw std::invalid_argument("boundedness_probe: row violates the exponent relation");
    }
    const Grid& g = m.grid;
    const double band = cfg.band > 0.0 ? cfg.band : g.N / (2.0 * n) - 1.0;
    const SymbolNorm sn = symbol_sobolev_norm(m, cfg.s, cfg.u, false);

    ProbeTable table;
    table.rows.resize(static_cast<std::size_t>(cfg.trials));
#pragma omp parallel for schedule(dynamic)
    for (int trial = 0; trial < cfg.trials; ++trial) {
        std::vector<SampledFunction> fs;
        fs.reserve(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            fs.push_back(random_band_limited(
                cfg.seed ^ static_cast<std::uint64_t>(trial) ^ (0x100u * static_cast<std::uint64_t>(j + 1)),
                band, g, true));
        const SampledFunction Tm = apply_multiplier(m, fs);
        const double lhs = lp_norm(Tm, cfg.p);
        std::vector<double> terms(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            double prod = 1.0;
            for (int j = 0; j < n; ++j) {
                const double pij = cfg.p_ij[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                const SampledFunction& fj = fs[static_cast<std::size_t>(j)];
                double norm;
                if (i == j) {
                    norm = std::isinf(pij) ? bmo_norm(fj) : hardy_norm(fj, pij, true);
                } else if (cfg.norms == ProbeNormSet::lebesgue) {
                    norm = lp_norm(fj, pij);
                } else {
                    norm = hardy_norm(fj, pij, true);
                }
                prod *= norm;
            }
            terms[static_cast<std::size_t>(i)] = prod;
        }
        const double rhs = sn.value * pairwise_sum(terms);
        ProbeRow row;
        row.trial = trial;
        row.lhs = lhs;
        row.symbol_norm = sn.value;
        row.rhs = rhs;
        row.ratio = rhs > 1e-300 ? lhs / rhs : 0.0;
        table.rows[static_cast<std::size_t>(trial)] = row;
    }
    std::vector<double> ratios;
    for (const ProbeRow& r : table.rows) ratios.push_back(r.ratio);
    std::sort(ratios.begin(), ratios.end());
    table.max_ratio = ratios.empty() ? 0.0 : ratios.back();
    table.median_ratio = ratios.empty() ? 0.0 : ratios[ratios.size() / 2];
    return table;
}

SymbolGrid make_catalog_symbol(const std::string& name, int n, const Grid& grid) {
    if (name == "one")
        return SymbolGrid::constant(n, grid, cd{1.0, 0.0});
    if (name == "angular") {
        if (n < 2) throw std::invalid_argument("angular symbol needs n >= 2");
        return SymbolGrid::from_function(n, grid, [&](std::span<const std::array<int, 2>> xi) {
            double dot = 0.0, norm2 = 0.0;
            for (int a = 0; a < grid.d; ++a)
                dot += static_cast<double>(xi[0][static_cast<std::size_t>(a)]) *
                       static_cast<double>(xi[1][static_cast<std::size_t>(a)]);
            for (std::size_t j = 0; j < xi.size(); ++j)
                for (int a = 0; a < grid.d; ++a)
                    norm2 += static_cast<double>(xi[j][static_cast<std::size_t>(a)]) *
                             static_cast<double>(xi[j][static_cast<std::size_t>(a)]);
            return norm2 == 0.0 ? cd{0.0, 0.0} : cd{dot / norm2, 0.0};
        });
    }
    if (name == "smooth01") {
        return SymbolGrid::from_function(n, grid, [&](std::span<const std::array<int, 2>> xi) {
            double norm2 = 0.0;
            for (std::size_t j = 0; j < xi.size(); ++j)
                for (int a = 0; a < grid.d; ++a)
                    norm2 += static_cast<double>(xi[j][static_cast<std::size_t>(a)]) *
                             static_cast<double>(xi[j][static_cast<std::size_t>(a)]);
            return cd{norm2 / (1.0 + norm2), 0.0};
        });
    }
    if (name == "riesz") {
        return SymbolGrid::from_function(n, grid, [&](std::span<const std::array<int, 2>> xi) {
            double first = static_cast<double>(xi[0][0]);
            double norm2 = 0.0;
            for (std::size_t j = 0; j < xi.size(); ++j)
                for (int a = 0; a < grid.d; ++a)
                    norm2 += static_cast<double>(xi[j][static_cast<std::size_t>(a)]) *
                             static_cast<double>(xi[j][static_cast<std::size_t>(a)]);
            return norm2 == 0.0 ? cd{0.0, 0.0} : cd{first / std::sqrt(norm2), 0.0};
        });
    }
    throw std::invalid_argument("unknown catalog symbol: " + name);
}

std::vector<std::string> multiplier_catalog() { return {"one", "angular", "smooth01", "riesz"}; }

namespace ref {

SampledFunction apply_multiplier_direct(const SymbolGrid& m, std::span<const SampledFunction> fs) {
    check_inputs(m, fs);
    const Grid& g = m.grid;
    const int n = m.n;
    const std::size_t P = g.point_count();
    std::vector<cd> out(P, cd{0.0, 0.0});
    for (std::size_t x = 0; x < P; ++x) {
        const auto xa = axes_of_flat(g, x);
        const double x0 = static_cast<double>(xa[0]) / g.N;
        const double x1 = static_cast<double>(xa[1]) / g.N;
        cd acc{0.0, 0.0};
        std::size_t slots[4];
        for (std::size_t flat = 0; flat < m.total_points(); ++flat) {
            decode_slots(n, P, flat, slots);
            cd prod = m.values[flat];
            if (prod == cd{0.0, 0.0}) continue;
            double phase = 0.0;
            for (int j = 0; j < n; ++j) {
                const auto ax = axes_of_flat(g, slots[j]);
                prod *= fs[static_cast<std::size_t>(j)].spectrum[slots[j]];
                phase += x0 * freq_of_index(ax[0], g.N);
                if (g.d == 2) phase += x1 * freq_of_index(ax[1], g.N);
            }
            acc += prod * std::polar(1.0, 2.0 * std::numbers::pi * phase);
        }
        out[x] = acc;
    }
    return SampledFunction::from_values(g, std::move(out));
}

}  // namespace ref

}  // namespace lpt
