#include "lptorus/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lptorus/dyadic.hpp"
#include "lptorus/reduce.hpp"

namespace lpt {

namespace {

void check_exponent(double p, const char* what) {
    if (!(p > 0.0)) throw std::invalid_argument(std::string(what) + ": exponent must be positive");
}

}  // namespace

double lp_norm_field(const Grid& grid, std::span<const double> field, double p) {
    check_exponent(p, "lp_norm_field");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : field) m = std::max(m, v);
        return m;
    }
    std::vector<double> pw(field.size());
    for (std::size_t i = 0; i < pw.size(); ++i) pw[i] = std::pow(field[i], p);
    return std::pow(pairwise_sum(pw) * grid.cell_volume, 1.0 / p);
}

double lp_norm(const SampledFunction& f, double p) {
    std::vector<double> a(f.values.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(f.values[i]);
    return lp_norm_field(f.grid, a, p);
}

double lp_lq_norm(const Ladder& ladder, double p, double q) {
    check_exponent(p, "lp_lq_norm");
    check_exponent(q, "lp_lq_norm");
    if (ladder.entries.empty()) throw std::invalid_argument("lp_lq_norm: empty ladder");
    const std::size_t n = ladder.grid.point_count();
    std::vector<double> inner(n, 0.0);
    if (std::isinf(q)) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
            double m = 0.0;
            for (const SampledFunction& e : ladder.entries)
                m = std::max(m, std::abs(e.values[static_cast<std::size_t>(i)]));
            inner[static_cast<std::size_t>(i)] = m;
        }
    } else {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
            std::vector<double> terms(ladder.entries.size());
            for (std::size_t k = 0; k < ladder.entries.size(); ++k)
                terms[k] = std::pow(std::abs(ladder.entries[k].values[static_cast<std::size_t>(i)]), q);
            inner[static_cast<std::size_t>(i)] = std::pow(pairwise_sum(terms), 1.0 / q);
        }
    }
    return lp_norm_field(ladder.grid, inner, p);
}

Ladder scale_ladder(const Ladder& ladder, double s) {
    Ladder out = ladder;
    for (int k = out.k_min; k <= out.k_max(); ++k) {
        const double w = std::pow(2.0, s * k);
        SampledFunction& e = out.entries[static_cast<std::size_t>(k - out.k_min)];
        for (cd& z : e.values) z *= w;
        for (cd& z : e.spectrum) z *= w;
    }
    return out;
}

double carleson_sup(const Ladder& ladder, double q, int mu) {
    check_exponent(q, "carleson_sup");
    if (std::isinf(q)) throw std::invalid_argument("carleson_sup: q must be finite");
    if (mu < 0 || mu > ladder.grid.J) throw std::invalid_argument("carleson_sup: mu outside [0,J]");
    const Grid& g = ladder.grid;
    const std::size_t n = g.point_count();
    std::vector<double> tail(n, 0.0);  // sum_{k >= nu} |f_k|^q, built downward in nu
    double best = 0.0;
    for (int nu = g.J; nu >= mu; --nu) {
        if (ladder.contains(nu)) {
            const SampledFunction& e = ladder.at(nu);
            for (std::size_t i = 0; i < n; ++i) tail[i] += std::pow(std::abs(e.values[i]), q);
        }
        const std::vector<double> sums = level_sum_per_cube(g, tail, nu);
        const double scale = g.cell_volume * std::pow(std::ldexp(1.0, nu), g.d);
        for (double s : sums) best = std::max(best, s * scale);
    }
    return std::pow(best, 1.0 / q);
}

double triebel_norm(const SampledFunction& f, const Partition& part, double p, double q,
                    double s) {
    check_exponent(p, "triebel_norm");
    check_exponent(q, "triebel_norm");
    Ladder bands;
    bands.grid = f.grid;
    bands.A = 1.0;
    bands.k_min = 1;
    bands.entries.reserve(static_cast<std::size_t>(f.grid.J));
    for (int k = 1; k <= f.grid.J; ++k) {
        SampledFunction e = apply_mask(f, part.phik(k));
        e.band = std::pow(2.0, k);
        bands.entries.push_back(std::move(e));
    }
    const Ladder weighted = scale_ladder(bands, s);
    const bool carleson_branch = std::isinf(p) && !std::isinf(q);
    if (part.mode == PartitionMode::homogeneous)
        return carleson_branch ? carleson_sup(weighted, q, 0) : lp_lq_norm(weighted, p, q);
    const SampledFunction low = apply_mask(f, part.phi0_hat);
    const double low_term = lp_norm(low, p);
    return low_term +
           (carleson_branch ? carleson_sup(weighted, q, 1) : lp_lq_norm(weighted, p, q));
}

namespace {

// max over cubes of the mean oscillation, levels 0..J
double oscillation_sup(const SampledFunction& f) {
    const Grid& g = f.grid;
    const auto N = static_cast<std::size_t>(g.N);
    const std::span<const cd> values(f.values);
    double best = 0.0;
    for (int nu = 0; nu <= g.J; ++nu) {
        const std::size_t ncubes = cubes_per_level(g, nu);
        const std::size_t w = static_cast<std::size_t>(cube_width(g, nu));
        std::vector<double> osc(ncubes, 0.0);
#pragma omp parallel
        {
            std::vector<double> dev;
            std::vector<cd> row_means;
#pragma omp for schedule(static)
            for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(ncubes); ++r) {
                const DyadicCube q = cube_from_rank(g, nu, static_cast<std::size_t>(r));
                if (g.d == 1) {
                    const std::size_t base = static_cast<std::size_t>(q.offset[0]) * w;
                    const cd mean = pairwise_sum(values.subspan(base, w)) / static_cast<double>(w);
                    dev.resize(w);
                    for (std::size_t i = 0; i < w; ++i) dev[i] = std::abs(values[base + i] - mean);
                    osc[static_cast<std::size_t>(r)] =
                        pairwise_sum(std::span<const double>(dev)) / static_cast<double>(w);
                } else {
                    const std::size_t b0 = static_cast<std::size_t>(q.offset[0]) * w;
                    const std::size_t b1 = static_cast<std::size_t>(q.offset[1]) * w;
                    row_means.resize(w);
                    for (std::size_t i0 = 0; i0 < w; ++i0)
                        row_means[i0] = pairwise_sum(values.subspan((b0 + i0) * N + b1, w));
                    const cd mean = pairwise_sum(std::span<const cd>(row_means)) /
                                    static_cast<double>(w * w);
                    dev.resize(w * w);
                    for (std::size_t i0 = 0; i0 < w; ++i0)
                        for (std::size_t i1 = 0; i1 < w; ++i1)
                            dev[i0 * w + i1] = std::abs(values[(b0 + i0) * N + b1 + i1] - mean);
                    osc[static_cast<std::size_t>(r)] =
                        pairwise_sum(std::span<const double>(dev)) / static_cast<double>(w * w);
                }
            }
        }
        for (double v : osc) best = std::max(best, v);
    }
    return best;
}

}  // namespace

double bmo_norm(const SampledFunction& f) { return oscillation_sup(f); }

double bmo_local_norm(const SampledFunction& f) {
    std::vector<double> a(f.values.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(f.values[i]);
    const double global_avg = pairwise_sum(a) * f.grid.cell_volume;
    return std::max(oscillation_sup(f), global_avg);
}

double hardy_norm(const SampledFunction& f, double p, bool homogeneous) {
    check_exponent(p, "hardy_norm");
    const Grid& g = f.grid;
    SampledFunction base = f;
    if (homogeneous) {
        std::vector<cd> s = f.spectrum;
        s[0] = cd{0.0, 0.0};
        base = SampledFunction::from_spectrum(g, std::move(s));
    }
    std::vector<double> peak(g.point_count(), 0.0);
    for (int k = 0; k <= g.J; ++k) {
        const SampledFunction smoothed = apply_mask(base, low_pass_mask(g, k));
        for (std::size_t i = 0; i < peak.size(); ++i)
            peak[i] = std::max(peak[i], std::abs(smoothed.values[i]));
    }
    return lp_norm_field(g, peak, p);
}

SampledFunction fractional_laplacian(const SampledFunction& f, double s, LaplacianKind kind) {
    const Grid& g = f.grid;
    std::vector<cd> spec = f.spectrum;
    if (kind == LaplacianKind::inhomogeneous_J) {
        for (std::size_t i = 0; i < spec.size(); ++i) {
            const double r = freq_abs(g, i);
            spec[i] *= std::pow(1.0 + r * r, s / 2.0);
        }
    } else {
        if (s < 0.0 && std::abs(f.spectrum[0]) > 1e-13 * (spectrum_l2(f) + 1e-300))
            throw std::domain_error("fractional_laplacian: D^s with s<0 needs zero mean");
        for (std::size_t i = 0; i < spec.size(); ++i) {
            const double r = freq_abs(g, i);
            if (r == 0.0) {
                if (s > 0.0) spec[i] = cd{0.0, 0.0};
                else if (s < 0.0) spec[i] = cd{0.0, 0.0};
                // s == 0 keeps the coefficient
            } else {
                spec[i] *= std::pow(r, s);
            }
        }
    }
    SampledFunction out = SampledFunction::from_spectrum(g, std::move(spec));
    out.band = f.band;
    return out;
}

cd pairing(const SampledFunction& f, const SampledFunction& g) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("pairing: grid mismatch");
    std::vector<cd> prod(f.values.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = f.values[i] * g.values[i];
    return pairwise_sum(prod) * f.grid.cell_volume;
}

NormFlavor norm_flavor_from_string(const std::string& name) {
    if (name == "LplQ") return NormFlavor::LplQ;
    if (name == "TriebelInhom") return NormFlavor::TriebelInhom;
    if (name == "TriebelHomog") return NormFlavor::TriebelHomog;
    if (name == "BMO") return NormFlavor::BMO;
    if (name == "bmoLocal") return NormFlavor::bmoLocal;
    if (name == "HardyH") return NormFlavor::HardyH;
    if (name == "HardyLocal") return NormFlavor::HardyLocal;
    if (name == "CarlesonSup") return NormFlavor::CarlesonSup;
    throw std::invalid_argument("unknown norm flavor: " + name);
}

std::string norm_flavor_name(NormFlavor flavor) {
    switch (flavor) {
        case NormFlavor::LplQ: return "LplQ";
        case NormFlavor::TriebelInhom: return "TriebelInhom";
        case NormFlavor::TriebelHomog: return "TriebelHomog";
        case NormFlavor::BMO: return "BMO";
        case NormFlavor::bmoLocal: return "bmoLocal";
        case NormFlavor::HardyH: return "HardyH";
        case NormFlavor::HardyLocal: return "HardyLocal";
        case NormFlavor::CarlesonSup: return "CarlesonSup";
    }
    return "?";
}

double evaluate_norm(const NormRequest& req, const SampledFunction* f, const Ladder* ladder,
                     const Partition* part) {
    const auto need_f = [&]() -> const SampledFunction& {
        if (!f) throw std::invalid_argument("evaluate_norm: flavor requires a function input");
        return *f;
    };
    const auto need_ladder = [&]() -> const Ladder& {
        if (!ladder) throw std::invalid_argument("evaluate_norm: flavor requires a ladder input");
        return *ladder;
    };
    switch (req.flavor) {
        case NormFlavor::LplQ: return lp_lq_norm(need_ladder(), req.p, req.q);
        case NormFlavor::TriebelInhom:
        case NormFlavor::TriebelHomog: {
            if (!part) throw std::invalid_argument("evaluate_norm: flavor requires a partition");
            const bool want_homog = req.flavor == NormFlavor::TriebelHomog;
            if (want_homog != (part->mode == PartitionMode::homogeneous))
                throw std::invalid_argument("evaluate_norm: partition mode mismatch");
            return triebel_norm(need_f(), *part, req.p, req.q, req.s);
        }
        case NormFlavor::BMO: return bmo_norm(need_f());
        case NormFlavor::bmoLocal: return bmo_local_norm(need_f());
        case NormFlavor::HardyH: return hardy_norm(need_f(), req.p, true);
        case NormFlavor::HardyLocal: return hardy_norm(need_f(), req.p, false);
        case NormFlavor::CarlesonSup: {
            if (std::isinf(req.q))
                throw std::invalid_argument("evaluate_norm: CarlesonSup requires q < inf");
            return carleson_sup(need_ladder(), req.q, req.mu);
        }
    }
    throw std::invalid_argument("evaluate_norm: unhandled flavor");
}

namespace ref {

double carleson_sup_brute(const Ladder& ladder, double q, int mu) {
    const Grid& g = ladder.grid;
    double best = 0.0;
    for (int nu = mu; nu <= g.J; ++nu) {
        for (const DyadicCube& cube : cubes_at_level(g, nu)) {
            const auto pts = cube_points(g, cube);
            double sum = 0.0;
            for (std::size_t p : pts)
                for (int k = std::max(nu, ladder.k_min); k <= ladder.k_max(); ++k)
                    sum += std::pow(std::abs(ladder.at(k).values[p]), q);
            const double avg = sum * g.cell_volume / cube.measure(g.d);
            best = std::max(best, avg);
        }
    }
    return std::pow(best, 1.0 / q);
}

double bmo_brute(const SampledFunction& f) {
    const Grid& g = f.grid;
    double best = 0.0;
    for (int nu = 0; nu <= g.J; ++nu) {
        for (const DyadicCube& cube : cubes_at_level(g, nu)) {
            const auto pts = cube_points(g, cube);
            cd mean{0.0, 0.0};
            for (std::size_t p : pts) mean += f.values[p];
            mean /= static_cast<double>(pts.size());
            double osc = 0.0;
            for (std::size_t p : pts) osc += std::abs(f.values[p] - mean);
            best = std::max(best, osc / static_cast<double>(pts.size()));
        }
    }
    return best;
}

}  // namespace ref

}  // namespace lpt
