#include "lptorus/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "lptorus/littlewood_paley.hpp"
#include "lptorus/maximal.hpp"
#include "lptorus/median.hpp"
#include "lptorus/multiplier.hpp"
#include "lptorus/pseudodiff.hpp"
#include "lptorus/spaces.hpp"

namespace lpt {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvFile {
  public:
    CsvFile(const std::string& path, const std::vector<std::string>& header) : path_(path) {
        fp_ = std::fopen(path.c_str(), "w");
        if (!fp_) throw std::runtime_error("cannot open " + path);
        for (std::size_t i = 0; i < header.size(); ++i)
            std::fprintf(fp_, "%s%s", header[i].c_str(), i + 1 < header.size() ? "," : "\n");
        fields_ = header.size();
    }
    ~CsvFile() {
        if (fp_) std::fclose(fp_);
    }
    void row(const std::vector<std::string>& cells) {
        if (cells.size() != fields_) throw std::logic_error("csv row arity mismatch: " + path_);
        for (std::size_t i = 0; i < cells.size(); ++i)
            std::fprintf(fp_, "%s%s", cells[i].c_str(), i + 1 < cells.size() ? "," : "\n");
    }
    void close() {
        if (fp_) std::fclose(fp_);
        fp_ = nullptr;
    }
    const std::string& path() const { return path_; }

  private:
    std::string path_;
    std::FILE* fp_ = nullptr;
    std::size_t fields_ = 0;
};

struct SuiteContext {
    const ExperimentConfig& cfg;
    std::string dir;
    std::vector<std::string> csv_paths;
    std::vector<std::string> summary;
    bool ok = true;

    std::string file(const std::string& name) { return dir + "/" + name; }
    void note(const std::string& line) { summary.push_back(line); }
    void check(bool pass, const std::string& what) {
        summary.push_back(std::string(pass ? "PASS " : "FAIL ") + what);
        ok = ok && pass;
    }
};

SampledFunction zero_mean(const SampledFunction& f) {
    std::vector<cd> s = f.spectrum;
    s[0] = cd{0.0, 0.0};
    SampledFunction out = SampledFunction::from_spectrum(f.grid, std::move(s));
    out.band = f.band;
    return out;
}

// Random ladder with per-entry band min(2^k, N/2-1) and lognormal amplitudes.
Ladder random_ladder(const Grid& g, std::uint64_t seed, int k_min = 0) {
    Ladder ladder;
    ladder.grid = g;
    ladder.A = 1.0;
    ladder.k_min = k_min;
    for (int k = k_min; k <= g.J; ++k) {
        const double band = std::min(std::ldexp(1.0, k), g.N / 2.0 - 1.0);
        SampledFunction e = random_band_limited(seed ^ (0x51u * static_cast<std::uint64_t>(k + 1)),
                                                band, g, false);
        std::mt19937_64 amp_eng(seed ^ (0x9177u + static_cast<std::uint64_t>(k)));
        const double u = static_cast<double>(amp_eng() >> 11) * 0x1.0p-53;
        const double amp = std::exp(1.2 * (u - 0.5));
        for (cd& z : e.values) z *= amp;
        for (cd& z : e.spectrum) z *= amp;
        ladder.entries.push_back(std::move(e));
    }
    return ladder;
}

// ---------------------------------------------------------------- suites

void suite_partition_exactness(SuiteContext& ctx) {
    const Grid g = make_grid(ctx.cfg.d, ctx.cfg.J);
    const Partition part = build_partition(g, PartitionMode::inhomogeneous);
    CsvFile csv(ctx.file("results.csv"), {"check", "value", "threshold", "pass"});

    double dev = 0.0;
    for (std::size_t i = 0; i < g.point_count(); ++i) {
        if (freq_abs(g, i) > g.N / 4.0) continue;
        double sum = part.phi0_hat[i];
        for (int k = 1; k <= g.J; ++k) sum += part.phik(k)[i];
        dev = std::max(dev, std::abs(sum - 1.0));
    }
    csv.row({"partition_sum_deviation", fmt(dev), fmt(1e-12), dev <= 1e-12 ? "1" : "0"});
    ctx.check(dev <= 1e-12, "partition sum deviation " + fmt(dev));

    double support_leak = 0.0;
    for (int k = 1; k <= g.J; ++k)
        for (std::size_t i = 0; i < g.point_count(); ++i) {
            const double r = freq_abs(g, i);
            if (r < std::ldexp(1.0, k - 2) || r > std::ldexp(1.0, k))
                support_leak = std::max(support_leak, std::abs(part.phik(k)[i]));
        }
    csv.row({"band_support_leak", fmt(support_leak), fmt(0.0), support_leak == 0.0 ? "1" : "0"});
    ctx.check(support_leak == 0.0, "band masks vanish off their annuli");

    double worst_rt = 0.0;
    for (int trial = 0; trial < ctx.cfg.trials; ++trial) {
        const SampledFunction f = random_band_limited(
            ctx.cfg.seed ^ static_cast<std::uint64_t>(trial), g.N / 4.0, g, false);
        const SampledFunction back = reconstruct(decompose(f, part));
        worst_rt = std::max(worst_rt, max_abs_diff(f, back) / (linf_norm(f) + 1e-300));
    }
    csv.row({"roundtrip_rel_error", fmt(worst_rt), fmt(1e-10), worst_rt <= 1e-10 ? "1" : "0"});
    ctx.check(worst_rt <= 1e-10, "decompose/reconstruct round trip " + fmt(worst_rt));
    csv.close();
    ctx.csv_paths.push_back(csv.path());
    ctx.note("max partition deviation " + fmt(dev));
}

void suite_maximal_lemmas(SuiteContext& ctx) {
    const Grid g = make_grid(ctx.cfg.d, ctx.cfg.J);
    const double t = ctx.cfg.t, sigma = ctx.cfg.sigma;
    const double t_hi = 2.0 * t;
    const double eps = (sigma - g.d / t) / 2.0;
    if (!(eps > 0.0)) throw std::invalid_argument("maximal-lemmas: need sigma > d/t");
    CsvFile csv(ctx.file("results.csv"), {"lemma", "k", "trial", "ratio"});
    const int trials = std::max(1, ctx.cfg.trials / 8);
    const int k_lo = 3, k_hi = g.J - 1;
    std::vector<double> worst(5, 0.0);
    std::vector<std::vector<double>> ratio_log(5);
    for (int k = k_lo; k <= k_hi; ++k) {
        for (int trial = 0; trial < trials; ++trial) {
            const SampledFunction f = random_band_limited(
                ctx.cfg.seed ^ static_cast<std::uint64_t>(trial * 131 + k),
                std::min(std::ldexp(1.0, k), g.N / 2.0 - 1.0), g, false);
            const MaximalField m_t = peetre_maximal(f, sigma, k, t);
            const MaximalField m_hi = peetre_maximal(f, sigma, k, t_hi);
            const MaximalField m_inf = peetre_maximal(f, sigma, k, t_infinity);
            const MaximalField hl = variant_maximal(f, t, k, eps);

            const auto max_ratio = [](const std::vector<double>& num,
                                      const std::vector<double>& den) {
                double peak = 0.0;
                for (double v : den) peak = std::max(peak, v);
                const double floor_v = peak * 1e-13;
                double r = 0.0;
                for (std::size_t i = 0; i < num.size(); ++i)
                    if (den[i] > floor_v) r = std::max(r, num[i] / den[i]);
                return r;
            };
            const double r22 = max_ratio(m_hi.values, m_t.values);
            const MaximalField m_comp = peetre_maximal(
                SampledFunction::from_values(g, std::vector<cd>(m_t.values.begin(), m_t.values.end())),
                sigma, k, t_hi);
            const double r23 = max_ratio(m_comp.values, m_t.values);
            const double r24 = max_ratio(m_t.values, hl.values);

            std::vector<double> absf(f.values.size());
            for (std::size_t i = 0; i < absf.size(); ++i) absf[i] = std::abs(f.values[i]);
            double r_infmax = 0.0, r_infmax2 = 0.0;
            for (const DyadicCube& q : cubes_at_level(g, k)) {
                const double den = cube_min(g, m_inf.values, q);
                if (den > 1e-13) r_infmax = std::max(r_infmax, cube_max(g, absf, q) / den);
                const double den2 = cube_min(g, m_t.values, q);
                if (den2 > 1e-13)
                    r_infmax2 = std::max(r_infmax2, cube_max(g, m_t.values, q) / den2);
            }
            const double rows[5] = {r22, r23, r24, r_infmax, r_infmax2};
            const char* names[5] = {"compare_t", "composition", "hl_domination", "cube_infmax",
                                    "cube_infmax2"};
            for (int i = 0; i < 5; ++i) {
                csv.row({names[i], std::to_string(k), std::to_string(trial), fmt(rows[i])});
                worst[static_cast<std::size_t>(i)] =
                    std::max(worst[static_cast<std::size_t>(i)], rows[i]);
                ratio_log[static_cast<std::size_t>(i)].push_back(rows[i]);
            }
        }
    }
    csv.close();
    ctx.csv_paths.push_back(csv.path());
    const char* names[5] = {"compare_t", "composition", "hl_domination", "cube_infmax",
                            "cube_infmax2"};
    for (int i = 0; i < 5; ++i) {
        ctx.note(std::string("max ratio ") + names[i] + " = " + fmt(worst[static_cast<std::size_t>(i)]));
        ctx.check(std::isfinite(worst[static_cast<std::size_t>(i)]) && worst[static_cast<std::size_t>(i)] > 0.0,
                  std::string(names[i]) + " ratios finite");
    }
    // binned ratio distribution per family
    CsvFile hist(ctx.file("plot_ratio_histogram.csv"), {"lemma", "bin_lo", "bin_hi", "count"});
    for (int i = 0; i < 5; ++i) {
        const double top = worst[static_cast<std::size_t>(i)];
        if (!(top > 0.0)) continue;
        constexpr int bins = 12;
        std::vector<int> counts(bins, 0);
        for (double r : ratio_log[static_cast<std::size_t>(i)]) {
            int b = static_cast<int>(std::floor(r / top * bins));
            b = std::min(std::max(b, 0), bins - 1);
            ++counts[static_cast<std::size_t>(b)];
        }
        for (int b = 0; b < bins; ++b)
            hist.row({names[i], fmt(top * b / bins), fmt(top * (b + 1) / bins),
                      std::to_string(counts[static_cast<std::size_t>(b)])});
    }
    hist.close();
    ctx.csv_paths.push_back(hist.path());
}

void suite_equivalence(SuiteContext& ctx, bool bmo_variant) {
    const Grid g = make_grid(ctx.cfg.d, ctx.cfg.J);
    const Partition part = build_partition(g, PartitionMode::homogeneous);
    CsvFile csv(ctx.file("results.csv"),
                {"seed", "gamma", "q", "sigma", "t", "mu", "lhs", "rhs", "ratio"});
    std::vector<int> mus = bmo_variant ? std::vector<int>{0} : std::vector<int>{0, 2, 4};
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    const std::vector<std::string> aux_header =
        bmo_variant ? std::vector<std::string>{"seed", "bmo", "carleson", "ratio"}
                    : std::vector<std::string>{"trial", "mu", "ratio"};
    CsvFile aux_file(ctx.file(bmo_variant ? "bmo_compare.csv" : "plot_ratio_series.csv"),
                     aux_header);
    for (int trial = 0; trial < ctx.cfg.trials; ++trial) {
        const std::uint64_t seed = ctx.cfg.seed ^ static_cast<std::uint64_t>(trial);
        Ladder ladder;
        SampledFunction f = SampledFunction::zero(g);
        if (bmo_variant) {
            f = zero_mean(random_band_limited(seed, g.N / 4.0, g, true));
            ladder = decompose(f, part);
        } else {
            ladder = random_ladder(g, seed);
        }
        for (int mu : mus) {
            const EquivalenceRow row =
                equivalence_report(ladder, ctx.cfg.gamma, ctx.cfg.q, ctx.cfg.sigma, ctx.cfg.t, mu);
            csv.row({std::to_string(seed), fmt(ctx.cfg.gamma), fmt(ctx.cfg.q), fmt(ctx.cfg.sigma),
                     fmt(ctx.cfg.t), std::to_string(mu), fmt(row.lhs), fmt(row.rhs),
                     fmt(row.ratio)});
            if (!std::isnan(row.ratio)) {
                rmin = std::min(rmin, row.ratio);
                rmax = std::max(rmax, row.ratio);
            }
            if (!bmo_variant) aux_file.row({std::to_string(trial), std::to_string(mu), fmt(row.ratio)});
        }
        if (bmo_variant) {
            const double bmo = bmo_norm(f);
            const double car = carleson_sup(ladder, ctx.cfg.q, 0);
            aux_file.row({std::to_string(seed), fmt(bmo), fmt(car),
                          fmt(car > 1e-300 ? bmo / car : 0.0)});
        }
    }
    csv.close();
    aux_file.close();
    ctx.csv_paths.push_back(csv.path());
    ctx.csv_paths.push_back(aux_file.path());
    const double C = std::max(rmax, rmin > 0.0 ? 1.0 / rmin : 0.0);
    ctx.note("ratio interval [" + fmt(rmin) + ", " + fmt(rmax) + "]");
    ctx.note("equivalence constant C = " + fmt(C));
    ctx.check(std::isfinite(C) && rmin > 0.0, "all ratios in a bounded interval");
}

void suite_duality(SuiteContext& ctx) {
    const Grid g = make_grid(ctx.cfg.d, ctx.cfg.J);
    CsvFile csv(ctx.file("results.csv"), {"trial", "kind", "pairing", "bmo", "h1", "ratio"});
    double worst = 0.0;
    for (int trial = 0; trial < ctx.cfg.trials; ++trial) {
        const std::uint64_t seed = ctx.cfg.seed ^ static_cast<std::uint64_t>(trial);
        const SampledFunction f = zero_mean(random_band_limited(seed, g.N / 4.0, g, true));
        const SampledFunction h = zero_mean(random_band_limited(seed ^ 0xabcdu, g.N / 4.0, g, true));
        const double bmo = bmo_norm(f);
        // one independent pair and one aligned pair per draw
        const SampledFunction* gs[2] = {&h, &f};
        const char* kinds[2] = {"independent", "aligned"};
        for (int which = 0; which < 2; ++which) {
            const double pair_abs = std::abs(pairing(f, *gs[which]));
            const double h1 = hardy_norm(*gs[which], 1.0, true);
            const double ratio = bmo * h1 > 1e-300 ? pair_abs / (bmo * h1) : 0.0;
            worst = std::max(worst, ratio);
            csv.row({std::to_string(trial), kinds[which], fmt(pair_abs), fmt(bmo), fmt(h1),
                     fmt(ratio)});
        }
    }
    csv.close();
    ctx.csv_paths.push_back(csv.path());
    ctx.note("max pairing ratio C = " + fmt(worst));
    ctx.check(std::isfinite(worst) && worst > 0.0, "pairing ratios finite, C = " + fmt(worst));
}

void suite_marshall(SuiteContext& ctx) {
    const Grid g = make_grid(ctx.cfg.d, ctx.cfg.J);
    const Partition part = build_partition(g, PartitionMode::homogeneous);
    const int h = 2;
    CsvFile csv(ctx.file("results.csv"), {"trial", "p", "q", "lhs", "rhs", "ratio"});
    double worst = 0.0;
    for (int trial = 0; trial < ctx.cfg.trials; ++trial) {
        const std::uint64_t seed = ctx.cfg.seed ^ static_cast<std::uint64_t>(trial);
        Ladder gl;
        gl.grid = g;
        gl.A = 1.0;
        gl.k_min = 1;
        for (int l = 1; l <= g.J; ++l) {
            SampledFunction e = apply_mask(
                random_band_limited(seed ^ (0x71u * static_cast<std::uint64_t>(l)), g.N / 2.0 - 1.0,
                                    g, false),
                part.phik(l));
            e.band = std::pow(2.0, l);
            gl.entries.push_back(std::move(e));
        }
        Ladder hl;
        hl.grid = g;
        hl.A = 1.0;
        hl.k_min = 1;
        for (int k = 1; k <= g.J; ++k) {
            std::vector<cd> acc(g.point_count(), cd{0.0, 0.0});
            for (int l = std::max(1, k - h); l <= std::min(g.J, k + h); ++l)
                for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += gl.at(l).spectrum[i];
            SampledFunction sum = SampledFunction::from_spectrum(g, std::move(acc));
            hl.entries.push_back(apply_mask(sum, part.phik(k)));
        }
        const double lhs = lp_lq_norm(hl, 2.0, ctx.cfg.q);
        const double rhs = lp_lq_norm(gl, 2.0, ctx.cfg.q);
        const double ratio = rhs > 1e-300 ? lhs / rhs : 0.0;
        worst = std::max(worst, ratio);
        csv.row({std::to_string(trial), fmt(2.0), fmt(ctx.cfg.q), fmt(lhs), fmt(rhs), fmt(ratio)});
    }
    csv.close();
    ctx.csv_paths.push_back(csv.path());
    ctx.note("max band-overlap ratio C(h=2) = " + fmt(worst));
    ctx.check(std::isfinite(worst) && worst > 0.0, "band-overlap ratios finite");
}

void suite_multiplier_bound(SuiteContext& ctx) {
    const Grid g = make_grid(ctx.cfg.d, ctx.cfg.J);
    const int n = ctx.cfg.n;
    const std::string name = ctx.cfg.symbol.empty() ? "smooth01" : ctx.cfg.symbol;
    const SymbolGrid m = make_catalog_symbol(name, n, g);
    CsvFile csv(ctx.file("results.csv"),
                {"seed", "trial", "exponents", "lhs", "symbol_norm", "rhs", "ratio"});
    const double nd = n * g.d;
    const double s = ctx.cfg.s > 0.0 ? std::max(ctx.cfg.s, nd / 2.0 + 0.5) : nd / 2.0 + 0.5;

    const auto exponent_tag = [](double p, const std::vector<std::vector<double>>& pij,
                                 ProbeNormSet norms) {
        std::string tag = "p=" + fmt(p) + ";pij=";
        for (std::size_t i = 0; i < pij.size(); ++i) {
            for (std::size_t j = 0; j < pij[i].size(); ++j)
                tag += (j ? "|" : "") + fmt(pij[i][j]);
            if (i + 1 < pij.size()) tag += "/";
        }
        tag += norms == ProbeNormSet::hardy ? ";hardy" : ";lebesgue";
        return tag;
    };

    const auto run_probe = [&](const std::vector<std::vector<double>>& pij, double p,
                               ProbeNormSet norms) {
        ProbeConfig pc;
        pc.p = p;
        pc.p_ij = pij;
        pc.s = s;
        pc.u = 2.0;
        pc.norms = norms;
        pc.trials = std::max(4, ctx.cfg.trials / 8);
        pc.seed = ctx.cfg.seed;
        const std::string tag = exponent_tag(p, pij, norms);
        const ProbeTable table = boundedness_probe(m, pc);
        for (const ProbeRow& r : table.rows)
            csv.row({std::to_string(pc.seed), std::to_string(r.trial), tag, fmt(r.lhs),
                     fmt(r.symbol_norm), fmt(r.rhs), fmt(r.ratio)});
        ctx.note(tag + " max ratio " + fmt(table.max_ratio));
        ctx.check(std::isfinite(table.max_ratio), tag + " ratios finite");
    };

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> uniform(static_cast<std::size_t>(n),
                                             std::vector<double>(static_cast<std::size_t>(n),
                                                                 2.0 * n));
    run_probe(uniform, 2.0, ProbeNormSet::hardy);
    std::vector<std::vector<double>> endpoint = uniform;
    endpoint[0][0] = inf;
    for (int j = 1; j < n; ++j) endpoint[0][static_cast<std::size_t>(j)] = 2.0 * (n - 1);
    run_probe(endpoint, 2.0, ProbeNormSet::hardy);
    run_probe(uniform, 2.0, ProbeNormSet::lebesgue);
    csv.close();
    ctx.csv_paths.push_back(csv.path());
}

void suite_multiplier_decomposition(SuiteContext& ctx) {
    const Grid g = make_grid(ctx.cfg.d, ctx.cfg.J);
    const int n = std::max(2, ctx.cfg.n);
    const Partition part = build_partition(g, PartitionMode::homogeneous);
    const std::string name = ctx.cfg.symbol.empty() ? "smooth01" : ctx.cfg.symbol;
    const SymbolGrid m = make_catalog_symbol(name, n, g);
    CsvFile csv(ctx.file("results.csv"), {"check", "value", "threshold", "pass"});

    const auto parts = decompose_symbol(m, part);
    double dev = 0.0;
    for (std::size_t i = 0; i < m.total_points(); ++i) {
        bool covered = true;
        std::size_t rem = i;
        for (int j = n - 1; j >= 0; --j) {
            const std::size_t slot = rem % g.point_count();
            rem /= g.point_count();
            if (freq_abs(g, slot) == 0.0) covered = false;
        }
        if (!covered) continue;
        double sum_mask = 0.0;
        for (const auto& piece : parts) sum_mask += piece.mask[i];
        dev = std::max(dev, std::abs(sum_mask - 1.0));
    }
    csv.row({"ordered_split_mask_sum", fmt(dev), fmt(1e-13), dev <= 1e-13 ? "1" : "0"});
    ctx.check(dev <= 1e-13, "ordered split masks sum to coverage, dev " + fmt(dev));

    const LowHighSplit lh = split_low_high(m, part);
    double dev2 = 0.0;
    for (std::size_t i = 0; i < m.total_points(); ++i)
        dev2 = std::max(dev2, std::abs(lh.low.mask[i] + lh.high.mask[i] - parts[0].mask[i]));
    csv.row({"low_high_mask_sum", fmt(dev2), fmt(1e-13), dev2 <= 1e-13 ? "1" : "0"});
    ctx.check(dev2 <= 1e-13, "low/high masks reassemble the dominant piece, dev " + fmt(dev2));

    const SymbolGrid tr = transpose_symbol(m, 1);
    const SymbolGrid back = transpose_symbol(tr, 1);
    double dev3 = 0.0;
    for (std::size_t i = 0; i < m.total_points(); ++i)
        dev3 = std::max(dev3, std::abs(back.values[i] - m.values[i]));
    csv.row({"transpose_involution", fmt(dev3), fmt(0.0), dev3 == 0.0 ? "1" : "0"});
    ctx.check(dev3 == 0.0, "transpose involution bit-exact");

    // adjoint identity over a few random draws
    double dev4 = 0.0;
    for (int trial = 0; trial < std::max(2, ctx.cfg.trials / 16); ++trial) {
        const std::uint64_t seed = ctx.cfg.seed ^ static_cast<std::uint64_t>(trial);
        std::vector<SampledFunction> fsv;
        for (int j = 0; j < n; ++j)
            fsv.push_back(random_band_limited(seed ^ (0x10u * static_cast<std::uint64_t>(j + 1)),
                                              g.N / 2.0 - 1.0, g, false));
        const SampledFunction hfun = random_band_limited(seed ^ 0xeeu, g.N / 2.0 - 1.0, g, false);
        const cd left = pairing(apply_multiplier(m, fsv), hfun);
        std::vector<SampledFunction> swapped = fsv;
        swapped[0] = hfun;
        const cd right = pairing(apply_multiplier(tr, swapped), fsv[0]);
        dev4 = std::max(dev4, std::abs(left - right) / (std::abs(left) + 1e-300));
    }
    csv.row({"transpose_adjoint_rel", fmt(dev4), fmt(1e-9), dev4 <= 1e-9 ? "1" : "0"});
    ctx.check(dev4 <= 1e-9, "adjoint identity, rel dev " + fmt(dev4));

    // cutoff comparison
    const SymbolNorm plain = symbol_sobolev_norm(m, ctx.cfg.s, 2.0, false);
    const SymbolNorm wide = symbol_sobolev_norm(m, ctx.cfg.s, 2.0, true);
    const double lratio = plain.value > 1e-300 ? wide.value / plain.value : 0.0;
    csv.row({"wide_vs_plain_cutoff", fmt(lratio), fmt(0.0), std::isfinite(lratio) ? "1" : "0"});
    ctx.note("wide/plain cutoff norm ratio " + fmt(lratio));

    // high-slice output support
    const int k = g.J - 3;
    double leak = 1.0;
    if (k >= 3) {
        const MaskedSymbol slice = high_slice(m, part, k);
        std::vector<SampledFunction> fsv;
        for (int j = 0; j < n; ++j)
            fsv.push_back(random_band_limited(ctx.cfg.seed ^ (0x33u * static_cast<std::uint64_t>(j + 7)),
                                              g.N / 2.0 - 1.0, g, false));
        const SampledFunction out = apply_multiplier(slice, fsv);
        double inside = 0.0, outside = 0.0;
        for (std::size_t i = 0; i < out.spectrum.size(); ++i) {
            const double r = freq_abs(g, i);
            const double a = std::abs(out.spectrum[i]);
            if (r < std::ldexp(1.0, k - 3) || r > std::ldexp(1.0, k + 2)) outside = std::max(outside, a);
            else inside = std::max(inside, a);
        }
        leak = inside > 0.0 ? outside / inside : outside;
        csv.row({"high_slice_support_leak", fmt(leak), fmt(1e-12), leak <= 1e-12 ? "1" : "0"});
        ctx.check(leak <= 1e-12, "high-slice output confined to its annulus");
    }
    csv.close();
    ctx.csv_paths.push_back(csv.path());
}

void suite_pseudo_decomposition(SuiteContext& ctx) {
    const Grid g = make_grid(ctx.cfg.d, std::min(ctx.cfg.J, 6));
    const int n = std::min(ctx.cfg.n, 2);
    const Partition part = build_partition(g, PartitionMode::inhomogeneous);
    const std::string name = ctx.cfg.symbol.empty() ? "osc" : ctx.cfg.symbol;
    const PseudoSymbol a = make_catalog_pseudo(name, n, g, 0.0);
    CsvFile csv(ctx.file("results.csv"), {"check", "value", "threshold", "pass"});

    // scale-split reconstruction of the coefficient functions
    const int k_mid = std::max(1, g.J / 2);
    const CoefficientTable table = fourier_coeffs(a, k_mid, 2);
    double split_dev = 0.0;
    for (std::size_t li = 0; li < table.l_list.size(); li += 7) {
        const SampledFunction c = SampledFunction::from_values(g, std::vector<cd>(table.c[li]));
        const auto pieces = frequency_split(c, k_mid);
        std::vector<cd> sum(g.point_count(), cd{0.0, 0.0});
        for (const SampledFunction& piece : pieces)
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += piece.values[i];
        for (std::size_t i = 0; i < sum.size(); ++i)
            split_dev = std::max(split_dev, std::abs(sum[i] - c.values[i]) /
                                                (linf_norm(c) + 1e-300));
    }
    csv.row({"scale_split_reconstruction", fmt(split_dev), fmt(1e-10),
             split_dev <= 1e-10 ? "1" : "0"});
    ctx.check(split_dev <= 1e-10, "scale split reassembles coefficients, dev " + fmt(split_dev));

    // truncation sweep on the symbol-level reassembly error
    std::vector<int> ls = {0, 1, 2, 4};
    std::vector<double> errs;
    CsvFile sweep(ctx.file("plot_truncation.csv"), {"L", "rel_error"});
    for (int L : ls) {
        errs.push_back(decomposition_error(a, L));
        sweep.row({std::to_string(L), fmt(errs.back())});
    }
    sweep.close();
    ctx.csv_paths.push_back(sweep.path());
    bool monotone = true;
    for (std::size_t i = 1; i < errs.size(); ++i)
        if (!(errs[i] < errs[i - 1])) monotone = false;
    csv.row({"truncation_monotone", fmt(errs.back()), fmt(errs.front()), monotone ? "1" : "0"});
    ctx.check(monotone, "reassembly error decreases in L: " + fmt(errs.front()) + " -> " +
                            fmt(errs.back()));

    // operator reassembly closes exactly at the full window
    std::vector<SampledFunction> fsv;
    for (int j = 0; j < n; ++j)
        fsv.push_back(random_band_limited(ctx.cfg.seed ^ (0x5u * static_cast<std::uint64_t>(j + 1)),
                                          g.N / (2.0 * n) - 1.0, g, true));
    const SampledFunction target = apply_pseudo_masked(a, fsv, first_slot_dominant_mask(g));
    const SampledFunction closed = apply_decomposed(a, fsv, 1 << (g.J + 1), part);
    const double closed_dev = max_abs_diff(closed, target) / (linf_norm(target) + 1e-300);
    csv.row({"closed_window_deviation", fmt(closed_dev), fmt(1e-10),
             closed_dev <= 1e-10 ? "1" : "0"});
    ctx.check(closed_dev <= 1e-10, "closed-window reassembly matches the direct path");

    // coefficient decay along an l axis, bracketed past the main lobe
    const CoefficientTable wide_table = fourier_coeffs(a, k_mid, 64, 4);
    CsvFile decay(ctx.file("plot_coeff_decay.csv"), {"l", "max_abs_c"});
    for (int l = 1; l <= 63; ++l) {
        std::vector<int> lv(static_cast<std::size_t>(n * g.d), 0);
        lv[0] = l;
        double peak = 0.0;
        for (const cd& z : wide_table.coeff(lv)) peak = std::max(peak, std::abs(z));
        decay.row({std::to_string(l), fmt(peak)});
    }
    decay.close();
    ctx.csv_paths.push_back(decay.path());
    std::vector<double> xs, ys;
    for (int j = 3; j <= 5; ++j) {
        double bracket_max = 0.0;
        for (int l = 1 << j; l < (2 << j); ++l) {
            std::vector<int> lv(static_cast<std::size_t>(n * g.d), 0);
            lv[0] = l;
            for (const cd& z : wide_table.coeff(lv)) bracket_max = std::max(bracket_max, std::abs(z));
        }
        xs.push_back(std::log(1.0 + 1.5 * (1 << j)));
        ys.push_back(std::log(std::max(bracket_max, 1e-300)));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double nn = static_cast<double>(xs.size());
    const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    for (int N : {2, 3}) {
        const double threshold = -N + 0.5;
        csv.row({"coeff_decay_slope_N" + std::to_string(N), fmt(slope), fmt(threshold),
                 slope <= threshold ? "1" : "0"});
        ctx.check(slope <= threshold,
                  "coefficient decay slope " + fmt(slope) + " <= " + fmt(threshold));
    }
    csv.close();
    ctx.csv_paths.push_back(csv.path());
}

void suite_pseudo_bound(SuiteContext& ctx) {
    const Grid g = make_grid(ctx.cfg.d, ctx.cfg.J);
    const int n = std::min(ctx.cfg.n, 2);
    const Partition part = build_partition(g, PartitionMode::inhomogeneous);
    const std::string name = ctx.cfg.symbol.empty() ? "osc" : ctx.cfg.symbol;
    const PseudoSymbol a = make_catalog_pseudo(name, n, g, 0.0);
    CsvFile csv(ctx.file("results.csv"), {"seed", "trial", "exponents", "lhs", "rhs", "ratio"});
    const double inf = std::numeric_limits<double>::infinity();

    const auto run_cfg = [&](double p, const std::vector<std::vector<double>>& pij) {
        PseudoBoundConfig pc;
        pc.s = ctx.cfg.s;
        pc.q = ctx.cfg.q;
        pc.p = p;
        pc.p_ij = pij;
        pc.N_order = 2;
        pc.trials = std::max(3, ctx.cfg.trials / 16);
        pc.seed = ctx.cfg.seed;
        std::string tag = "s=" + fmt(pc.s) + ";q=" + fmt(pc.q) + ";p=" + fmt(p) + ";pij=";
        for (std::size_t i = 0; i < pij.size(); ++i) {
            for (std::size_t j = 0; j < pij[i].size(); ++j) tag += (j ? "|" : "") + fmt(pij[i][j]);
            if (i + 1 < pij.size()) tag += "/";
        }
        const RatioTable table = pseudo_bound_probe(a, part, pc);
        for (const RatioRow& r : table.rows)
            csv.row({std::to_string(pc.seed), std::to_string(r.trial), tag, fmt(r.lhs),
                     fmt(r.rhs), fmt(r.ratio)});
        ctx.note(tag + " max ratio " + fmt(table.max_ratio));
        ctx.check(std::isfinite(table.max_ratio), tag + " ratios finite");
    };
    std::vector<std::vector<double>> uniform(static_cast<std::size_t>(n),
                                             std::vector<double>(static_cast<std::size_t>(n),
                                                                 2.0 * n));
    run_cfg(2.0, uniform);
    std::vector<std::vector<double>> endpoint(static_cast<std::size_t>(n),
                                              std::vector<double>(static_cast<std::size_t>(n), inf));
    run_cfg(inf, endpoint);
    csv.close();
    ctx.csv_paths.push_back(csv.path());
}

void suite_kato_ponce(SuiteContext& ctx) {
    const Grid g = make_grid(ctx.cfg.d, ctx.cfg.J);
    CsvFile csv(ctx.file("results.csv"), {"seed", "trial", "exponents", "lhs", "rhs", "ratio"});
    const double inf = std::numeric_limits<double>::infinity();
    const auto run_cfg = [&](KatoPonceConfig kc) {
        kc.s = ctx.cfg.s;
        kc.trials = std::max(8, ctx.cfg.trials / 4);
        kc.seed = ctx.cfg.seed;
        const std::string tag = "s=" + fmt(kc.s) + ";p=" + fmt(kc.p) + ";p1=" + fmt(kc.p1) +
                                ";p2=" + fmt(kc.p2) + ";p1~=" + fmt(kc.p1t) +
                                ";p2~=" + fmt(kc.p2t);
        const RatioTable table = kato_ponce_probe(g, kc);
        for (const RatioRow& r : table.rows)
            csv.row({std::to_string(kc.seed), std::to_string(r.trial), tag, fmt(r.lhs),
                     fmt(r.rhs), fmt(r.ratio)});
        ctx.note(tag + " max ratio " + fmt(table.max_ratio));
        ctx.check(std::isfinite(table.max_ratio), tag + " ratios finite");
    };
    KatoPonceConfig balanced;
    balanced.p = 2.0;
    balanced.p1 = 4.0;
    balanced.p2 = 4.0;
    balanced.p1t = 4.0;
    balanced.p2t = 4.0;
    run_cfg(balanced);
    KatoPonceConfig endpoint;
    endpoint.p = inf;
    endpoint.p1 = inf;
    endpoint.p2 = inf;
    endpoint.p1t = inf;
    endpoint.p2t = inf;
    run_cfg(endpoint);
    csv.close();
    ctx.csv_paths.push_back(csv.path());
}

}  // namespace

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config file not found: " + path);
    ExperimentConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line without '=': " + line);
        apply_override(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
    return cfg;
}

void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    const auto as_int = [&]() { return std::stoi(value); };
    const auto as_double = [&]() {
        return value == "inf" ? std::numeric_limits<double>::infinity() : std::stod(value);
    };
    if (key == "suite") cfg.suite = value;
    else if (key == "d") cfg.d = as_int();
    else if (key == "J" || key == "grid-J") cfg.J = as_int();
    else if (key == "gamma") cfg.gamma = as_double();
    else if (key == "q") cfg.q = as_double();
    else if (key == "sigma") cfg.sigma = as_double();
    else if (key == "t") cfg.t = as_double();
    else if (key == "s") cfg.s = as_double();
    else if (key == "mu") cfg.mu = as_int();
    else if (key == "n") cfg.n = as_int();
    else if (key == "trials") cfg.trials = as_int();
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
    else if (key == "symbol") cfg.symbol = value;
    else if (key == "out") cfg.out = value;
    else throw std::invalid_argument("unknown config key: " + key);
}

std::vector<std::string> list_suites() {
    return {"partition-exactness", "maximal-lemmas",     "equivalence",
            "bmo-equivalence",     "duality",            "marshall",
            "multiplier-bound",    "multiplier-decomposition",
            "pseudo-decomposition", "pseudo-bound",      "kato-ponce"};
}

int run(const ExperimentConfig& cfg) {
    const auto suites = list_suites();
    if (std::find(suites.begin(), suites.end(), cfg.suite) == suites.end()) {
        std::fprintf(stderr, "unknown suite '%s'; valid:", cfg.suite.c_str());
        for (const auto& s : suites) std::fprintf(stderr, " %s", s.c_str());
        std::fprintf(stderr, "\n");
        return 2;
    }
    SuiteContext ctx{cfg, cfg.out + "/" + cfg.suite, {}, {}, true};
    std::error_code ec;
    fs::create_directories(ctx.dir, ec);
    if (ec) {
        std::fprintf(stderr, "cannot create output directory %s\n", ctx.dir.c_str());
        return 2;
    }
    try {
        if (cfg.suite == "partition-exactness") suite_partition_exactness(ctx);
        else if (cfg.suite == "maximal-lemmas") suite_maximal_lemmas(ctx);
        else if (cfg.suite == "equivalence") suite_equivalence(ctx, false);
        else if (cfg.suite == "bmo-equivalence") suite_equivalence(ctx, true);
        else if (cfg.suite == "duality") suite_duality(ctx);
        else if (cfg.suite == "marshall") suite_marshall(ctx);
        else if (cfg.suite == "multiplier-bound") suite_multiplier_bound(ctx);
        else if (cfg.suite == "multiplier-decomposition") suite_multiplier_decomposition(ctx);
        else if (cfg.suite == "pseudo-decomposition") suite_pseudo_decomposition(ctx);
        else if (cfg.suite == "pseudo-bound") suite_pseudo_bound(ctx);
        else if (cfg.suite == "kato-ponce") suite_kato_ponce(ctx);
    } catch (const std::invalid_argument& ex) {
        std::fprintf(stderr, "configuration error: %s\n", ex.what());
        return 2;
    }

    for (const std::string& path : ctx.csv_paths) {
        std::string err;
        if (!validate_csv(path, &err)) {
            std::fprintf(stderr, "schema validation failed for %s: %s\n", path.c_str(), err.c_str());
            ctx.ok = false;
        }
    }
    std::ofstream summary(ctx.dir + "/summary.txt");
    summary << "suite " << cfg.suite << "\n";
    summary << "d=" << cfg.d << " J=" << cfg.J << " trials=" << cfg.trials << " seed=" << cfg.seed
            << "\n";
    for (const std::string& line : ctx.summary) summary << line << "\n";
    summary << (ctx.ok ? "RESULT pass" : "RESULT fail") << "\n";
    summary.close();
    return ctx.ok ? 0 : 1;
}

bool validate_csv(const std::string& path, std::string* error) {
    std::ifstream in(path);
    if (!in) {
        if (error) *error = "cannot open";
        return false;
    }
    std::string line;
    if (!std::getline(in, line) || line.empty()) {
        if (error) *error = "missing header";
        return false;
    }
    const auto count_fields = [](const std::string& s) {
        return static_cast<std::size_t>(std::count(s.begin(), s.end(), ',')) + 1;
    };
    const std::size_t arity = count_fields(line);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (count_fields(line) != arity) {
            if (error) *error = "field count mismatch on line " + std::to_string(lineno);
            return false;
        }
    }
    return true;
}

}  // namespace lpt
