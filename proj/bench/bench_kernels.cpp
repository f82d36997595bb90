// Timing comparison between the brute-force reference kernels and the
// production paths, single-threaded and with the full thread pool.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lptorus/maximal.hpp"
#include "lptorus/median.hpp"
#include "lptorus/multiplier.hpp"
#include "lptorus/spaces.hpp"

using namespace lpt;

namespace {

double time_of(const std::function<void()>& fn, int reps) {
    fn();  // warm up
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() /
           static_cast<double>(reps);
}

void row(const std::string& name, double ref_s, double fast1_s, double fastn_s) {
    std::printf("%-26s %12.6f %12.6f %12.6f %9.1fx %9.1fx\n", name.c_str(), ref_s, fast1_s,
                fastn_s, ref_s / fast1_s, ref_s / fastn_s);
}

}  // namespace

int main(int argc, char** argv) {
    const int J = argc > 1 ? std::atoi(argv[1]) : 6;
    const Grid g = make_grid(1, J);
    const int threads = omp_get_max_threads();
    std::printf("grid d=1 J=%d (N=%d), %d threads\n", J, g.N, threads);
    std::printf("%-26s %12s %12s %12s %9s %9s\n", "kernel", "reference", "fast(1T)", "fast(NT)",
                "speedup1", "speedupN");

    const SampledFunction f = random_band_limited(1, g.N / 2.0 - 1.0, g, false);

    {
        const auto ref_fn = [&] { ref::hl_maximal_brute(f, 1.0); };
        const auto fast_fn = [&] { hl_maximal(f, 1.0); };
        const double tr = time_of(ref_fn, 1);
        omp_set_num_threads(1);
        const double t1 = time_of(fast_fn, 3);
        omp_set_num_threads(threads);
        const double tn = time_of(fast_fn, 3);
        row("window maximal", tr, t1, tn);
    }
    {
        const int k = J - 2;
        const auto ref_fn = [&] { ref::peetre_maximal_direct(f, 2.0, k, 1.0); };
        const auto fast_fn = [&] { peetre_maximal(f, 2.0, k, 1.0); };
        const double tr = time_of(ref_fn, 1);
        omp_set_num_threads(1);
        const double t1 = time_of(fast_fn, 3);
        omp_set_num_threads(threads);
        const double tn = time_of(fast_fn, 3);
        row("weighted local size", tr, t1, tn);
    }
    {
        Ladder ladder;
        ladder.grid = g;
        ladder.A = 1.0;
        ladder.k_min = 0;
        for (int k = 0; k <= g.J; ++k)
            ladder.entries.push_back(random_band_limited(
                2 + static_cast<std::uint64_t>(k), std::min(std::ldexp(1.0, k), g.N / 2.0 - 1.0),
                g, false));
        const auto ref_fn = [&] { ref::carleson_sup_brute(ladder, 2.0, 0); };
        const auto fast_fn = [&] { carleson_sup(ladder, 2.0, 0); };
        const double tr = time_of(ref_fn, 1);
        omp_set_num_threads(1);
        const double t1 = time_of(fast_fn, 3);
        omp_set_num_threads(threads);
        const double tn = time_of(fast_fn, 3);
        row("dyadic-sup aggregation", tr, t1, tn);
    }
    {
        const SymbolGrid m = make_catalog_symbol("smooth01", 2, g);
        const std::vector<SampledFunction> fs = {f, random_band_limited(3, g.N / 2.0 - 1.0, g,
                                                                        false)};
        const auto ref_fn = [&] { ref::apply_multiplier_direct(m, fs); };
        const auto fast_fn = [&] { apply_multiplier(m, fs); };
        const double tr = time_of(ref_fn, 1);
        omp_set_num_threads(1);
        const double t1 = time_of(fast_fn, 3);
        omp_set_num_threads(threads);
        const double tn = time_of(fast_fn, 3);
        row("bilinear application", tr, t1, tn);
    }
    {
        const int k = J - 2;
        const auto ref_fn = [&] { ref::peetre_maximal_direct(f, 2.0, k, t_infinity); };
        const auto fast_fn = [&] { peetre_maximal(f, 2.0, k, t_infinity); };
        const double tr = time_of(ref_fn, 1);
        omp_set_num_threads(1);
        const double t1 = time_of(fast_fn, 1);
        omp_set_num_threads(threads);
        const double tn = time_of(fast_fn, 1);
        row("weighted sup (threads)", tr, t1, tn);
    }
    return 0;
}
