#include "lptorus/fft.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace lpt {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Twiddle table w[j] = e^{-2pi i j/n}, j < n/2, evaluated directly per index
// (no recurrence) so the table error stays at one ulp.
const std::vector<cd>& twiddles(std::size_t n) {
    thread_local std::map<std::size_t, std::vector<cd>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<cd> w(n / 2);
    const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t j = 0; j < n / 2; ++j)
        w[j] = std::polar(1.0, step * static_cast<double>(j));
    return cache.emplace(n, std::move(w)).first->second;
}

}  // namespace

void fft_pow2(cd* a, std::size_t n, int sign) {
    if (!is_pow2(n)) throw std::invalid_argument("fft_pow2: length must be a power of two");
    if (n == 1) return;
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const std::vector<cd>& w = twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cd tw = w[k * stride];
                if (sign > 0) tw = std::conj(tw);
                const cd u = a[i + k];
                const cd v = a[i + k + len / 2] * tw;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

void fft_nd(cd* a, int d, std::size_t n, int sign) {
    if (d == 1) {
        fft_pow2(a, n, sign);
        return;
    }
    if (d != 2) throw std::invalid_argument("fft_nd: only d in {1,2} supported");
    // rows
    for (std::size_t r = 0; r < n; ++r) fft_pow2(a + r * n, n, sign);
    // columns
    std::vector<cd> col(n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) col[r] = a[r * n + c];
        fft_pow2(col.data(), n, sign);
        for (std::size_t r = 0; r < n; ++r) a[r * n + c] = col[r];
    }
}

void fft_rank(cd* a, int rank, std::size_t m, int sign) {
    if (rank < 1) throw std::invalid_argument("fft_rank: rank must be >= 1");
    std::size_t total = 1;
    for (int i = 0; i < rank; ++i) total *= m;
    std::vector<cd> line(m);
    for (int axis = 0; axis < rank; ++axis) {
        std::size_t stride = 1;
        for (int i = axis + 1; i < rank; ++i) stride *= m;
        const std::size_t block = stride * m;  // span of one axis sweep
        for (std::size_t base = 0; base < total; base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                if (stride == 1) {
                    fft_pow2(a + base, m, sign);
                    continue;
                }
                for (std::size_t j = 0; j < m; ++j) line[j] = a[base + off + j * stride];
                fft_pow2(line.data(), m, sign);
                for (std::size_t j = 0; j < m; ++j) a[base + off + j * stride] = line[j];
            }
        }
    }
}

std::vector<cd> values_to_spectrum(const std::vector<cd>& values, int d, std::size_t n) {
    std::vector<cd> s = values;
    fft_nd(s.data(), d, n, -1);
    double scale = 1.0;
    for (int i = 0; i < d; ++i) scale /= static_cast<double>(n);
    for (cd& z : s) z *= scale;
    return s;
}

std::vector<cd> spectrum_to_values(const std::vector<cd>& spectrum, int d, std::size_t n) {
    std::vector<cd> v = spectrum;
    fft_nd(v.data(), d, n, +1);
    return v;
}

}  // namespace lpt
