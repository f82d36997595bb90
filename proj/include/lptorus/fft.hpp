#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace lpt {

using cd = std::complex<double>;

// In-place radix-2 transform, length must be a power of two.
// sign = -1: forward (e^{-2pi i jk/n}), sign = +1: inverse kernel (no 1/n).
void fft_pow2(cd* a, std::size_t n, int sign);

// d-dimensional transform over a row-major N^d array (same N per axis).
void fft_nd(cd* a, int d, std::size_t n_per_axis, int sign);

// rank-dimensional transform over a row-major M^rank array, any rank >= 1.
void fft_rank(cd* a, int rank, std::size_t m_per_axis, int sign);

// spectrum[k] = (1/N^d) sum_x values[x] e^{-2pi i <x,k>/N}
std::vector<cd> values_to_spectrum(const std::vector<cd>& values, int d, std::size_t n);

// values[x] = sum_k spectrum[k] e^{+2pi i <x,k>/N}
std::vector<cd> spectrum_to_values(const std::vector<cd>& spectrum, int d, std::size_t n);

}  // namespace lpt
