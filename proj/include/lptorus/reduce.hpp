#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace lpt {

// Pairwise-recursive summation with a split tree that depends only on the
// element count, so the result is identical no matter how the producing loop
// was scheduled across threads.
template <class T>
T pairwise_sum(std::span<const T> v) {
    const std::size_t n = v.size();
    if (n == 0) return T{};
    if (n <= 8) {
        T acc = v[0];
        for (std::size_t i = 1; i < n; ++i) acc += v[i];
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(std::span<const double>(v));
}

inline std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v) {
    return pairwise_sum(std::span<const std::complex<double>>(v));
}

}  // namespace lpt
