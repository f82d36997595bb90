#pragma once

#include <vector>

#include "lptorus/grid.hpp"

namespace lpt {

// Smooth transition profile: 1 on [0,1/2], 0 on [1,inf), monotone between.
double transition(double r);

// Radial mother profile at base scale 1: value 1 for |xi| <= 1/2, 0 for |xi| >= 1.
inline double phi0_profile(double abs_xi) { return transition(abs_xi); }

// Dyadic band mask value phi_hat_k(xi) = Phi0(2^-k xi) - Phi0(2^-k+1 xi),
// supported exactly in {2^{k-2} <= |xi| <= 2^k}.
double phik_profile(int k, double abs_xi);

enum class PartitionMode { homogeneous, inhomogeneous };

// Spectral partition of unity {Phi0} u {phi_k}_{k=1..J} on the frequency grid.
// Phi0 + sum_k phi_k telescopes to 1 for |xi| <= 2^{J-1} exactly.
struct Partition {
    Grid grid;
    PartitionMode mode = PartitionMode::inhomogeneous;
    std::vector<double> phi0_hat;               // frequency-grid samples of Phi0
    std::vector<std::vector<double>> phik_hat;  // [k-1] holds phi_k, k = 1..J

    const std::vector<double>& phik(int k) const { return phik_hat.at(static_cast<std::size_t>(k - 1)); }
    // Mask for ladder slot k: Phi0 at k=0 in inhomogeneous mode, phi_k otherwise.
    const std::vector<double>& slot_mask(int k) const;
};

Partition build_partition(const Grid& grid, PartitionMode mode);

// Scaled low-pass mask Phi_hat_k(xi) = Phi0(2^{-k} xi).
std::vector<double> low_pass_mask(const Grid& grid, int k);

// f_k = (slot_mask_k * f_hat)^v for k in the partition range.
Ladder decompose(const SampledFunction& f, const Partition& part);

// Plain sum of the ladder entries.
SampledFunction reconstruct(const Ladder& ladder);

// Spectral multiply by a real mask.
SampledFunction apply_mask(const SampledFunction& f, const std::vector<double>& mask);
SampledFunction apply_mask(const SampledFunction& f, const std::vector<cd>& mask);

struct CompanionMasks {
    // phi_tilde_k = phi_{k-1} + phi_k + phi_{k+1}: equals 1 on supp(phi_k),
    // supported in {2^{k-3} <= |xi| <= 2^{k+1}}. Index 0 holds the k=0 variant.
    std::vector<std::vector<double>> phi_tilde;
    // phi_star_k: equals 1 on supp(phi_tilde_k), supported in {2^{k-4},2^{k+2}}.
    std::vector<std::vector<double>> phi_star;
    // Phi_k = Phi0(2^{-k} .) for k = 0..J.
    std::vector<std::vector<double>> Phi;
    // True when the widened support would exceed the grid Nyquist radius.
    std::vector<bool> tilde_clipped;
    std::vector<bool> star_clipped;
};

CompanionMasks companion_masks(const Partition& part);

// Mask table export: one row per frequency index, "flat,xi0,xi1,value".
void save_mask_csv(const Grid& grid, const std::vector<double>& mask, const std::string& path);

}  // namespace lpt
