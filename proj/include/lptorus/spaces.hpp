#pragma once

#include <span>
#include <string>
#include <vector>

#include "lptorus/grid.hpp"
#include "lptorus/littlewood_paley.hpp"

namespace lpt {

// L^p (quasi-)norm of a nonnegative field as a Riemann sum; max for p = inf.
double lp_norm_field(const Grid& grid, std::span<const double> field, double p);
double lp_norm(const SampledFunction& f, double p);

// Pointwise l^q over k, then L^p over the torus.
double lp_lq_norm(const Ladder& ladder, double p, double q);

// Entries scaled by 2^{s k}.
Ladder scale_ladder(const Ladder& ladder, double s);

// sup over dyadic P at levels >= mu of the per-cube average of the tail sum
// sum_{k >= level(P)} |f_k|^q, to the power 1/q. Bottom-up aggregation.
double carleson_sup(const Ladder& ladder, double q, int mu);

// Two-term band-sum norm; the p = inf, q < inf branch switches to the
// dyadic-cube supremum form. Homogeneous mode drops the low-pass term.
double triebel_norm(const SampledFunction& f, const Partition& part, double p, double q,
                    double s);

// Oscillation over all dyadic cubes; the local variant adds the global average
// of |f| evaluated on the whole torus.
double bmo_norm(const SampledFunction& f);
double bmo_local_norm(const SampledFunction& f);

// L^p norm of sup_k |Phi_k * f| over k in [0,J]; the homogeneous variant
// projects out the mean first.
double hardy_norm(const SampledFunction& f, double p, bool homogeneous);

enum class LaplacianKind { inhomogeneous_J, homogeneous_D };

// Spectral multiplier (1+|xi|^2)^{s/2} (J) or |xi|^s (D).
SampledFunction fractional_laplacian(const SampledFunction& f, double s, LaplacianKind kind);

// Bilinear pairing sum f g cell_volume (no conjugation).
cd pairing(const SampledFunction& f, const SampledFunction& g);

enum class NormFlavor {
    LplQ,
    TriebelInhom,
    TriebelHomog,
    BMO,
    bmoLocal,
    HardyH,
    HardyLocal,
    CarlesonSup,
};

struct NormRequest {
    NormFlavor flavor = NormFlavor::LplQ;
    double p = 2.0;
    double q = 2.0;
    double s = 0.0;
    int mu = 0;
};

NormFlavor norm_flavor_from_string(const std::string& name);
std::string norm_flavor_name(NormFlavor flavor);

// Config-driven entry point; passes through to the named norm. The unused
// inputs may be null, a missing required input is a configuration error.
double evaluate_norm(const NormRequest& req, const SampledFunction* f, const Ladder* ladder,
                     const Partition* part);

namespace ref {

// Exhaustive loop over every cube and level.
double carleson_sup_brute(const Ladder& ladder, double q, int mu);
double bmo_brute(const SampledFunction& f);

}  // namespace ref

}  // namespace lpt
