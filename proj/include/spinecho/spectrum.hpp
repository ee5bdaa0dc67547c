#pragma once

#include <vector>

#include "spinecho/params.hpp"

namespace spinecho {

// One (k, -k) momentum pair of the fermionized chain, diagonalized for both
// effective branches. Angles obey cos(theta_i) L_i = eps_i and
// sin(theta_i) L_i = gamma sin(phi), with theta in [0, pi] since sin(phi) >= 0
// for k = 1..M. A mode with L_i == 0 exactly gets theta_i = 0 and is flagged.
struct ModeData {
    int k = 0;
    double phi = 0.0;
    double lambda_g = 0.0;  // single-mode energy of the g branch (field lambda+delta)
    double lambda_e = 0.0;  // e branch (field lambda-delta)
    double theta_g = 0.0;
    double theta_e = 0.0;
    double alpha = 0.0;  // (theta_e - theta_g)/2
    bool degenerate_g = false;
    bool degenerate_e = false;
};

// Momentum tables phi_k = 2 pi k / N for k = 1..M, shared by the kernels.
struct MomentumGrid {
    explicit MomentumGrid(int n_sites);
    int n_sites;
    std::vector<double> cos_phi;
    std::vector<double> sin2_phi;
    int n_modes() const { return static_cast<int>(cos_phi.size()); }
};

// All M = N/2 modes for the given chain and backaction delta.
std::vector<ModeData> mode_table(const ChainParams& chain, double delta);

// f(lambda, gamma, N) = (1/N) sum_k cos(theta_k) over the g branch
// (effective field lambda + delta). Lies in [-1/2, 1/2].
double f_function(const ChainParams& chain, double delta);

// (1/N) sum_k d cos(theta_k)/d lambda = (1/N) sum_k gamma^2 sin^2(phi)/L_g^3.
// Degenerate modes contribute 0 here; the strict error check lives in the
// Berry-phase derivative entry point.
double df_dlambda(const ChainParams& chain, double delta);

// Grid-level evaluators used by sweeps; lam_eff = lambda + delta. These accept
// any M >= 1 (odd N included), normalizing by the grid's n_sites.
double f_mean(const MomentumGrid& grid, double gamma, double lam_eff);
double df_mean(const MomentumGrid& grid, double gamma, double lam_eff);

// True when some mode has L == 0 exactly at this effective field (needs
// gamma sin(phi) = 0 and eps = 0 simultaneously).
bool has_degenerate_mode(const MomentumGrid& grid, double gamma, double lam_eff);

}  // namespace spinecho
