#pragma once

#include <string>
#include <vector>

namespace spinecho {

// Environment chain: anisotropic XY model in a transverse field,
//   H_E = -sum_l [ (1+gamma)/2 sx sx + (1-gamma)/2 sy sy + lambda sz ].
// The chain coupling J is the unit of energy; times are in 1/J.
struct ChainParams {
    double gamma = 1.0;   // in-plane anisotropy, Ising at 1, XX at 0
    double lambda = 1.0;  // transverse field strength
    int n_sites = 100;    // N

    int n_modes() const { return n_sites / 2; }  // M = floor(N/2)

    // Echo/spectrum surfaces require even N so that M = N/2 is exact.
    // Berry-phase sweeps also run at odd sizes; they validate with
    // require_even = false and use M = floor(N/2).
    void validate(bool require_even = true) const;
};

// Central two-level probe, H_C = mu sz/2 + nu sx/2, coupled to the chain by
// (g/N) sz sum_l sz_l.
struct CentralSpinParams {
    double mu = 0.1;
    double nu = 2.0;
    double g = 0.5;
};

// Parameters of the two effective chain Hamiltonians H_g, H_e obtained by
// conditioning on the central-spin eigenstate: the chain sees the field
// lambda + kappa*delta with kappa_g = +1, kappa_e = -1.
struct BranchParams {
    double delta = 0.0;      // g cos(theta)/N, the per-site field backaction
    double big_delta = 0.0;  // sqrt(mu^2+nu^2)/2; global energy shift only,
                             // cancels in |.|^2 and never enters the echo
    static constexpr int kappa_g = +1;
    static constexpr int kappa_e = -1;
};

// cos(theta) of the central spin tilt is taken from atan2(nu, mu), so the sign
// of delta is correct for every (mu, nu) quadrant. Throws when mu = nu = 0.
BranchParams derive_branch_params(const CentralSpinParams& cs, int n_sites);

}  // namespace spinecho
