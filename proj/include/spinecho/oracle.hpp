#pragma once

#include <array>
#include <complex>

#include "spinecho/params.hpp"
#include "spinecho/spectrum.hpp"

namespace spinecho {

// Brute-force verification path for the echo product formula. Each (k, -k)
// momentum pair spans a two-dimensional space {|0 0>, |1 1>}; the e-branch
// Hamiltonian restricted to it is the 2x2 Hermitian matrix
//   h_e = [ -2 eps_e     2 i b  ]        b = gamma sin(phi),
//         [ -2 i b      +2 eps_e ]
// whose eigenvalues are -+ 2 Lambda_e. Ground states of both branches are
// obtained by explicit eigen-decomposition (never from the Bogoliubov angle
// algebra), and construction cross-checks them against the analytic
// convention (cos(theta/2), i sin(theta/2)) to 1e-12, failing loudly with
// "convention mismatch" if the two drift apart.
struct PairSubspace {
    int k = 0;
    std::array<std::complex<double>, 4> h_e{};  // row major 2x2
    std::array<std::complex<double>, 2> ground_g{};
    std::array<std::complex<double>, 2> ground_e{};
    double omega_e = 0.0;  // 2 Lambda_e from the eigen-decomposition
};

PairSubspace build_pair_subspace(const ModeData& mode, const ChainParams& chain,
                                 double delta);

// |<g_k| exp(-i h_e t) |g_k>|^2 for one pair, with the propagator assembled
// from the spectral projectors.
double pair_overlap_sq(const PairSubspace& pair, double t);

// Product of the per-pair overlaps over k = 1..M. Never touches alpha_k or the
// product formula; N <= 200 keeps this a test-time tool.
double oracle_echo(const ChainParams& chain, double delta, double t);

}  // namespace spinecho
