#pragma once

#include <cstddef>

namespace spinecho::kernels {

// Data-parallel inner loops of the library. Scalar reference versions define
// the semantics; the AVX2 versions are selected at runtime when the CPU
// supports them and are equivalence-tested against the scalar ones.
//
// Inputs are per-mode tables for momenta phi_k = 2 pi k / N, k = 1..M:
//   cos_phi[i]  = cos(phi_{i+1})
//   sin2_phi[i] = sin^2(phi_{i+1})

// Per-mode Loschmidt factor coefficients for branch fields lam_g = lambda+delta,
// lam_e = lambda-delta:
//   amp[i]   = sin^2(2 alpha_k) = 4 delta^2 gamma^2 sin^2(phi) / (L_g^2 L_e^2)
//   omega[i] = 2 L_e
// with L_i^2 = (lam_i - cos phi)^2 + gamma^2 sin^2 phi. amp is clamped to
// [0, 1]; modes with gamma^2 sin^2 phi == 0 get amp = 0 exactly (this also
// covers the 0/0 at a degenerate mode).
using EchoModeCoeffsFn = void (*)(const double* cos_phi, const double* sin2_phi,
                                  std::size_t n, double gamma, double lambda,
                                  double delta, double* amp, double* omega);

// Log-domain echo accumulation: sum_i log1p(-amp[i] sin^2(omega[i] t)).
// Returns -inf when a factor vanishes; never NaN for amp in [0,1].
using EchoLogSumFn = double (*)(const double* amp, const double* omega,
                                std::size_t n, double t);

// f/df sums over the g-branch spectrum at effective field lam_eff:
//   *sum_cos  = sum_i eps_i / L_i            (1 where L_i == 0)
//   *sum_dcos = sum_i gamma^2 sin^2 / L_i^3  (0 where L_i == 0)
// with eps_i = lam_eff - cos_phi[i].
using ChainSumsFn = void (*)(const double* cos_phi, const double* sin2_phi,
                             std::size_t n, double gamma, double lam_eff,
                             double* sum_cos, double* sum_dcos);

struct Kernels {
    const char* name;
    EchoModeCoeffsFn echo_mode_coeffs;
    EchoLogSumFn echo_log_sum;
    ChainSumsFn chain_sums;
};

const Kernels& scalar_kernels();

// Null when this build has no AVX2 code path or the CPU lacks AVX2+FMA.
const Kernels* avx2_kernels();

// Runtime selection: ECHO_KERNEL=scalar|avx2 forces a path (falls back to
// scalar with a warning if avx2 is unavailable); otherwise the best supported
// variant wins. Resolved once per process so results are reproducible.
const Kernels& active_kernels();

}  // namespace spinecho::kernels
