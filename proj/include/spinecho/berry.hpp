#pragma once

#include <span>
#include <utility>
#include <vector>

#include "spinecho/params.hpp"

namespace spinecho {

enum class Regime { finite_n, thermodynamic };

// Ground-state Berry phase of the central spin under a 2 pi rotation of its
// effective Hamiltonian about z:
//   beta_g = pi (1 + x / sqrt(x^2 + nu^2)),  x = mu + 4 g f(lambda, gamma, N).
struct BerryResult {
    double beta = 0.0;
    double dbeta_dlambda = 0.0;
    double f_value = 0.0;
    Regime regime = Regime::finite_n;
};

// Finite-N Berry phase. f uses the g-branch angles, i.e. the chain in field
// lambda + delta with delta = g cos(theta)/N derived from cs; the overload
// with delta_override substitutes that shift directly (sensitivity checks and
// figure reproduction). Odd N is accepted here (M = floor(N/2)): the
// finite-size scans run at odd sizes.
BerryResult berry_phase_finite(const ChainParams& chain, const CentralSpinParams& cs);
BerryResult berry_phase_finite(const ChainParams& chain, const CentralSpinParams& cs,
                               double delta_override);

// N -> infinity limit of f: (1/2pi) Int_0^pi (lambda-cos)/sqrt((lambda-cos)^2
// + gamma^2 sin^2) dphi by adaptive quadrature to 1e-10 absolute. gamma = 0
// takes the closed form 1/2 - arccos(lambda)/pi (|lambda| <= 1), sign/2 beyond.
double f_thermodynamic(double gamma, double lambda);

// d f_thermodynamic / d lambda = (1/2pi) Int gamma^2 sin^2 / L^3. Diverges
// logarithmically at lambda = 1; the quadrature error reports that honestly.
double f_thermodynamic_dlambda(double gamma, double lambda);

BerryResult berry_phase_thermodynamic(double gamma, double lambda,
                                      const CentralSpinParams& cs);

// beta alone, skipping the derivative quadrature (which diverges on the
// critical line and would poison a beta-only sweep through lambda = 1).
double berry_beta_thermodynamic(double gamma, double lambda,
                                const CentralSpinParams& cs);

enum class DerivativeMethod { analytic, finite_difference };

// d beta_g / d lambda. The analytic route sums d cos(theta_k)/d lambda =
// gamma^2 sin^2(phi)/L_g^3 into df/dlambda and applies the chain rule
//   d beta/d lambda = pi nu^2 (4 g df/dlambda) / (x^2 + nu^2)^{3/2}.
// finite_difference uses central differences with step 1e-5.
double dbeta_dlambda(const ChainParams& chain, const CentralSpinParams& cs,
                     DerivativeMethod method);

// Position lambda_m of the peak of the analytic d beta/d lambda inside
// [lo, hi], found by a 200-point scan plus golden-section refinement to 1e-6.
// A flat profile (e.g. g = 0) raises "peak not bracketed".
double find_pseudocritical(const ChainParams& chain, const CentralSpinParams& cs,
                           double lo = 0.5, double hi = 1.0);

enum class ScalingTarget { dbeta, df };

// Finite-size scaling of the pseudocritical point: lambda_m(N) per size and
// the least-squares slope of log(1 - lambda_m) against log N, reported
// positive. target df tracks the bare chain quantity f(lambda, gamma, N)
// (delta = 0); target dbeta tracks the central-spin derivative with the
// cs-derived delta.
struct ScalingFit {
    std::vector<int> sizes;
    std::vector<double> peak_positions;
    double exponent = 0.0;
    static constexpr double reference_exponent = 1.803;
};

ScalingFit scaling_fit(std::span<const int> sizes, const CentralSpinParams& cs,
                       double gamma, ScalingTarget target);

// Eigen-energies (E_g, E_e) = (-E, +E) of the mean-field central-spin
// Hamiltonian, E = sqrt((mu/2 + 2 g f)^2 + nu^2/4).
std::pair<double, double> effective_energies(const ChainParams& chain,
                                             const CentralSpinParams& cs);

}  // namespace spinecho
