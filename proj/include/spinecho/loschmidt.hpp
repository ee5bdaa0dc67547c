#pragma once

#include <span>
#include <vector>

#include "spinecho/params.hpp"
#include "spinecho/spectrum.hpp"

namespace spinecho {

// L(t) over a time grid, kept in both linear and log form. values[i] =
// exp(log_values[i]) by construction; L(0) = 1 exactly.
struct EchoSeries {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> log_values;
};

// Per-mode echo coefficients: the echo is
//   L(t) = prod_k [1 - amp_k sin^2(omega_k t)],
// amp_k = sin^2(2 alpha_k), omega_k = 2 Lambda_{k,e}. Products are accumulated
// as sums of log1p(-x): with up to 1e5 near-unit factors the log domain is the
// only numerically safe representation.
struct EchoFactors {
    std::vector<double> amp;
    std::vector<double> omega;

    static EchoFactors from_modes(std::span<const ModeData> modes);
    static EchoFactors build(const MomentumGrid& grid, double gamma, double lambda,
                             double delta);
};

// ln L(t); -inf when some factor vanishes (that is a value, not an error).
double log_loschmidt_echo(const EchoFactors& f, double t);
double loschmidt_echo(const EchoFactors& f, double t);
double loschmidt_echo(std::span<const ModeData> modes, double t);

EchoSeries echo_series(const EchoFactors& f, std::span<const double> times);
EchoSeries echo_series(std::span<const ModeData> modes, std::span<const double> times);

// Product of the first `cutoff` factors only; factors are <= 1, so this upper
// bounds the full echo.
double partial_product(std::span<const ModeData> modes, double t, int cutoff);

// Initial central-spin weights |c_g|^2, |c_e|^2.
struct PurityInput {
    double c_g_sq = 0.5;
    double c_e_sq = 0.5;
    void validate() const;  // weights in [0,1], summing to 1 within 1e-12
};

// P = 1 - 2 |c_g c_e|^2 [1 - L(t)], in [1/2, 1].
double purity(double le, const PurityInput& p);

// Small-k Gaussian-envelope coefficients:
//   E(N_c) = 4 pi^2 N_c (N_c+1)(2 N_c+1) / (6 N^2)
//   tau    = 16 E(N_c) gamma^2 delta^2 / (lambda + delta - 1)^2
// so that the partial product behaves as exp(-tau t^2) near the critical
// field. The pole lambda + delta = 1 is an error by the expansion's own
// derivation, not an infinity.
struct HeuristicParams {
    int cutoff = 1;
    double tau = 0.0;
    double e_factor = 0.0;
};

HeuristicParams heuristic_tau(const ChainParams& chain, double delta, int cutoff);

}  // namespace spinecho
