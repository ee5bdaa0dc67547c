#include <algorithm>
#include <cmath>

#include "spinecho/kernels.hpp"

namespace spinecho::kernels {

namespace {

void echo_mode_coeffs_scalar(const double* cos_phi, const double* sin2_phi,
                             std::size_t n, double gamma, double lambda,
                             double delta, double* amp, double* omega) {
    const double lam_g = lambda + delta;
    const double lam_e = lambda - delta;
    const double g2 = gamma * gamma;
    const double four_d2 = 4.0 * delta * delta;
    for (std::size_t i = 0; i < n; ++i) {
        const double q = g2 * sin2_phi[i];
        const double eg = lam_g - cos_phi[i];
        const double ee = lam_e - cos_phi[i];
        const double l2g = eg * eg + q;
        const double l2e = ee * ee + q;
        omega[i] = 2.0 * std::sqrt(l2e);
        if (q == 0.0) {
            amp[i] = 0.0;  // both angles land on {0, pi}; sin(2 alpha) = 0
        } else {
            amp[i] = std::min(four_d2 * q / (l2g * l2e), 1.0);
        }
    }
}

double echo_log_sum_scalar(const double* amp, const double* omega,
                           std::size_t n, double t) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = std::sin(omega[i] * t);
        const double u = std::max(-amp[i] * (s * s), -1.0);
        sum += std::log1p(u);
    }
    return sum;
}

void chain_sums_scalar(const double* cos_phi, const double* sin2_phi,
                       std::size_t n, double gamma, double lam_eff,
                       double* sum_cos, double* sum_dcos) {
    const double g2 = gamma * gamma;
    double sc = 0.0;
    double sd = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double q = g2 * sin2_phi[i];
        const double eps = lam_eff - cos_phi[i];
        const double l2 = eps * eps + q;
        if (l2 == 0.0) {
            sc += 1.0;  // degenerate mode convention: theta = 0
        } else {
            const double l = std::sqrt(l2);
            sc += eps / l;
            sd += q / (l2 * l);
        }
    }
    *sum_cos = sc;
    *sum_dcos = sd;
}

}  // namespace

const Kernels& scalar_kernels() {
    static const Kernels k{"scalar", &echo_mode_coeffs_scalar,
                           &echo_log_sum_scalar, &chain_sums_scalar};
    return k;
}

}  // namespace spinecho::kernels
