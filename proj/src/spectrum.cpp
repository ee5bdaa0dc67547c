#include "spinecho/spectrum.hpp"

#include <cmath>
#include <numbers>

#include "spinecho/errors.hpp"
#include "spinecho/kernels.hpp"

namespace spinecho {

MomentumGrid::MomentumGrid(int n) : n_sites(n) {
    const int m = n / 2;
    cos_phi.resize(m);
    sin2_phi.resize(m);
    for (int k = 1; k <= m; ++k) {
        const double phi = (2.0 * std::numbers::pi * k) / n;
        const double s = std::sin(phi);
        cos_phi[k - 1] = std::cos(phi);
        sin2_phi[k - 1] = s * s;
    }
}

std::vector<ModeData> mode_table(const ChainParams& chain, double delta) {
    chain.validate();
    if (!std::isfinite(delta)) throw ConfigError({"delta must be finite"});

    const int m = chain.n_modes();
    const double lam_g = chain.lambda + delta;
    const double lam_e = chain.lambda - delta;
    const double g2 = chain.gamma * chain.gamma;

    std::vector<ModeData> modes(m);
    for (int k = 1; k <= m; ++k) {
        ModeData& md = modes[k - 1];
        md.k = k;
        md.phi = (2.0 * std::numbers::pi * k) / chain.n_sites;
        const double s = std::sin(md.phi);
        const double c = std::cos(md.phi);
        const double gs = chain.gamma * s;
        const double q = g2 * (s * s);

        const double eps_g = lam_g - c;
        const double eps_e = lam_e - c;
        md.lambda_g = std::sqrt(eps_g * eps_g + q);
        md.lambda_e = std::sqrt(eps_e * eps_e + q);
        md.degenerate_g = (md.lambda_g == 0.0);
        md.degenerate_e = (md.lambda_e == 0.0);
        md.theta_g = md.degenerate_g ? 0.0 : std::atan2(gs, eps_g);
        md.theta_e = md.degenerate_e ? 0.0 : std::atan2(gs, eps_e);
        md.alpha = 0.5 * (md.theta_e - md.theta_g);
    }
    return modes;
}

double f_mean(const MomentumGrid& grid, double gamma, double lam_eff) {
    double sc = 0.0, sd = 0.0;
    kernels::active_kernels().chain_sums(grid.cos_phi.data(), grid.sin2_phi.data(),
                                         grid.cos_phi.size(), gamma, lam_eff, &sc, &sd);
    return sc / grid.n_sites;
}

double df_mean(const MomentumGrid& grid, double gamma, double lam_eff) {
    double sc = 0.0, sd = 0.0;
    kernels::active_kernels().chain_sums(grid.cos_phi.data(), grid.sin2_phi.data(),
                                         grid.cos_phi.size(), gamma, lam_eff, &sc, &sd);
    return sd / grid.n_sites;
}

double f_function(const ChainParams& chain, double delta) {
    chain.validate();
    if (!std::isfinite(delta)) throw ConfigError({"delta must be finite"});
    return f_mean(MomentumGrid(chain.n_sites), chain.gamma, chain.lambda + delta);
}

double df_dlambda(const ChainParams& chain, double delta) {
    chain.validate();
    if (!std::isfinite(delta)) throw ConfigError({"delta must be finite"});
    return df_mean(MomentumGrid(chain.n_sites), chain.gamma, chain.lambda + delta);
}

bool has_degenerate_mode(const MomentumGrid& grid, double gamma, double lam_eff) {
    const double g2 = gamma * gamma;
    for (std::size_t i = 0; i < grid.cos_phi.size(); ++i) {
        if (g2 * grid.sin2_phi[i] == 0.0 && lam_eff - grid.cos_phi[i] == 0.0) return true;
    }
    return false;
}

}  // namespace spinecho
