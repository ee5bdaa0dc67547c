#include "spinecho/loschmidt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spinecho/errors.hpp"
#include "spinecho/kernels.hpp"

namespace spinecho {

EchoFactors EchoFactors::from_modes(std::span<const ModeData> modes) {
    EchoFactors f;
    f.amp.resize(modes.size());
    f.omega.resize(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const double s2a = std::sin(modes[i].theta_e - modes[i].theta_g);
        f.amp[i] = std::min(s2a * s2a, 1.0);
        f.omega[i] = 2.0 * modes[i].lambda_e;
    }
    return f;
}

EchoFactors EchoFactors::build(const MomentumGrid& grid, double gamma, double lambda,
                               double delta) {
    EchoFactors f;
    const std::size_t m = grid.cos_phi.size();
    f.amp.resize(m);
    f.omega.resize(m);
    kernels::active_kernels().echo_mode_coeffs(grid.cos_phi.data(), grid.sin2_phi.data(),
                                               m, gamma, lambda, delta, f.amp.data(),
                                               f.omega.data());
    return f;
}

double log_loschmidt_echo(const EchoFactors& f, double t) {
    if (!(t >= 0.0)) throw ConfigError({"t must be >= 0"});
    return kernels::active_kernels().echo_log_sum(f.amp.data(), f.omega.data(),
                                                  f.amp.size(), t);
}

double loschmidt_echo(const EchoFactors& f, double t) {
    return std::exp(log_loschmidt_echo(f, t));
}

double loschmidt_echo(std::span<const ModeData> modes, double t) {
    return loschmidt_echo(EchoFactors::from_modes(modes), t);
}

static void check_time_grid(std::span<const double> times) {
    if (times.empty()) throw ConfigError({"empty time grid"});
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0)) throw ConfigError({"time grid must be >= 0"});
        if (i > 0 && times[i] < times[i - 1])
            throw ConfigError({"time grid must be sorted ascending"});
    }
}

EchoSeries echo_series(const EchoFactors& f, std::span<const double> times) {
    check_time_grid(times);
    EchoSeries s;
    s.times.assign(times.begin(), times.end());
    s.values.resize(times.size());
    s.log_values.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double lv = kernels::active_kernels().echo_log_sum(
            f.amp.data(), f.omega.data(), f.amp.size(), times[i]);
        s.log_values[i] = lv;
        s.values[i] = std::exp(lv);
    }
    return s;
}

EchoSeries echo_series(std::span<const ModeData> modes, std::span<const double> times) {
    return echo_series(EchoFactors::from_modes(modes), times);
}

double partial_product(std::span<const ModeData> modes, double t, int cutoff) {
    if (cutoff < 1 || static_cast<std::size_t>(cutoff) > modes.size())
        throw ConfigError({"cutoff must lie in [1, M]"});
    return loschmidt_echo(modes.first(static_cast<std::size_t>(cutoff)), t);
}

void PurityInput::validate() const {
    std::vector<std::string> bad;
    if (!(c_g_sq >= 0.0 && c_g_sq <= 1.0)) bad.push_back("|c_g|^2 must lie in [0,1]");
    if (!(c_e_sq >= 0.0 && c_e_sq <= 1.0)) bad.push_back("|c_e|^2 must lie in [0,1]");
    if (!(std::abs(c_g_sq + c_e_sq - 1.0) <= 1e-12))
        bad.push_back("|c_g|^2 + |c_e|^2 must equal 1 within 1e-12");
    if (!bad.empty()) throw ConfigError(std::move(bad));
}

double purity(double le, const PurityInput& p) {
    p.validate();
    if (!(le >= 0.0 && le <= 1.0)) throw ConfigError({"Loschmidt echo must lie in [0,1]"});
    return 1.0 - 2.0 * p.c_g_sq * p.c_e_sq * (1.0 - le);
}

HeuristicParams heuristic_tau(const ChainParams& chain, double delta, int cutoff) {
    chain.validate();
    if (!std::isfinite(delta)) throw ConfigError({"delta must be finite"});
    if (cutoff < 1) throw ConfigError({"cutoff must be >= 1"});
    if (cutoff >= chain.n_sites / 2)
        throw NumericalError("cutoff outside small-k regime (need N_c < N/2)");
    const double pole = chain.lambda + delta - 1.0;
    if (pole == 0.0) throw NumericalError("tau pole at lambda + delta = 1");

    const double nc = cutoff;
    const double n = chain.n_sites;
    HeuristicParams h;
    h.cutoff = cutoff;
    h.e_factor = 4.0 * std::numbers::pi * std::numbers::pi * nc * (nc + 1.0) *
                 (2.0 * nc + 1.0) / (6.0 * n * n);
    const double gd = chain.gamma * delta;
    h.tau = 16.0 * h.e_factor * gd * gd / (pole * pole);
    return h;
}

}  // namespace spinecho
