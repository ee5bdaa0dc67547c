#include "spinecho/berry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "spinecho/errors.hpp"
#include "spinecho/quadrature.hpp"
#include "spinecho/spectrum.hpp"

namespace spinecho {

namespace {

constexpr double kPi = std::numbers::pi;

double beta_from_f(double f, const CentralSpinParams& cs) {
    const double x = cs.mu + 4.0 * cs.g * f;
    const double r = std::hypot(x, cs.nu);
    if (r == 0.0)
        throw NumericalError("Berry phase undefined (degenerate effective field)");
    return kPi * (1.0 + x / r);
}

double dbeta_from_f(double f, double df, const CentralSpinParams& cs) {
    const double x = cs.mu + 4.0 * cs.g * f;
    const double r2 = x * x + cs.nu * cs.nu;
    if (r2 == 0.0)
        throw NumericalError("Berry phase undefined (degenerate effective field)");
    return kPi * cs.nu * cs.nu * (4.0 * cs.g * df) / (r2 * std::sqrt(r2));
}

BerryResult berry_finite_impl(const ChainParams& chain, const CentralSpinParams& cs,
                              double delta) {
    chain.validate(/*require_even=*/false);
    const MomentumGrid grid(chain.n_sites);
    const double lam_eff = chain.lambda + delta;
    BerryResult r;
    r.regime = Regime::finite_n;
    r.f_value = f_mean(grid, chain.gamma, lam_eff);
    r.beta = beta_from_f(r.f_value, cs);
    r.dbeta_dlambda = dbeta_from_f(r.f_value, df_mean(grid, chain.gamma, lam_eff), cs);
    return r;
}

// Golden-section maximization seeded by a coarse scan. Returns the midpoint of
// the final bracket; flat profiles raise the bracketing error.
double maximize_unimodal(const std::function<double(double)>& fn, double lo, double hi,
                         double tol, int n_scan) {
    if (!(lo < hi)) throw ConfigError({"bracket must satisfy lo < hi"});

    const double step = (hi - lo) / (n_scan - 1);
    int best = 0;
    double best_val = fn(lo);
    double min_val = best_val;
    for (int i = 1; i < n_scan; ++i) {
        const double v = fn(lo + i * step);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
        min_val = std::min(min_val, v);
    }
    if (!(best_val - min_val > 1e-13 * std::max(1.0, std::abs(best_val))))
        throw NumericalError("peak not bracketed (profile flat over the bracket)");

    double a = std::max(lo, lo + (best - 1) * step);
    double b = std::min(hi, lo + (best + 1) * step);
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = fn(x1);
    double f2 = fn(x2);
    while (b - a > tol) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = fn(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = fn(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

BerryResult berry_phase_finite(const ChainParams& chain, const CentralSpinParams& cs) {
    return berry_finite_impl(chain, cs, derive_branch_params(cs, chain.n_sites).delta);
}

BerryResult berry_phase_finite(const ChainParams& chain, const CentralSpinParams& cs,
                               double delta_override) {
    return berry_finite_impl(chain, cs, delta_override);
}

double f_thermodynamic(double gamma, double lambda) {
    if (!(gamma >= 0.0)) throw ConfigError({"gamma must be >= 0"});
    if (gamma == 0.0) {
        if (lambda > 1.0) return 0.5;
        if (lambda < -1.0) return -0.5;
        return 0.5 - std::acos(lambda) / kPi;
    }
    const double g2 = gamma * gamma;
    auto integrand = [lambda, g2](double phi) {
        const double e = lambda - std::cos(phi);
        const double s = std::sin(phi);
        return e / std::sqrt(e * e + g2 * s * s);
    };
    // The integrand develops a step at phi* = arccos(lambda) as gamma -> 0;
    // splitting there keeps the adaptive refinement two-sided.
    const double tol = 2.0 * kPi * 1e-10;
    double raw;
    if (lambda > -1.0 && lambda < 1.0) {
        const double phi_star = std::acos(lambda);
        raw = integrate(integrand, 0.0, phi_star, 0.5 * tol) +
              integrate(integrand, phi_star, kPi, 0.5 * tol);
    } else {
        raw = integrate(integrand, 0.0, kPi, tol);
    }
    return raw / (2.0 * kPi);
}

double f_thermodynamic_dlambda(double gamma, double lambda) {
    if (!(gamma >= 0.0)) throw ConfigError({"gamma must be >= 0"});
    if (gamma == 0.0) {
        if (std::abs(lambda) >= 1.0) return 0.0;
        return 1.0 / (kPi * std::sqrt(1.0 - lambda * lambda));
    }
    const double g2 = gamma * gamma;
    auto integrand = [lambda, g2](double phi) {
        const double e = lambda - std::cos(phi);
        const double s = std::sin(phi);
        const double l2 = e * e + g2 * s * s;
        return g2 * s * s / (l2 * std::sqrt(l2));
    };
    const double tol = 2.0 * kPi * 1e-9;
    double raw;
    if (lambda > -1.0 && lambda < 1.0) {
        const double phi_star = std::acos(lambda);
        raw = integrate(integrand, 0.0, phi_star, 0.5 * tol) +
              integrate(integrand, phi_star, kPi, 0.5 * tol);
    } else {
        raw = integrate(integrand, 0.0, kPi, tol);
    }
    return raw / (2.0 * kPi);
}

BerryResult berry_phase_thermodynamic(double gamma, double lambda,
                                      const CentralSpinParams& cs) {
    BerryResult r;
    r.regime = Regime::thermodynamic;
    r.f_value = f_thermodynamic(gamma, lambda);
    r.beta = beta_from_f(r.f_value, cs);
    r.dbeta_dlambda = dbeta_from_f(r.f_value, f_thermodynamic_dlambda(gamma, lambda), cs);
    return r;
}

double berry_beta_thermodynamic(double gamma, double lambda,
                                const CentralSpinParams& cs) {
    return beta_from_f(f_thermodynamic(gamma, lambda), cs);
}

double dbeta_dlambda(const ChainParams& chain, const CentralSpinParams& cs,
                     DerivativeMethod method) {
    chain.validate(/*require_even=*/false);
    const double delta = derive_branch_params(cs, chain.n_sites).delta;
    if (method == DerivativeMethod::analytic) {
        const MomentumGrid grid(chain.n_sites);
        if (has_degenerate_mode(grid, chain.gamma, chain.lambda + delta))
            throw NumericalError("derivative singular at degenerate mode");
        const double f = f_mean(grid, chain.gamma, chain.lambda + delta);
        const double df = df_mean(grid, chain.gamma, chain.lambda + delta);
        return dbeta_from_f(f, df, cs);
    }
    constexpr double h = 1e-5;
    ChainParams up = chain;
    ChainParams dn = chain;
    up.lambda += h;
    dn.lambda -= h;
    return (berry_finite_impl(up, cs, delta).beta - berry_finite_impl(dn, cs, delta).beta) /
           (2.0 * h);
}

double find_pseudocritical(const ChainParams& chain, const CentralSpinParams& cs,
                           double lo, double hi) {
    chain.validate(/*require_even=*/false);
    const double delta = derive_branch_params(cs, chain.n_sites).delta;
    const MomentumGrid grid(chain.n_sites);
    auto fn = [&](double lam) {
        return dbeta_from_f(f_mean(grid, chain.gamma, lam + delta), df_mean(grid, chain.gamma, lam + delta), cs);
    };
    return maximize_unimodal(fn, lo, hi, 1e-6, 200);
}

ScalingFit scaling_fit(std::span<const int> sizes, const CentralSpinParams& cs,
                       double gamma, ScalingTarget target) {
    std::vector<std::string> bad;
    if (sizes.size() < 4) bad.push_back("need at least 4 sizes");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 3) bad.push_back("sizes must be >= 3");
        if (i > 0 && sizes[i] <= sizes[i - 1])
            bad.push_back("sizes must be strictly increasing");
    }
    if (!bad.empty()) throw ConfigError(std::move(bad));

    ScalingFit fit;
    fit.sizes.assign(sizes.begin(), sizes.end());
    fit.peak_positions.reserve(sizes.size());
    for (int n : sizes) {
        const MomentumGrid grid(n);
        // target df is the bare chain quantity (no backaction); target dbeta
        // carries the cs-derived 1/N shift of the g branch.
        const double delta =
            (target == ScalingTarget::df) ? 0.0 : derive_branch_params(cs, n).delta;
        std::function<double(double)> fn;
        if (target == ScalingTarget::df) {
            fn = [&grid, gamma, delta](double lam) {
                return df_mean(grid, gamma, lam + delta);
            };
        } else {
            fn = [&grid, gamma, delta, &cs](double lam) {
                return dbeta_from_f(f_mean(grid, gamma, lam + delta),
                                    df_mean(grid, gamma, lam + delta), cs);
            };
        }
        fit.peak_positions.push_back(maximize_unimodal(fn, 0.5, 1.0, 1e-8, 200));
    }

    // least squares on log(1 - lambda_m) vs log N
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const double x = std::log(static_cast<double>(sizes[i]));
        const double y = std::log(1.0 - fit.peak_positions[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.exponent = -slope;
    return fit;
}

std::pair<double, double> effective_energies(const ChainParams& chain,
                                             const CentralSpinParams& cs) {
    chain.validate(/*require_even=*/false);
    const double delta = derive_branch_params(cs, chain.n_sites).delta;
    const double f =
        f_mean(MomentumGrid(chain.n_sites), chain.gamma, chain.lambda + delta);
    const double e = std::hypot(0.5 * cs.mu + 2.0 * cs.g * f, 0.5 * cs.nu);
    return {-e, e};
}

}  // namespace spinecho
