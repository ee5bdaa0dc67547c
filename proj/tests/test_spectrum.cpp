#include <cmath>
#include <numbers>

#include "doctest.h"
#include "spinecho/berry.hpp"
#include "spinecho/errors.hpp"
#include "spinecho/params.hpp"
#include "spinecho/random.hpp"
#include "spinecho/spectrum.hpp"

using namespace spinecho;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("branch parameters from the central spin") {
    const BranchParams bp = derive_branch_params({0.1, 2.0, 0.5}, 100);
    CHECK(bp.big_delta == doctest::Approx(std::sqrt(4.01) / 2.0).epsilon(1e-15));
    CHECK(bp.delta == doctest::Approx(0.5 * (0.1 / std::sqrt(4.01)) / 100.0).epsilon(1e-15));
    CHECK(BranchParams::kappa_g == 1);
    CHECK(BranchParams::kappa_e == -1);

    // axis-aligned: cos(theta) = 1
    const BranchParams ax = derive_branch_params({1.0, 0.0, 1.0}, 10);
    CHECK(ax.delta == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(ax.big_delta == doctest::Approx(0.5).epsilon(1e-15));

    // orthogonal: cos(theta) = 0 kills the backaction
    const BranchParams orth = derive_branch_params({0.0, 1.0, 5.0}, 10);
    CHECK(orth.delta == 0.0);

    CHECK_THROWS_AS(derive_branch_params({0.0, 0.0, 1.0}, 10), ConfigError);
}

TEST_CASE("parameter validation") {
    const ChainParams odd{1.0, 1.0, 101};
    const ChainParams tiny{1.0, 1.0, 0};
    const ChainParams neg_gamma{-0.5, 1.0, 100};
    const ChainParams fine{0.0, -3.0, 2};
    CHECK_THROWS_AS(odd.validate(), ConfigError);
    CHECK_THROWS_AS(tiny.validate(), ConfigError);
    CHECK_THROWS_AS(neg_gamma.validate(), ConfigError);
    CHECK_NOTHROW(odd.validate(/*require_even=*/false));
    CHECK_NOTHROW(fine.validate());
}

TEST_CASE("mode table satisfies the angle and energy identities") {
    Rng rng(321);
    for (int trial = 0; trial < 20; ++trial) {
        const ChainParams chain{rng.uniform(0.0, 1.0), rng.uniform(-0.5, 2.0),
                                2 * static_cast<int>(2 + rng.pick(40))};
        const double delta = rng.uniform(-0.2, 0.2);
        const auto modes = mode_table(chain, delta);
        REQUIRE(modes.size() == static_cast<std::size_t>(chain.n_sites / 2));
        for (const ModeData& m : modes) {
            CHECK(m.phi == doctest::Approx(2.0 * pi * m.k / chain.n_sites));
            const double gs = chain.gamma * std::sin(m.phi);
            const double eps_g = chain.lambda + delta - std::cos(m.phi);
            const double eps_e = chain.lambda - delta - std::cos(m.phi);
            CHECK(m.lambda_g * m.lambda_g ==
                  doctest::Approx(eps_g * eps_g + gs * gs).epsilon(1e-14));
            CHECK(m.lambda_e * m.lambda_e ==
                  doctest::Approx(eps_e * eps_e + gs * gs).epsilon(1e-14));
            CHECK(m.theta_g >= 0.0);
            CHECK(m.theta_g <= pi);
            CHECK(m.theta_e >= 0.0);
            CHECK(m.theta_e <= pi);
            if (m.lambda_g > 0.0) {
                CHECK(std::cos(m.theta_g) * m.lambda_g == doctest::Approx(eps_g).epsilon(1e-12));
                CHECK(std::sin(m.theta_g) * m.lambda_g == doctest::Approx(gs).epsilon(1e-12));
            }
            if (m.lambda_e > 0.0) {
                CHECK(std::cos(m.theta_e) * m.lambda_e == doctest::Approx(eps_e).epsilon(1e-12));
                CHECK(std::sin(m.theta_e) * m.lambda_e == doctest::Approx(gs).epsilon(1e-12));
            }
            CHECK(m.alpha == 0.5 * (m.theta_e - m.theta_g));
        }
    }
}

TEST_CASE("Ising chain at the critical field has the 2|sin(phi/2)| spectrum") {
    const ChainParams chain{1.0, 1.0, 64};
    for (const ModeData& m : mode_table(chain, 0.0)) {
        CHECK(m.lambda_g == doctest::Approx(2.0 * std::abs(std::sin(0.5 * m.phi))).epsilon(1e-13));
        CHECK(m.lambda_e == m.lambda_g);
    }
}

TEST_CASE("boundary mode at phi = pi decouples") {
    const auto modes = mode_table({0.7, 1.3, 10}, 0.08);
    const ModeData& last = modes.back();
    CHECK(last.k == 5);
    // sin(phi) vanishes there, so both angles collapse onto {0, pi}
    CHECK(std::abs(std::sin(last.theta_g)) < 1e-15);
    CHECK(std::abs(std::sin(last.theta_e)) < 1e-15);
}

TEST_CASE("fully polarized regime has zero angles everywhere") {
    for (const ModeData& m : mode_table({0.0, 2.0, 40}, 0.05)) {
        CHECK(m.theta_g == 0.0);
        CHECK(m.theta_e == 0.0);
        CHECK(m.alpha == 0.0);
    }
}

TEST_CASE("delta -> 0 collapses the two branches") {
    for (const ModeData& m : mode_table({0.6, 0.9, 30}, 0.0)) {
        CHECK(m.theta_g == m.theta_e);
        CHECK(m.alpha == 0.0);
        CHECK(m.lambda_g == m.lambda_e);
    }
}

TEST_CASE("gamma = 0 pins every angle to {0, pi}") {
    for (const ModeData& m : mode_table({0.0, 0.3, 26}, 0.1)) {
        const bool g_ok = m.theta_g == 0.0 || m.theta_g == doctest::Approx(pi);
        const bool e_ok = m.theta_e == 0.0 || m.theta_e == doctest::Approx(pi);
        CHECK(g_ok);
        CHECK(e_ok);
        CHECK(std::abs(std::sin(2.0 * m.alpha)) < 1e-15);
    }
}

TEST_CASE("degenerate mode is flagged and gets theta = 0") {
    // gamma = 0 and lambda + delta hitting cos(phi_1) exactly
    const int n = 8;
    const double c1 = std::cos(2.0 * pi / n);
    const ChainParams chain{0.0, c1, n};
    const auto modes = mode_table(chain, 0.0);
    CHECK(modes[0].degenerate_g);
    CHECK(modes[0].degenerate_e);
    CHECK(modes[0].theta_g == 0.0);
    CHECK(modes[0].lambda_g == 0.0);
    CHECK(has_degenerate_mode(MomentumGrid(n), 0.0, c1));
    CHECK_FALSE(has_degenerate_mode(MomentumGrid(n), 0.0, c1 + 1e-9));
}

TEST_CASE("f is exactly 1/2 on the polarized plateau") {
    const double f = f_function({0.0, 1.2, 100}, 0.05);
    CHECK(f == 0.5);
    // and exactly -1/2 when every mode is inverted
    CHECK(f_function({0.0, -2.0, 100}, 0.05) == -0.5);
}

TEST_CASE("XX chain at zero field averages to zero in the large-N limit") {
    // N = 20002 avoids the phi = pi/2 degeneracy that N divisible by 4 hits
    const double f = f_function({0.0, 0.0, 20002}, 0.0);
    CHECK(std::abs(f) <= 2.0 / 20002);
}

TEST_CASE("finite-N f matches the thermodynamic quadrature") {
    const double f_n = f_function({1.0, 0.5, 20000}, 0.0);
    const double f_inf = f_thermodynamic(1.0, 0.5);
    CHECK(std::abs(f_n - f_inf) < 1e-3);
}

TEST_CASE("f is non-decreasing in lambda") {
    Rng rng(99);
    for (int trial = 0; trial < 5; ++trial) {
        const double gamma = rng.uniform(0.0, 1.0);
        const double delta = rng.uniform(0.0, 0.1);
        const int n = 2 * static_cast<int>(5 + rng.pick(60));
        double prev = -1.0;
        for (double lam = -1.5; lam <= 2.5; lam += 0.05) {
            const double f = f_function({gamma, lam, n}, delta);
            CHECK(f >= prev - 1e-12);
            CHECK(f >= -0.5);
            CHECK(f <= 0.5);
            prev = f;
        }
    }
}
