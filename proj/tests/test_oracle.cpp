#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "spinecho/errors.hpp"
#include "spinecho/loschmidt.hpp"
#include "spinecho/oracle.hpp"
#include "spinecho/random.hpp"
#include "spinecho/spectrum.hpp"

using namespace spinecho;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("gamma = 0 pair Hamiltonian is diagonal with a basis-vector ground state") {
    const ChainParams chain{0.0, 0.6, 12};
    const auto modes = mode_table(chain, 0.05);
    for (const ModeData& m : modes) {
        const PairSubspace p = build_pair_subspace(m, chain, 0.05);
        CHECK(std::abs(p.h_e[1]) == 0.0);
        CHECK(std::abs(p.h_e[2]) == 0.0);
        const double n0 = std::norm(p.ground_g[0]);
        const double n1 = std::norm(p.ground_g[1]);
        CHECK(std::max(n0, n1) == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("phi = pi pair has eigenvalues -+2(lambda + 1 - delta)") {
    const ChainParams chain{0.8, 1.3, 10};
    const auto modes = mode_table(chain, 0.07);
    const PairSubspace p = build_pair_subspace(modes.back(), chain, 0.07);
    CHECK(std::abs(p.h_e[1]) < 1e-15);
    CHECK(p.omega_e == doctest::Approx(2.0 * (1.3 + 1.0 - 0.07)).epsilon(1e-12));
}

TEST_CASE("pair eigenvalues match the analytic spectrum on random instances") {
    Rng rng(808);
    for (int trial = 0; trial < 40; ++trial) {
        const ChainParams chain{rng.uniform(0.0, 1.0), rng.uniform(0.0, 2.0),
                                2 * static_cast<int>(4 + rng.pick(6))};
        const double delta = rng.uniform(0.0, 0.2);
        for (const ModeData& m : mode_table(chain, delta)) {
            const PairSubspace p = build_pair_subspace(m, chain, delta);
            CHECK(p.omega_e == doctest::Approx(2.0 * m.lambda_e).epsilon(1e-12));
        }
    }
}

TEST_CASE("oracle echo is one at t = 0 and for the XX chain") {
    const ChainParams chain{0.5, 0.8, 10};
    CHECK(oracle_echo(chain, 0.13, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    const ChainParams xx{0.0, 1.0, 12};
    for (double t : {0.7, 2.9, 4.4})
        CHECK(oracle_echo(xx, 0.05, t) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("per-pair overlap modulus never exceeds one") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const ChainParams chain{rng.uniform(0.0, 1.0), rng.uniform(0.0, 2.0), 8};
        const double delta = rng.uniform(0.0, 0.2);
        const auto modes = mode_table(chain, delta);
        const PairSubspace p =
            build_pair_subspace(modes[rng.pick(modes.size())], chain, delta);
        CHECK(pair_overlap_sq(p, rng.uniform(0.0, 5.0)) <= 1.0 + 1e-12);
    }
}

TEST_CASE("overlap is insensitive to the ground-state global phase") {
    const ChainParams chain{0.6, 1.1, 10};
    const auto modes = mode_table(chain, 0.12);
    Rng rng(4321);
    for (const ModeData& m : modes) {
        PairSubspace p = build_pair_subspace(m, chain, 0.12);
        const double t = rng.uniform(0.0, 5.0);
        const double base = pair_overlap_sq(p, t);
        const std::complex<double> phase = std::polar(1.0, rng.uniform(0.0, 2.0 * pi));
        p.ground_g[0] *= phase;
        p.ground_g[1] *= phase;
        CHECK(pair_overlap_sq(p, t) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("product formula and 2x2 evolution agree on random instances") {
    Rng rng(20101);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        static constexpr int sizes[3] = {8, 10, 12};
        const ChainParams chain{rng.uniform(0.0, 1.0), rng.uniform(0.0, 2.0),
                                sizes[rng.pick(3)]};
        const double delta = rng.uniform(0.0, 0.2);
        const double t = rng.uniform(0.0, 5.0);
        const double diff =
            std::abs(loschmidt_echo(mode_table(chain, delta), t) - oracle_echo(chain, delta, t));
        worst = std::max(worst, diff);
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("oracle is restricted to small chains") {
    CHECK_THROWS_AS(oracle_echo({1.0, 1.0, 202}, 0.05, 1.0), ConfigError);
}
