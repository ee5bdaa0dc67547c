#include "spinecho/oracle.hpp"

#include <cmath>
#include <vector>

#include "spinecho/errors.hpp"

namespace spinecho {

namespace {

using cplx = std::complex<double>;

// Ground eigenvector of [[-a, ib], [-ib, a]] (eigenvalue -w, w = hypot(a, b)),
// normalized, phase fixed to the (real, imaginary) component layout. The two
// kernel directions (a+w, ib) and (ib, a-w) are equivalent; picking by the
// sign of a avoids cancellation in whichever difference would be small.
std::array<cplx, 2> ground_of(double a, double b, double w) {
    if (b == 0.0) {
        // diagonal: ground is a basis vector; a == 0 degenerate, keep (1, 0)
        if (a < 0.0) return {cplx(0.0, 0.0), cplx(0.0, 1.0)};
        return {cplx(1.0, 0.0), cplx(0.0, 0.0)};
    }
    if (a > 0.0) {
        const double n = std::hypot(a + w, b);
        return {cplx((a + w) / n, 0.0), cplx(0.0, b / n)};
    }
    const double n = std::hypot(b, w - a);
    return {cplx(b / n, 0.0), cplx(0.0, (w - a) / n)};
}

void check_convention(const std::array<cplx, 2>& v, double theta, double w,
                      const std::array<cplx, 4>& h, int k) {
    // eigen residual ||h v + w v||
    const cplx r0 = h[0] * v[0] + h[1] * v[1] + w * v[0];
    const cplx r1 = h[2] * v[0] + h[3] * v[1] + w * v[1];
    const double scale = std::max(1.0, w);
    if (std::abs(r0) > 1e-12 * scale || std::abs(r1) > 1e-12 * scale)
        throw NumericalError("convention mismatch: eigen residual at mode k=" +
                             std::to_string(k));
    // agreement with (cos(theta/2), i sin(theta/2)) up to a global phase
    const cplx expect0(std::cos(0.5 * theta), 0.0);
    const cplx expect1(0.0, std::sin(0.5 * theta));
    const double overlap =
        std::abs(std::conj(expect0) * v[0] + std::conj(expect1) * v[1]);
    if (std::abs(overlap - 1.0) > 1e-12)
        throw NumericalError("convention mismatch: ground state differs from the "
                             "Bogoliubov-angle form at mode k=" +
                             std::to_string(k));
}

}  // namespace

PairSubspace build_pair_subspace(const ModeData& mode, const ChainParams& chain,
                                 double delta) {
    const double s = std::sin(mode.phi);
    const double c = std::cos(mode.phi);
    const double b = chain.gamma * s;
    const double eps_g = chain.lambda + delta - c;
    const double eps_e = chain.lambda - delta - c;

    PairSubspace p;
    p.k = mode.k;
    p.h_e = {cplx(-2.0 * eps_e, 0.0), cplx(0.0, 2.0 * b),
             cplx(0.0, -2.0 * b), cplx(2.0 * eps_e, 0.0)};
    const double w_e = 2.0 * std::hypot(eps_e, b);
    const double w_g = 2.0 * std::hypot(eps_g, b);
    p.omega_e = w_e;
    p.ground_e = ground_of(2.0 * eps_e, 2.0 * b, w_e);
    p.ground_g = ground_of(2.0 * eps_g, 2.0 * b, w_g);

    if (std::abs(w_e - 2.0 * mode.lambda_e) > 1e-12 * std::max(1.0, w_e) ||
        std::abs(w_g - 2.0 * mode.lambda_g) > 1e-12 * std::max(1.0, w_g))
        throw NumericalError("convention mismatch: eigenvalues disagree with the "
                             "analytic spectrum at mode k=" +
                             std::to_string(mode.k));
    check_convention(p.ground_e, mode.theta_e, w_e, p.h_e, mode.k);
    const std::array<cplx, 4> h_g = {cplx(-2.0 * eps_g, 0.0), cplx(0.0, 2.0 * b),
                                     cplx(0.0, -2.0 * b), cplx(2.0 * eps_g, 0.0)};
    check_convention(p.ground_g, mode.theta_g, w_g, h_g, mode.k);
    return p;
}

double pair_overlap_sq(const PairSubspace& pair, double t) {
    // U(t) = e^{-i w t} P_- + e^{+i w t} P_+ with P_- = |v><v|
    const cplx em = std::polar(1.0, -pair.omega_e * t);
    const cplx ep = std::polar(1.0, +pair.omega_e * t);
    const std::array<cplx, 2>& v = pair.ground_e;
    std::array<cplx, 4> u;
    // P_- entries
    const cplx p00 = v[0] * std::conj(v[0]);
    const cplx p01 = v[0] * std::conj(v[1]);
    const cplx p10 = v[1] * std::conj(v[0]);
    const cplx p11 = v[1] * std::conj(v[1]);
    u[0] = em * p00 + ep * (1.0 - p00);
    u[1] = em * p01 - ep * p01;
    u[2] = em * p10 - ep * p10;
    u[3] = em * p11 + ep * (1.0 - p11);

    const std::array<cplx, 2>& g = pair.ground_g;
    const cplx w0 = u[0] * g[0] + u[1] * g[1];
    const cplx w1 = u[2] * g[0] + u[3] * g[1];
    const cplx amp = std::conj(g[0]) * w0 + std::conj(g[1]) * w1;
    return std::norm(amp);
}

double oracle_echo(const ChainParams& chain, double delta, double t) {
    chain.validate();
    if (chain.n_sites > 200)
        throw ConfigError({"oracle_echo is limited to N <= 200"});
    if (!(t >= 0.0)) throw ConfigError({"t must be >= 0"});

    const std::vector<ModeData> modes = mode_table(chain, delta);
    double product = 1.0;
    for (const ModeData& md : modes)
        product *= pair_overlap_sq(build_pair_subspace(md, chain, delta), t);
    return product;
}

}  // namespace spinecho
