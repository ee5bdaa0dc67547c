// AVX2+FMA variants of the inner loops. Compiled only on x86 builds; selected
// at runtime via cpuid (see dispatch.cpp), so the rest of the binary stays
// baseline. The vector sin/log1p below follow the classic fdlibm reduction and
// polynomial schemes; the equivalence tests pin them against libm.

#ifdef SPINECHO_HAVE_AVX2

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "spinecho/kernels.hpp"

namespace spinecho::kernels {

namespace {

// ---- vector sin ------------------------------------------------------------

// Cody-Waite split of pi/2 (33 + 53 bits). Exact reduction for |x| up to
// ~1e6 because j*PIO2_1 is exact while j < 2^20.
constexpr double INV_PIO2 = 6.36619772367581382433e-01;
constexpr double PIO2_1 = 1.57079632673412561417e+00;
constexpr double PIO2_1T = 6.07710050650619224932e-11;
constexpr double TRIG_ARG_LIMIT = 1.0e6;

// fdlibm kernel polynomials on |r| <= pi/4.
constexpr double S1 = -1.66666666666666324348e-01;
constexpr double S2 = 8.33333333332248946124e-03;
constexpr double S3 = -1.98412698298579493134e-04;
constexpr double S4 = 2.75573137070700676789e-06;
constexpr double S5 = -2.50507602534068634195e-08;
constexpr double S6 = 1.58969099521155010221e-10;

constexpr double C1 = 4.16666666666666019037e-02;
constexpr double C2 = -1.38888888888741095749e-03;
constexpr double C3 = 2.48015872894767294178e-05;
constexpr double C4 = -2.75573143513906633035e-07;
constexpr double C5 = 2.08757232129817482790e-09;
constexpr double C6 = -1.13596475577881948265e-11;

inline __m256d sin4(__m256d x) {
    const __m256d jd = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(INV_PIO2)),
                                       _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fmadd_pd(jd, _mm256_set1_pd(-PIO2_1), x);
    r = _mm256_fmadd_pd(jd, _mm256_set1_pd(-PIO2_1T), r);

    const __m128i j32 = _mm256_cvtpd_epi32(jd);
    const __m256i q = _mm256_and_si256(_mm256_cvtepi32_epi64(j32), _mm256_set1_epi64x(3));

    const __m256d s = _mm256_mul_pd(r, r);

    __m256d ps = _mm256_set1_pd(S6);
    ps = _mm256_fmadd_pd(ps, s, _mm256_set1_pd(S5));
    ps = _mm256_fmadd_pd(ps, s, _mm256_set1_pd(S4));
    ps = _mm256_fmadd_pd(ps, s, _mm256_set1_pd(S3));
    ps = _mm256_fmadd_pd(ps, s, _mm256_set1_pd(S2));
    ps = _mm256_fmadd_pd(ps, s, _mm256_set1_pd(S1));
    const __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(r, s), ps, r);

    __m256d pc = _mm256_set1_pd(C6);
    pc = _mm256_fmadd_pd(pc, s, _mm256_set1_pd(C5));
    pc = _mm256_fmadd_pd(pc, s, _mm256_set1_pd(C4));
    pc = _mm256_fmadd_pd(pc, s, _mm256_set1_pd(C3));
    pc = _mm256_fmadd_pd(pc, s, _mm256_set1_pd(C2));
    pc = _mm256_fmadd_pd(pc, s, _mm256_set1_pd(C1));
    const __m256d cos_r = _mm256_fmadd_pd(
        _mm256_mul_pd(s, s), pc,
        _mm256_fmadd_pd(s, _mm256_set1_pd(-0.5), _mm256_set1_pd(1.0)));

    // quadrant: 0 -> sin, 1 -> cos, 2 -> -sin, 3 -> -cos
    const __m256i odd = _mm256_cmpeq_epi64(_mm256_and_si256(q, _mm256_set1_epi64x(1)),
                                           _mm256_set1_epi64x(1));
    const __m256i flip = _mm256_cmpeq_epi64(_mm256_and_si256(q, _mm256_set1_epi64x(2)),
                                            _mm256_set1_epi64x(2));
    __m256d res = _mm256_blendv_pd(sin_r, cos_r, _mm256_castsi256_pd(odd));
    const __m256d signbit = _mm256_and_pd(_mm256_castsi256_pd(flip), _mm256_set1_pd(-0.0));
    return _mm256_xor_pd(res, signbit);
}

// ---- vector log1p ----------------------------------------------------------

// Valid for u in [-1, 0.5]; u == -1 yields -inf, u < -1 yields NaN. Decomposes
// w = 1+u into 2^e * m with m in (sqrt(2)/2, sqrt(2)], takes log m from the
// atanh series in z = (m-1)/(m+1), and restores the bits of u lost in 1+u via
// the first-order residue (u - (w-1))/w.
constexpr double LN2_HI = 6.93147180369123816490e-01;
constexpr double LN2_LO = 1.90821492927058770002e-10;

inline __m256d log1p4(__m256d u) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d w = _mm256_add_pd(one, u);

    const __m256i bits = _mm256_castpd_si256(w);
    __m256i e64 = _mm256_sub_epi64(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(1023));
    const __m256i mant = _mm256_or_si256(
        _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
        _mm256_set1_epi64x(0x3FF0000000000000LL));
    __m256d m = _mm256_castsi256_pd(mant);

    const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);

    // pack the (small) 64-bit exponents into int32 lanes and widen to double
    const __m256i packidx = _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0);
    const __m128i e32 = _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(e64, packidx));
    __m256d ed = _mm256_cvtepi32_pd(e32);
    ed = _mm256_add_pd(ed, _mm256_and_pd(big, one));

    const __m256d z = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    const __m256d z2 = _mm256_mul_pd(z, z);
    __m256d p = _mm256_set1_pd(1.0 / 19.0);
    p = _mm256_fmadd_pd(p, z2, _mm256_set1_pd(1.0 / 17.0));
    p = _mm256_fmadd_pd(p, z2, _mm256_set1_pd(1.0 / 15.0));
    p = _mm256_fmadd_pd(p, z2, _mm256_set1_pd(1.0 / 13.0));
    p = _mm256_fmadd_pd(p, z2, _mm256_set1_pd(1.0 / 11.0));
    p = _mm256_fmadd_pd(p, z2, _mm256_set1_pd(1.0 / 9.0));
    p = _mm256_fmadd_pd(p, z2, _mm256_set1_pd(1.0 / 7.0));
    p = _mm256_fmadd_pd(p, z2, _mm256_set1_pd(1.0 / 5.0));
    p = _mm256_fmadd_pd(p, z2, _mm256_set1_pd(1.0 / 3.0));
    const __m256d two_z = _mm256_add_pd(z, z);
    const __m256d log_m = _mm256_fmadd_pd(_mm256_mul_pd(two_z, z2), p, two_z);

    const __m256d c = _mm256_sub_pd(u, _mm256_sub_pd(w, one));
    __m256d res = _mm256_fmadd_pd(ed, _mm256_set1_pd(LN2_LO), _mm256_div_pd(c, w));
    res = _mm256_add_pd(res, log_m);
    res = _mm256_fmadd_pd(ed, _mm256_set1_pd(LN2_HI), res);

    const __m256d nonpos = _mm256_cmp_pd(w, _mm256_setzero_pd(), _CMP_LE_OQ);
    const __m256d iszero = _mm256_cmp_pd(w, _mm256_setzero_pd(), _CMP_EQ_OQ);
    const __m256d special =
        _mm256_blendv_pd(_mm256_set1_pd(std::numeric_limits<double>::quiet_NaN()),
                         _mm256_set1_pd(-std::numeric_limits<double>::infinity()), iszero);
    return _mm256_blendv_pd(res, special, nonpos);
}

inline double hsum(__m256d v) {
    // fixed-order lane reduction keeps results reproducible
    alignas(32) double lane[4];
    _mm256_store_pd(lane, v);
    return ((lane[0] + lane[1]) + lane[2]) + lane[3];
}

// ---- kernels ---------------------------------------------------------------

void echo_mode_coeffs_avx2(const double* cos_phi, const double* sin2_phi,
                           std::size_t n, double gamma, double lambda,
                           double delta, double* amp, double* omega) {
    const double lam_g = lambda + delta;
    const double lam_e = lambda - delta;
    const double g2 = gamma * gamma;
    const double four_d2 = 4.0 * delta * delta;

    const __m256d vg2 = _mm256_set1_pd(g2);
    const __m256d vlg = _mm256_set1_pd(lam_g);
    const __m256d vle = _mm256_set1_pd(lam_e);
    const __m256d v4d2 = _mm256_set1_pd(four_d2);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d c = _mm256_loadu_pd(cos_phi + i);
        const __m256d q = _mm256_mul_pd(vg2, _mm256_loadu_pd(sin2_phi + i));
        const __m256d eg = _mm256_sub_pd(vlg, c);
        const __m256d ee = _mm256_sub_pd(vle, c);
        const __m256d l2g = _mm256_fmadd_pd(eg, eg, q);
        const __m256d l2e = _mm256_fmadd_pd(ee, ee, q);
        _mm256_storeu_pd(omega + i, _mm256_mul_pd(_mm256_set1_pd(2.0), _mm256_sqrt_pd(l2e)));
        __m256d a = _mm256_div_pd(_mm256_mul_pd(v4d2, q), _mm256_mul_pd(l2g, l2e));
        a = _mm256_min_pd(a, one);
        const __m256d qzero = _mm256_cmp_pd(q, zero, _CMP_EQ_OQ);
        a = _mm256_blendv_pd(a, zero, qzero);
        _mm256_storeu_pd(amp + i, a);
    }
    for (; i < n; ++i) {
        const double q = g2 * sin2_phi[i];
        const double eg = lam_g - cos_phi[i];
        const double ee = lam_e - cos_phi[i];
        const double l2g = eg * eg + q;
        const double l2e = ee * ee + q;
        omega[i] = 2.0 * std::sqrt(l2e);
        amp[i] = (q == 0.0) ? 0.0 : std::min(four_d2 * q / (l2g * l2e), 1.0);
    }
}

double echo_log_sum_avx2(const double* amp, const double* omega,
                         std::size_t n, double t) {
    const __m256d vt = _mm256_set1_pd(t);
    const __m256d neg1 = _mm256_set1_pd(-1.0);
    const __m256d limit = _mm256_set1_pd(TRIG_ARG_LIMIT);
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));
    __m256d acc = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_mul_pd(_mm256_loadu_pd(omega + i), vt);
        __m256d s;
        if (_mm256_movemask_pd(_mm256_cmp_pd(_mm256_and_pd(x, absmask), limit, _CMP_GT_OQ))) {
            // arguments beyond the Cody-Waite range: defer to libm
            alignas(32) double xa[4], sa[4];
            _mm256_store_pd(xa, x);
            for (int l = 0; l < 4; ++l) sa[l] = std::sin(xa[l]);
            s = _mm256_load_pd(sa);
        } else {
            s = sin4(x);
        }
        const __m256d a = _mm256_loadu_pd(amp + i);
        __m256d u = _mm256_mul_pd(_mm256_mul_pd(a, s), s);
        u = _mm256_max_pd(_mm256_sub_pd(_mm256_setzero_pd(), u), neg1);
        acc = _mm256_add_pd(acc, log1p4(u));
    }
    double sum = hsum(acc);
    for (; i < n; ++i) {
        const double s = std::sin(omega[i] * t);
        sum += std::log1p(std::max(-amp[i] * (s * s), -1.0));
    }
    return sum;
}

void chain_sums_avx2(const double* cos_phi, const double* sin2_phi,
                     std::size_t n, double gamma, double lam_eff,
                     double* sum_cos, double* sum_dcos) {
    const double g2 = gamma * gamma;
    const __m256d vg2 = _mm256_set1_pd(g2);
    const __m256d vlam = _mm256_set1_pd(lam_eff);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    __m256d acc_c = _mm256_setzero_pd();
    __m256d acc_d = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d q = _mm256_mul_pd(vg2, _mm256_loadu_pd(sin2_phi + i));
        const __m256d eps = _mm256_sub_pd(vlam, _mm256_loadu_pd(cos_phi + i));
        const __m256d l2 = _mm256_fmadd_pd(eps, eps, q);
        const __m256d l = _mm256_sqrt_pd(l2);
        const __m256d degen = _mm256_cmp_pd(l2, zero, _CMP_EQ_OQ);
        acc_c = _mm256_add_pd(acc_c,
                              _mm256_blendv_pd(_mm256_div_pd(eps, l), one, degen));
        acc_d = _mm256_add_pd(
            acc_d, _mm256_blendv_pd(_mm256_div_pd(q, _mm256_mul_pd(l2, l)), zero, degen));
    }
    double sc = hsum(acc_c);
    double sd = hsum(acc_d);
    for (; i < n; ++i) {
        const double q = g2 * sin2_phi[i];
        const double eps = lam_eff - cos_phi[i];
        const double l2 = eps * eps + q;
        if (l2 == 0.0) {
            sc += 1.0;
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

const Kernels* avx2_kernels_impl() {
    static const Kernels k{"avx2", &echo_mode_coeffs_avx2, &echo_log_sum_avx2,
                           &chain_sums_avx2};
    return &k;
}

}  // namespace spinecho::kernels

#endif  // SPINECHO_HAVE_AVX2
