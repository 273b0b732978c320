// AVX2 variants of the hot kernels.  This TU is the only one compiled with
// -mavx2; it must stay behind the runtime dispatch in dispatch.cpp.
//
// Parity with the scalar reference: squared distances use mul+add (no FMA
// contraction) so per-term rounding matches; only the accumulation order
// differs in coulomb_pair_sum_avx2, and plane_crossings_avx2 evaluates each
// detected crossing with the identical scalar expressions.

#include "qmi/simd/kernels.hpp"

#include <cmath>
#include <immintrin.h>

namespace qmi::simd::detail {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

} // namespace

double coulomb_pair_sum_avx2(const double* ax, const double* ay, const double* aw,
                             std::size_t na,
                             const double* bx, const double* by, const double* bw,
                             std::size_t nb) {
    const std::size_t nb4 = nb - nb % 4;
    __m256d acc = _mm256_setzero_pd();
    double tail = 0.0;
    for (std::size_t i = 0; i < na; ++i) {
        const __m256d xi = _mm256_set1_pd(ax[i]);
        const __m256d yi = _mm256_set1_pd(ay[i]);
        const __m256d wi = _mm256_set1_pd(aw[i]);
        __m256d row = _mm256_setzero_pd();
        for (std::size_t j = 0; j < nb4; j += 4) {
            const __m256d dx = _mm256_sub_pd(xi, _mm256_loadu_pd(bx + j));
            const __m256d dy = _mm256_sub_pd(yi, _mm256_loadu_pd(by + j));
            const __m256d r2 = _mm256_add_pd(_mm256_mul_pd(dx, dx),
                                             _mm256_mul_pd(dy, dy));
            const __m256d r = _mm256_sqrt_pd(r2);
            row = _mm256_add_pd(row, _mm256_div_pd(_mm256_loadu_pd(bw + j), r));
        }
        acc = _mm256_add_pd(acc, _mm256_mul_pd(wi, row));
        if (nb4 < nb) {
            const double x = ax[i], y = ay[i];
            double row_t = 0.0;
            for (std::size_t j = nb4; j < nb; ++j) {
                const double dx = x - bx[j];
                const double dy = y - by[j];
                row_t += bw[j] / std::sqrt(dx * dx + dy * dy);
            }
            tail += aw[i] * row_t;
        }
    }
    return hsum(acc) + tail;
}

std::size_t plane_crossings_avx2(const double* px, const double* py, const double* pz,
                                 std::size_t n_pts, double scale,
                                 double cx, double cy, double cz, double eps_z,
                                 double* out_x, double* out_y) {
    if (n_pts < 2) return 0;
    const std::size_t n_seg = n_pts - 1;
    std::size_t count = 0;

    auto placed_z = [&](std::size_t k) {
        double z = cz + scale * pz[k];
        if (z == 0.0) z = eps_z;
        return z;
    };
    auto emit = [&](std::size_t k) {
        const double z0 = placed_z(k), z1 = placed_z(k + 1);
        const double t = z0 / (z0 - z1);
        out_x[count] = cx + scale * (px[k] + t * (px[k + 1] - px[k]));
        out_y[count] = cy + scale * (py[k] + t * (py[k + 1] - py[k]));
        ++count;
    };

    const __m256d vs = _mm256_set1_pd(scale);
    const __m256d vcz = _mm256_set1_pd(cz);
    const __m256d veps = _mm256_set1_pd(eps_z);
    const __m256d vzero = _mm256_setzero_pd();

    std::size_t k = 0;
    for (; k + 4 <= n_seg; k += 4) {
        // z at segment heads k..k+3 and tails k+1..k+4.
        __m256d z0 = _mm256_add_pd(vcz, _mm256_mul_pd(vs, _mm256_loadu_pd(pz + k)));
        __m256d z1 = _mm256_add_pd(vcz, _mm256_mul_pd(vs, _mm256_loadu_pd(pz + k + 1)));
        z0 = _mm256_blendv_pd(z0, veps, _mm256_cmp_pd(z0, vzero, _CMP_EQ_OQ));
        z1 = _mm256_blendv_pd(z1, veps, _mm256_cmp_pd(z1, vzero, _CMP_EQ_OQ));
        const __m256d s0 = _mm256_cmp_pd(z0, vzero, _CMP_LT_OQ);
        const __m256d s1 = _mm256_cmp_pd(z1, vzero, _CMP_LT_OQ);
        const int mask = _mm256_movemask_pd(_mm256_xor_pd(s0, s1));
        if (mask == 0) continue;
        for (int lane = 0; lane < 4; ++lane) {
            if (mask & (1 << lane)) emit(k + static_cast<std::size_t>(lane));
        }
    }
    for (; k < n_seg; ++k) {
        const double z0 = placed_z(k), z1 = placed_z(k + 1);
        if ((z0 < 0.0) != (z1 < 0.0)) emit(k);
    }
    return count;
}

} // namespace qmi::simd::detail
