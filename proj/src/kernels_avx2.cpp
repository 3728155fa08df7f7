// AVX2 kernel variants. This translation unit is compiled with -mavx2 -mfma;
// avx2_kernels() gates on the running CPU so the rest of the binary stays
// generic.

#include "amoebalink/kernels.hpp"

#ifdef AMOEBALINK_AVX2_TU
#include <immintrin.h>

#include <cmath>

namespace amoebalink::kern {

namespace {

void horner_many_avx2(const double* cre, const double* cim, size_t ncoef,
                      const double* xre, const double* xim, size_t n,
                      double* outre, double* outim) {
    if (ncoef == 0) {
        for (size_t k = 0; k < n; ++k) outre[k] = outim[k] = 0.0;
        return;
    }
    size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d xr = _mm256_loadu_pd(xre + k);
        __m256d xi = _mm256_loadu_pd(xim + k);
        __m256d yr = _mm256_set1_pd(cre[ncoef - 1]);
        __m256d yi = _mm256_set1_pd(cim[ncoef - 1]);
        for (size_t c = ncoef - 1; c-- > 0;) {
            // (yr + i yi) * (xr + i xi) + coeff
            __m256d nr = _mm256_fmadd_pd(yr, xr, _mm256_set1_pd(cre[c]));
            nr = _mm256_fnmadd_pd(yi, xi, nr);
            __m256d ni = _mm256_fmadd_pd(yr, xi, _mm256_set1_pd(cim[c]));
            ni = _mm256_fmadd_pd(yi, xr, ni);
            yr = nr;
            yi = ni;
        }
        _mm256_storeu_pd(outre + k, yr);
        _mm256_storeu_pd(outim + k, yi);
    }
    for (; k < n; ++k) {
        double yr = cre[ncoef - 1];
        double yi = cim[ncoef - 1];
        for (size_t c = ncoef - 1; c-- > 0;) {
            double nr = std::fma(yr, xre[k], cre[c]) - yi * xim[k];
            double ni = std::fma(yr, xim[k], cim[c]) + yi * xre[k];
            yr = nr;
            yi = ni;
        }
        outre[k] = yr;
        outim[k] = yi;
    }
}

void wrap_unit_avx2(const double* theta, size_t n, double* out) {
    const __m256d inv = _mm256_set1_pd(0.15915494309189533577);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d u = _mm256_mul_pd(_mm256_loadu_pd(theta + k), inv);
        u = _mm256_sub_pd(u, _mm256_floor_pd(u));
        __m256d ge1 = _mm256_cmp_pd(u, one, _CMP_GE_OQ);
        u = _mm256_blendv_pd(u, zero, ge1);
        _mm256_storeu_pd(out + k, u);
    }
    for (; k < n; ++k) {
        double u = theta[k] * 0.15915494309189533577;
        u -= std::floor(u);
        if (u >= 1.0) u = 0.0;
        out[k] = u;
    }
}

void cplx_ratio_many_avx2(const double* are, const double* aim,
                          const double* bre, const double* bim, size_t n,
                          double* outre, double* outim) {
    size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d ar = _mm256_loadu_pd(are + k);
        __m256d ai = _mm256_loadu_pd(aim + k);
        __m256d br = _mm256_loadu_pd(bre + k);
        __m256d bi = _mm256_loadu_pd(bim + k);
        __m256d den = _mm256_fmadd_pd(br, br, _mm256_mul_pd(bi, bi));
        __m256d nr = _mm256_fmadd_pd(ar, br, _mm256_mul_pd(ai, bi));
        __m256d ni = _mm256_fnmadd_pd(ar, bi, _mm256_mul_pd(ai, br));
        _mm256_storeu_pd(outre + k, _mm256_div_pd(nr, den));
        _mm256_storeu_pd(outim + k, _mm256_div_pd(ni, den));
    }
    for (; k < n; ++k) {
        double d = bre[k] * bre[k] + bim[k] * bim[k];
        outre[k] = (are[k] * bre[k] + aim[k] * bim[k]) / d;
        outim[k] = (aim[k] * bre[k] - are[k] * bim[k]) / d;
    }
}

const Kernels kAvx2{"avx2", horner_many_avx2, wrap_unit_avx2, cplx_ratio_many_avx2};

}  // namespace

const Kernels* avx2_kernels() {
    static const Kernels* k = [] {
        return (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
                   ? &kAvx2
                   : static_cast<const Kernels*>(nullptr);
    }();
    return k;
}

}  // namespace amoebalink::kern

#else

namespace amoebalink::kern {
const Kernels* avx2_kernels() { return nullptr; }
}  // namespace amoebalink::kern

#endif  // AMOEBALINK_AVX2_TU
