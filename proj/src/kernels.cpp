#include "amoebalink/kernels.hpp"

#include <cmath>

namespace amoebalink::kern {

namespace {

constexpr double kTwoPiInv = 0.15915494309189533577;  // 1/(2*pi)

void horner_many_ref(const double* cre, const double* cim, size_t ncoef,
                     const double* xre, const double* xim, size_t n,
                     double* outre, double* outim) {
    if (ncoef == 0) {
        for (size_t k = 0; k < n; ++k) outre[k] = outim[k] = 0.0;
        return;
    }
    for (size_t k = 0; k < n; ++k) {
        double yr = cre[ncoef - 1];
        double yi = cim[ncoef - 1];
        double xr = xre[k];
        double xi = xim[k];
        for (size_t c = ncoef - 1; c-- > 0;) {
            double nr = yr * xr - yi * xi + cre[c];
            double ni = yr * xi + yi * xr + cim[c];
            yr = nr;
            yi = ni;
        }
        outre[k] = yr;
        outim[k] = yi;
    }
}

void wrap_unit_ref(const double* theta, size_t n, double* out) {
    for (size_t k = 0; k < n; ++k) {
        double u = theta[k] * kTwoPiInv;
        u -= std::floor(u);
        if (u >= 1.0) u = 0.0;  // frac of a tiny negative rounds up to 1.0
        out[k] = u;
    }
}

void cplx_ratio_many_ref(const double* are, const double* aim,
                         const double* bre, const double* bim, size_t n,
                         double* outre, double* outim) {
    for (size_t k = 0; k < n; ++k) {
        double d = bre[k] * bre[k] + bim[k] * bim[k];
        outre[k] = (are[k] * bre[k] + aim[k] * bim[k]) / d;
        outim[k] = (aim[k] * bre[k] - are[k] * bim[k]) / d;
    }
}

const Kernels kScalar{"scalar", horner_many_ref, wrap_unit_ref, cplx_ratio_many_ref};

const Kernels* pick() {
#if defined(__x86_64__) || defined(_M_X64)
    if (const Kernels* k = avx2_kernels()) return k;
#endif
    return &kScalar;
}

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

const Kernels& active() {
    static const Kernels* chosen = pick();
    return *chosen;
}

}  // namespace amoebalink::kern
