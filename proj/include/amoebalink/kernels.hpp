#pragma once

// Batch kernels for the sampling inner loops, with a scalar reference
// implementation and an AVX2 variant selected once at startup. Complex data
// is passed as split re/im arrays.
//
//   horner_many      one complex polynomial evaluated at many complex points
//   wrap_unit        angles reduced to [0,1) fractions of a full turn
//   cplx_ratio_many  elementwise a/b for complex arrays

#include <cstddef>

namespace amoebalink::kern {

using HornerFn = void (*)(const double* cre, const double* cim, size_t ncoef,
                          const double* xre, const double* xim, size_t n,
                          double* outre, double* outim);
using WrapFn = void (*)(const double* theta, size_t n, double* out);
using RatioFn = void (*)(const double* are, const double* aim,
                         const double* bre, const double* bim, size_t n,
                         double* outre, double* outim);

struct Kernels {
    const char* name;
    HornerFn horner_many;
    WrapFn wrap_unit;
    RatioFn cplx_ratio_many;
};

// Active implementation, chosen at first use from CPU features.
const Kernels& active();

// Named implementations, kept callable for equivalence tests.
const Kernels& scalar_kernels();
const Kernels* avx2_kernels();  // nullptr when unavailable (build or CPU)

inline void horner_many(const double* cre, const double* cim, size_t ncoef,
                        const double* xre, const double* xim, size_t n,
                        double* outre, double* outim) {
    active().horner_many(cre, cim, ncoef, xre, xim, n, outre, outim);
}

inline void wrap_unit(const double* theta, size_t n, double* out) {
    active().wrap_unit(theta, n, out);
}

inline void cplx_ratio_many(const double* are, const double* aim,
                            const double* bre, const double* bim, size_t n,
                            double* outre, double* outim) {
    active().cplx_ratio_many(are, aim, bre, bim, n, outre, outim);
}

}  // namespace amoebalink::kern
