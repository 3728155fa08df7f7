#pragma once

// Univariate complex root finding by simultaneous Aberth-Ehrlich iteration,
// and the fiber solver f(z0, w) = 0 that every sampler is built on.

#include <cstdint>
#include <vector>

#include "amoebalink/poly.hpp"

namespace amoebalink {

struct RootSet {
    std::vector<Complex> roots;      // sorted by (re, im)
    std::vector<double> residuals;   // |poly(root)|, same order
    int zero_multiplicity = 0;       // stripped trailing-zero coefficients
    bool constant = false;           // effective degree 0: no roots, by design
    int degree_collapses = 0;        // leading coefficients trimmed as negligible
    bool cluster = false;            // some root pair closer than the cluster tolerance
    bool converged = true;           // Aberth step tolerance reached before the cap
};

struct SolverConfig {
    uint64_t seed = 0;
    int max_iterations = 200;
    double step_tol = 1e-13;
    double trim_tol = 1e-12;      // relative to max |coeff|
    double residual_tol = 1e-9;   // relative to max |coeff|
    double cluster_tol = 1e-6;    // cluster diameter and relaxed residual factor
};

// All roots of sum c_k x^k (coefficients ascending). Throws on an all-zero
// input; a nonzero constant comes back with `constant` set and no roots.
RootSet univariate_roots(const std::vector<Complex>& coeffs,
                         const SolverConfig& cfg = SolverConfig{});

struct FiberResult {
    std::vector<Complex> roots;     // torus roots w (w = 0 excluded), sorted
    std::vector<double> residuals;  // |collected poly(w)|
    int zero_multiplicity = 0;
    bool vertical = false;          // every w-coefficient vanished at z0
    bool cluster = false;
    int degree_collapses = 0;
    bool ok() const { return !vertical && !cluster; }
};

// Collects p as a polynomial in w at z = z0 and solves it. Roots failing the
// residual test are dropped and the fiber is marked clustered; samplers skip
// flagged fibers.
FiberResult solve_fiber(const LaurentPolynomial& p, Complex z0,
                        const SolverConfig& cfg = SolverConfig{});

// w-coefficients of p at z = z0: out[k] multiplies w^(jmin+k).
std::vector<Complex> collect_fiber_coeffs(const LaurentPolynomial& p, Complex z0,
                                          int& jmin_out);

}  // namespace amoebalink
