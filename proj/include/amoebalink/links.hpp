#pragma once

// Torus links of quasi-homogeneous plane-curve singularities and of Lee-Yang
// unit-torus fibers, with closed-form gcd component counts next to traced
// curves so each can check the other.

#include <array>
#include <string>
#include <vector>

#include "amoebalink/poly.hpp"
#include "amoebalink/roots.hpp"
#include "amoebalink/tropical.hpp"  // Rat

namespace amoebalink {

class NotQuasiHomogeneousError : public Error {
public:
    using Error::Error;
};

// Support line exists but has the wrong orientation (mu <= 0, vertical or
// horizontal), which the substitution w = t z^mu cannot handle.
class OrientationError : public Error {
public:
    using Error::Error;
};

struct RationalSlope {
    int p = 1;
    int q = 1;  // positive; gcd(p, q) = 1 after construction
    RationalSlope() = default;
    RationalSlope(long long pp, long long qq);
    double value() const { return static_cast<double>(p) / q; }
};

struct QuasiHomogeneousData {
    RationalSlope mu;               // w = t z^mu
    Rat c;                          // common value of i + mu j over the support
    std::vector<Complex> h_coeffs;  // h(t), ascending from t^j_min
    int j_min = 0;
};

// Splits f(z, t z^mu) = z^c h(t). Throws NotQuasiHomogeneousError when the
// support is not collinear and OrientationError when the line is vertical,
// horizontal, or has mu <= 0.
QuasiHomogeneousData quasi_homogeneous_decompose(const LaurentPolynomial& p);

// One closed torus line arg(w) = offset + (n/m) arg(z) with primitive
// homology (m, n); m > 0 (or m = 0, n > 0) and the offset is the smallest
// nonnegative theta2-intercept over all lifts, so lies in [0, 2*pi/m).
struct TorusGeodesic {
    int m = 1;
    int n = 0;
    double offset = 0.0;
    int multiplicity = 1;
};

struct TracedLoop {
    std::vector<std::array<double, 2>> points;  // torus-reduced polyline
    int m = 0, n = 0;                           // winding numbers, canonical sign
    double closure_gap = 0.0;                   // lifted endpoint mismatch mod 2*pi*Z^2
};

enum class LinkSource { FORMULA, TRACED };

struct TorusLink {
    LinkSource source = LinkSource::FORMULA;
    std::vector<TorusGeodesic> geodesics;  // FORMULA links
    std::vector<TracedLoop> loops;         // TRACED links
    size_t component_count() const {
        return source == LinkSource::FORMULA ? geodesics.size() : loops.size();
    }
};

// Link of the singularity at the origin: roots of h(t) become torus lines,
// merged into geodesics when their phases agree mod 2*pi/q.
TorusLink singularity_link(const LaurentPolynomial& p,
                           const SolverConfig& cfg = SolverConfig{});

// gcd(p, q): component count of the T(p,q) link.
long long count_components_closed_form(long long pp, long long qq);

// Phase of w = -(1 + tau e^{i theta}) / (tau + e^{i theta}); the modulus of
// that expression is identically 1 on the unit circle.
double lee_yang_base_curve(double tau, double theta);

enum class TauRegime { TAU_LT_1, TAU_GT_1 };

// Component count of the unit-torus fiber by the closed gcd formulas:
// tau > 1 gives |gcd(b-a, d-c)|, 0 < tau < 1 gives |gcd(a+b, c+d)|.
long long count_components_lee_yang(const LatticeMatrix& L, TauRegime regime);

// Traces the fiber {(alpha, beta) : L^T (alpha, beta) = (theta, phi(theta))}
// through all det(L) branches of the integer-linear congruence and closes the
// loops; reports each loop's homology class.
TorusLink unit_fiber_link(const LatticeMatrix& L, double tau, int theta_steps = 4096);

// unit_fiber_link with L = diag(p, q); throws if the traced component count
// disagrees with gcd(p, q).
TorusLink diagonal_pq_link(int p, int q, double tau, int theta_steps = 4096);

struct LinkDescription {
    size_t components = 0;
    std::vector<std::array<int, 2>> homology;  // per component
    std::string label;
};

LinkDescription classify_link(const TorusLink& link);

}  // namespace amoebalink
