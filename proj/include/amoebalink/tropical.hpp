#pragma once

// Tropical polynomials in the max-plus convention, their corner loci, the
// regular subdivision of the Newton polygon induced by the coefficient lift,
// and the exact duality certificate connecting the two.

#include <string>
#include <vector>

#include "amoebalink/poly.hpp"

namespace amoebalink {

// Reduced fraction on int64, exact arithmetic through int128 intermediates.
struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n) : num(n) {}
    Rat(long long n, long long d);

    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(const Rat& o) const;
    Rat operator/(const Rat& o) const;
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    int cmp(const Rat& o) const;
    bool operator<(const Rat& o) const { return cmp(o) < 0; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    // Nearest fraction with denominator dividing 10^6.
    static Rat from_double(double v);
};

struct TropTerm {
    Exp e;
    Rat value;  // plays the role of val(a_alpha)
};

class TropicalPolynomial {
public:
    explicit TropicalPolynomial(std::vector<TropTerm> terms);

    // One term per line: "i j value", '#' comments and blank lines ignored.
    static TropicalPolynomial parse(const std::string& text);

    const std::vector<TropTerm>& terms() const { return terms_; }
    // Common denominator and integer lifts value*scale, used by the exact geometry.
    long long scale() const { return scale_; }
    const std::vector<long long>& lifts() const { return lifts_; }

private:
    std::vector<TropTerm> terms_;
    long long scale_ = 1;
    std::vector<long long> lifts_;
};

struct TropEval {
    double value = 0.0;
    std::vector<Exp> argmax;  // all terms within tie tolerance of the max
};

// max over terms of value + <e, x>, tie tolerance 1e-9 absolute.
TropEval trop_eval(const TropicalPolynomial& tp, double x1, double x2);

struct SubdivCell {
    std::vector<Exp> vertices;   // CCW hull; two entries for a segment cell
    std::vector<int> members;    // term indices achieving the supporting function
};

struct SubdivEdge {
    Exp a, b;                 // endpoints with a < b
    std::vector<int> cells;   // adjacent cell indices (1 = boundary, 2 = interior)
};

struct DualSubdivision {
    int dimension = 2;        // affine dimension of the support (1 or 2)
    std::vector<SubdivCell> cells;
    std::vector<SubdivEdge> edges;
};

DualSubdivision dual_subdivision(const TropicalPolynomial& tp);

struct RatPt {
    Rat x, y;
};

enum class TropEdgeKind { Bounded, Ray, Line };

struct TropCurveEdge {
    TropEdgeKind kind = TropEdgeKind::Ray;
    int v0 = -1, v1 = -1;  // vertex indices; Ray uses v0, Line uses neither
    RatPt base;            // base point for Ray and Line edges
    int dir[2] = {0, 0};   // primitive; Bounded: v0 -> v1, Ray: outward
    long long weight = 1;  // integer length of the dual edge [a, b]
    Exp dual_a, dual_b;
};

struct TropicalCurve {
    std::vector<RatPt> vertices;  // dual to the 2-cells of the subdivision
    std::vector<TropCurveEdge> edges;
};

// Corner locus of the tropical polynomial; needs at least two terms.
TropicalCurve corner_locus(const TropicalPolynomial& tp);

// Exact integer balancing test: at every vertex the weighted outgoing
// primitive directions sum to zero.
bool balanced(const TropicalCurve& curve);

struct EdgeCheck {
    size_t edge_index = 0;
    bool direction_ok = false;
    bool weight_ok = false;
    bool dual_found = false;
    bool pass() const { return direction_ok && weight_ok && dual_found; }
};

struct DualityReport {
    std::vector<EdgeCheck> edges;
    bool counts_bijective = false;
    bool vertices_match_cells = false;
    bool balanced_ok = false;
    bool pass = false;
    std::string summary;
};

// Verifies <a - b, dir> = 0 per edge, weight = intl([a,b]), and that curve
// edges biject onto subdivision edges (and vertices onto 2-cells). Throws on
// structurally unrelated inputs.
DualityReport check_duality(const TropicalCurve& curve, const DualSubdivision& subdiv);

// JSON-like dump with vertices, edges, weights, dual pairs.
std::string curve_to_text(const TropicalCurve& curve);

}  // namespace amoebalink
