#pragma once

// Sparse Laurent polynomials in two variables over complex doubles, plus the
// lattice geometry that hangs off their exponent supports: Newton polygons,
// integer segment lengths, and monomial changes of coordinates.

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace amoebalink {

using Complex = std::complex<double>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parse failure with the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, size_t at)
        : Error(msg + " (at byte " + std::to_string(at) + ")"), offset(at) {}
    size_t offset;
};

// Exponent vector (i, j) of a monomial z^i w^j. Negative entries are legal.
struct Exp {
    int i = 0;
    int j = 0;
    auto operator<=>(const Exp&) const = default;
};

// 2x2 integer matrix with columns (a,c) and (b,d); must be invertible over Q.
struct LatticeMatrix {
    long long a = 1, b = 0, c = 0, d = 1;
    long long det() const { return a * d - b * c; }
    static LatticeMatrix diagonal(long long p, long long q) { return {p, 0, 0, q}; }
};

struct LatticeSegment {
    Exp a;
    Exp b;
};

// Number of lattice points on [a,b] minus one; equals gcd of the coordinate
// deltas, with gcd(0,0) = 0 for a degenerate segment.
long long integer_length(const LatticeSegment& s);

class LaurentPolynomial {
public:
    // Terms with modulus below this are dropped after any term combination.
    static constexpr double kPruneTol = 1e-14;

    LaurentPolynomial() = default;  // the zero polynomial
    explicit LaurentPolynomial(std::map<Exp, Complex> terms);

    const std::map<Exp, Complex>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t support_size() const { return terms_.size(); }
    Complex coeff(Exp e) const;
    double coeff_scale() const;  // max |a_alpha|, 0 for the zero polynomial

    bool operator==(const LaurentPolynomial& other) const { return terms_ == other.terms_; }

private:
    std::map<Exp, Complex> terms_;
};

// Grammar: sum of terms; a term is a '*'-or-juxtaposition product of factors;
// a factor is a decimal literal, a complex literal "(re,im)", the symbol
// "tau", or a variable z/w (aliases z1/z2) with an optional ^<signed int>.
// Whitespace is ignored. "tau" requires a supplied value.
LaurentPolynomial parse_polynomial(const std::string& text,
                                   std::optional<double> tau = std::nullopt);

// Canonical form: terms in lexicographic exponent order, coefficients with 17
// significant digits. parse_polynomial(to_string(p)) reproduces p exactly.
std::string to_string(const LaurentPolynomial& p);

// Sum of a_alpha z^i w^j with integer powers computed by repeated squaring.
// Throws on a zero base raised to a negative exponent.
Complex evaluate(const LaurentPolynomial& p, Complex z, Complex w);

Complex complex_ipow(Complex base, long long e);

enum class Var { Z, W };

// Term-wise derivative; exponent-zero terms drop. May return the zero polynomial.
LaurentPolynomial partial_derivative(const LaurentPolynomial& p, Var var);

struct NewtonPolygon {
    std::vector<Exp> vertices;  // counter-clockwise, strictly convex
    long long twice_area = 0;   // 0 for a segment or a point
    int dimension() const {
        return vertices.size() >= 3 ? 2 : static_cast<int>(vertices.size()) - 1;
    }
};

NewtonPolygon newton_polygon(const LaurentPolynomial& p);

// CCW convex hull of distinct lattice points, collinear interior points removed.
// Degenerates to two points (segment) or one point. Shared with the tropical code.
std::vector<Exp> convex_hull(std::vector<Exp> pts);

// Exponent substitution alpha -> L(alpha); coefficients unchanged. Throws if
// det L = 0, which would collapse distinct monomials.
LaurentPolynomial apply_matrix(const LaurentPolynomial& p, const LatticeMatrix& L);

}  // namespace amoebalink
