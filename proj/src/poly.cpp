#include "amoebalink/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>

namespace amoebalink {

long long integer_length(const LatticeSegment& s) {
    long long dx = std::llabs(static_cast<long long>(s.b.i) - s.a.i);
    long long dy = std::llabs(static_cast<long long>(s.b.j) - s.a.j);
    return std::gcd(dx, dy);
}

LaurentPolynomial::LaurentPolynomial(std::map<Exp, Complex> terms) : terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) < kPruneTol)
            it = terms_.erase(it);
        else
            ++it;
    }
}

Complex LaurentPolynomial::coeff(Exp e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Complex(0.0) : it->second;
}

double LaurentPolynomial::coeff_scale() const {
    double s = 0.0;
    for (const auto& [e, c] : terms_) s = std::max(s, std::abs(c));
    return s;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Lexer {
    const std::string& text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    double number() {
        skip_ws();
        const char* start = text.c_str() + pos;
        char* end = nullptr;
        double v = std::strtod(start, &end);
        if (end == start) throw ParseError("expected number", pos);
        pos += static_cast<size_t>(end - start);
        return v;
    }

    // Signed integer with no fractional part, used for exponents.
    int integer() {
        skip_ws();
        size_t at = pos;
        int sign = 1;
        if (accept('-'))
            sign = -1;
        else
            accept('+');
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            throw ParseError("expected integer exponent", at);
        long long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            if (v > 1000000) throw ParseError("exponent out of range", at);
            ++pos;
        }
        if (pos < text.size() && text[pos] == '.')
            throw ParseError("exponent must be an integer", at);
        return static_cast<int>(sign * v);
    }

    // Longest known symbol at the cursor: "tau", "z1", "z2", "z", or "w".
    // Juxtaposed variables like "zw" are two tokens.
    std::string symbol() {
        skip_ws();
        size_t at = pos;
        auto digit_after = [&](size_t p) {
            return p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]));
        };
        if (text.compare(pos, 3, "tau") == 0) {
            pos += 3;
            return "tau";
        }
        char c = text[pos];
        if (c == 'z') {
            if (pos + 1 < text.size() && (text[pos + 1] == '1' || text[pos + 1] == '2') &&
                !digit_after(pos + 2)) {
                pos += 2;
                return text.substr(at, 2);
            }
            ++pos;
            return "z";
        }
        if (c == 'w') {
            ++pos;
            return "w";
        }
        throw ParseError("unknown symbol", at);
    }
};

struct TermAccum {
    Complex coeff = 1.0;
    int i = 0;
    int j = 0;
};

bool starts_factor(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' ||
           std::isalpha(static_cast<unsigned char>(c));
}

void parse_factor(Lexer& lx, TermAccum& acc, const std::optional<double>& tau) {
    size_t at = lx.pos;
    char c = lx.peek();
    if (c == '(') {
        lx.accept('(');
        double re = lx.number();
        if (!lx.accept(',')) throw ParseError("expected ',' in complex literal", lx.pos);
        double im = lx.number();
        if (!lx.accept(')')) throw ParseError("expected ')' in complex literal", lx.pos);
        acc.coeff *= Complex(re, im);
        return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        acc.coeff *= lx.number();
        return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
        std::string name = lx.symbol();
        if (name == "tau") {
            if (!tau) throw ParseError("'tau' used but no value supplied", at);
            acc.coeff *= *tau;
            return;
        }
        int e = 1;
        if (lx.accept('^')) e = lx.integer();
        if (name == "z" || name == "z1")
            acc.i += e;
        else
            acc.j += e;
        return;
    }
    throw ParseError("expected a term", at);
}

}  // namespace

LaurentPolynomial parse_polynomial(const std::string& text, std::optional<double> tau) {
    Lexer lx{text};
    std::map<Exp, Complex> terms;
    bool first = true;
    while (!lx.eof()) {
        double sign = 1.0;
        if (lx.accept('-'))
            sign = -1.0;
        else if (!lx.accept('+') && !first)
            throw ParseError("expected '+' or '-' between terms", lx.pos);
        first = false;
        if (lx.eof()) throw ParseError("dangling sign", lx.pos);
        if (!starts_factor(lx.peek())) throw ParseError("expected a term", lx.pos);

        TermAccum acc;
        parse_factor(lx, acc, tau);
        for (;;) {
            if (lx.accept('*')) {
                parse_factor(lx, acc, tau);
                continue;
            }
            if (!lx.eof() && starts_factor(lx.peek()) && lx.peek() != '+' && lx.peek() != '-') {
                parse_factor(lx, acc, tau);
                continue;
            }
            break;
        }
        terms[{acc.i, acc.j}] += sign * acc.coeff;
    }
    if (terms.empty()) throw ParseError("empty polynomial", text.size());
    LaurentPolynomial p(std::move(terms));
    if (p.is_zero()) throw ParseError("all terms cancel", text.size());
    return p;
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void append_vars(std::string& out, Exp e, bool have_coeff) {
    bool any = have_coeff;
    if (e.i != 0) {
        if (any) out += "*";
        out += "z";
        if (e.i != 1) out += "^" + std::to_string(e.i);
        any = true;
    }
    if (e.j != 0) {
        if (any) out += "*";
        out += "w";
        if (e.j != 1) out += "^" + std::to_string(e.j);
    }
}

}  // namespace

std::string to_string(const LaurentPolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        bool has_vars = (e.i != 0 || e.j != 0);
        if (c.imag() != 0.0) {
            if (!first) out += " + ";
            out += "(" + fmt17(c.real()) + "," + fmt17(c.imag()) + ")";
            append_vars(out, e, true);
        } else {
            double r = c.real();
            if (first) {
                if (r < 0) out += "-";
            } else {
                out += (r < 0) ? " - " : " + ";
            }
            double mag = std::abs(r);
            bool print_coeff = (mag != 1.0) || !has_vars;
            if (print_coeff) out += fmt17(mag);
            append_vars(out, e, print_coeff);
        }
        first = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation and calculus
// ---------------------------------------------------------------------------

Complex complex_ipow(Complex base, long long e) {
    if (e < 0) {
        if (base == Complex(0.0)) throw Error("zero base with negative exponent");
        base = 1.0 / base;
        e = -e;
    }
    Complex r = 1.0;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

Complex evaluate(const LaurentPolynomial& p, Complex z, Complex w) {
    Complex acc = 0.0;
    for (const auto& [e, c] : p.terms()) acc += c * complex_ipow(z, e.i) * complex_ipow(w, e.j);
    return acc;
}

LaurentPolynomial partial_derivative(const LaurentPolynomial& p, Var var) {
    std::map<Exp, Complex> out;
    for (const auto& [e, c] : p.terms()) {
        if (var == Var::Z) {
            if (e.i == 0) continue;
            out[{e.i - 1, e.j}] += c * static_cast<double>(e.i);
        } else {
            if (e.j == 0) continue;
            out[{e.i, e.j - 1}] += c * static_cast<double>(e.j);
        }
    }
    return LaurentPolynomial(std::move(out));
}

// ---------------------------------------------------------------------------
// Lattice geometry
// ---------------------------------------------------------------------------

namespace {

long long cross(Exp o, Exp a, Exp b) {
    return static_cast<long long>(a.i - o.i) * (b.j - o.j) -
           static_cast<long long>(a.j - o.j) * (b.i - o.i);
}

}  // namespace

std::vector<Exp> convex_hull(std::vector<Exp> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    size_t n = pts.size();
    if (n <= 1) return pts;
    std::vector<Exp> hull(2 * n);
    size_t k = 0;
    for (size_t idx = 0; idx < n; ++idx) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[idx]) <= 0) --k;
        hull[k++] = pts[idx];
    }
    size_t lower = k + 1;
    for (size_t idx = n - 1; idx-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[idx]) <= 0) --k;
        hull[k++] = pts[idx];
    }
    hull.resize(k - 1);
    if (hull.size() == 2 && hull[0] == hull[1]) hull.resize(1);
    return hull;
}

NewtonPolygon newton_polygon(const LaurentPolynomial& p) {
    if (p.is_zero()) throw Error("newton_polygon of the zero polynomial");
    std::vector<Exp> pts;
    pts.reserve(p.support_size());
    for (const auto& [e, c] : p.terms()) pts.push_back(e);

    NewtonPolygon poly;
    if (pts.size() == 1) {
        poly.vertices = pts;
        return poly;
    }
    std::vector<Exp> hull = convex_hull(pts);
    if (hull.size() <= 2) {
        // collinear support: the two extreme points, twice_area stays 0
        poly.vertices = hull;
        return poly;
    }
    poly.vertices = hull;
    long long area2 = 0;
    for (size_t k = 0; k < hull.size(); ++k) {
        const Exp& u = hull[k];
        const Exp& v = hull[(k + 1) % hull.size()];
        area2 += static_cast<long long>(u.i) * v.j - static_cast<long long>(u.j) * v.i;
    }
    poly.twice_area = std::llabs(area2);
    return poly;
}

LaurentPolynomial apply_matrix(const LaurentPolynomial& p, const LatticeMatrix& L) {
    if (L.det() == 0) throw Error("apply_matrix: singular lattice matrix");
    std::map<Exp, Complex> out;
    for (const auto& [e, c] : p.terms()) {
        Exp m{static_cast<int>(L.a * e.i + L.b * e.j), static_cast<int>(L.c * e.i + L.d * e.j)};
        out[m] += c;
    }
    return LaurentPolynomial(std::move(out));
}

}  // namespace amoebalink
