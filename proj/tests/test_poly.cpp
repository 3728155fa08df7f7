#include <cmath>
#include <cstdint>
#include <map>

#include "amoebalink/poly.hpp"
#include "doctest.h"

using namespace amoebalink;

namespace {

uint64_t rng_state = 0x243f6a8885a308d3ull;
uint64_t next_u64() {
    uint64_t x = (rng_state += 0x9e3779b97f4a7c15ull);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}
int rnd_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
}
double rnd_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

// Independent oracle: count lattice points on the closed segment by scanning
// the bounding box.
long long lattice_points_brute(Exp a, Exp b) {
    long long count = 0;
    int xlo = std::min(a.i, b.i), xhi = std::max(a.i, b.i);
    int ylo = std::min(a.j, b.j), yhi = std::max(a.j, b.j);
    long long dx = b.i - a.i, dy = b.j - a.j;
    for (int x = xlo; x <= xhi; ++x) {
        for (int y = ylo; y <= yhi; ++y) {
            long long cx = (x - a.i) * dy - (y - a.j) * dx;
            if (cx == 0) ++count;
        }
    }
    return count;
}

LaurentPolynomial random_poly() {
    std::map<Exp, Complex> terms;
    int nterms = rnd_int(1, 8);
    for (int t = 0; t < nterms; ++t) {
        Exp e{rnd_int(-5, 5), rnd_int(-5, 5)};
        double mag = std::pow(10.0, rnd_unit() * 6.0 - 3.0);
        Complex c = (rnd_int(0, 1) == 0)
                        ? Complex(mag * (rnd_unit() - 0.5) * 2.0, 0.0)
                        : Complex(mag * (rnd_unit() - 0.5), mag * (rnd_unit() - 0.5));
        if (std::abs(c) > LaurentPolynomial::kPruneTol) terms[e] = c;
    }
    if (terms.empty()) terms[{0, 0}] = 1.0;
    return LaurentPolynomial(terms);
}

LatticeMatrix random_unimodular() {
    // random product of shears and swaps
    long long a = 1, b = 0, c = 0, d = 1;
    for (int k = 0; k < 6; ++k) {
        int s = rnd_int(-3, 3);
        if (rnd_int(0, 1) == 0) {  // column op
            b += s * a;
            d += s * c;
        } else {
            a += s * b;
            c += s * d;
        }
        if (rnd_int(0, 3) == 0) {
            std::swap(a, b);
            std::swap(c, d);
        }
    }
    return {a, b, c, d};
}

LatticeMatrix mat_mul(const LatticeMatrix& x, const LatticeMatrix& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

}  // namespace

TEST_CASE("parse_polynomial examples") {
    auto p = parse_polynomial("1 + 2z + 2w + z*w");
    REQUIRE(p.support_size() == 4);
    CHECK(p.coeff({0, 0}) == Complex(1.0));
    CHECK(p.coeff({1, 0}) == Complex(2.0));
    CHECK(p.coeff({0, 1}) == Complex(2.0));
    CHECK(p.coeff({1, 1}) == Complex(1.0));

    auto cusp = parse_polynomial("w^2 - z^3");
    REQUIRE(cusp.support_size() == 2);
    CHECK(cusp.coeff({0, 2}) == Complex(1.0));
    CHECK(cusp.coeff({3, 0}) == Complex(-1.0));

    auto fig9 = parse_polynomial("1 + tau*z^2 + tau*w^3 + z^2*w^3", 0.5);
    REQUIRE(fig9.support_size() == 4);
    CHECK(fig9.coeff({0, 0}) == Complex(1.0));
    CHECK(fig9.coeff({2, 0}) == Complex(0.5));
    CHECK(fig9.coeff({0, 3}) == Complex(0.5));
    CHECK(fig9.coeff({2, 3}) == Complex(1.0));
}

TEST_CASE("parse_polynomial grammar corners") {
    // z1/z2 aliases
    auto f1 = parse_polynomial("1+z1^2*z2^3+z1^3*z2");
    CHECK(f1.coeff({2, 3}) == Complex(1.0));
    CHECK(f1.coeff({3, 1}) == Complex(1.0));

    // complex literals and negative exponents
    auto q = parse_polynomial("(0,1)*z^-2 - (1.5,-2)w");
    CHECK(q.coeff({-2, 0}) == Complex(0.0, 1.0));
    CHECK(q.coeff({0, 1}) == Complex(-1.5, 2.0));

    // like terms combine before pruning
    auto s = parse_polynomial("z + z + w");
    CHECK(s.coeff({1, 0}) == Complex(2.0));

    CHECK_THROWS_AS(parse_polynomial("1 + $"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("tau*z"), ParseError);          // no tau value
    CHECK_THROWS_AS(parse_polynomial("z - z"), ParseError);          // all terms cancel
    CHECK_THROWS_AS(parse_polynomial("(1,2*z"), ParseError);         // broken literal
    CHECK_THROWS_AS(parse_polynomial("z^1.5"), ParseError);          // non-integer power
    CHECK_THROWS_AS(parse_polynomial(""), ParseError);

    bool threw = false;
    try {
        parse_polynomial("1 + 2z + %");
    } catch (const ParseError& e) {
        threw = true;
        CHECK(e.offset == 9);
    }
    CHECK(threw);
}

TEST_CASE("canonical printer round-trips exactly") {
    for (int k = 0; k < 200; ++k) {
        LaurentPolynomial p = random_poly();
        LaurentPolynomial q = parse_polynomial(to_string(p));
        CHECK(p == q);
    }
    // spot-check the canonical shape
    auto cusp = parse_polynomial("w^2 - z^3");
    CHECK(to_string(cusp) == "w^2 - z^3");
    CHECK(to_string(parse_polynomial("1+0.5z")) == "1 + 0.5*z");
}

TEST_CASE("evaluate") {
    auto cusp = parse_polynomial("w^2 - z^3");
    CHECK(std::abs(evaluate(cusp, 1.0, 1.0)) == 0.0);

    // closed form w = -(1+2z)/(2+z) at z = 1 gives w = -1
    auto ly = parse_polynomial("1+2z+2w+zw");
    CHECK(std::abs(evaluate(ly, 1.0, -1.0)) == 0.0);

    auto zw = parse_polynomial("z*w");
    CHECK(evaluate(zw, Complex(0, 2), 3.0) == Complex(0, 6));

    auto laurent = parse_polynomial("z^-1");
    CHECK_THROWS_AS(evaluate(laurent, 0.0, 1.0), Error);
}

TEST_CASE("partial_derivative") {
    auto cusp = parse_polynomial("w^2 - z^3");
    auto dw = partial_derivative(cusp, Var::W);
    REQUIRE(dw.support_size() == 1);
    CHECK(dw.coeff({0, 1}) == Complex(2.0));
    auto dz = partial_derivative(cusp, Var::Z);
    REQUIRE(dz.support_size() == 1);
    CHECK(dz.coeff({2, 0}) == Complex(-3.0));
    auto zero = partial_derivative(parse_polynomial("1"), Var::Z);
    CHECK(zero.is_zero());
}

TEST_CASE("newton_polygon") {
    auto line = newton_polygon(parse_polynomial("1+z+w"));
    CHECK(line.vertices == std::vector<Exp>{{0, 0}, {1, 0}, {0, 1}});
    CHECK(line.twice_area == 1);
    CHECK(line.dimension() == 2);

    auto f1 = newton_polygon(parse_polynomial("1+z1^2*z2^3+z1^3*z2"));
    CHECK(f1.vertices == std::vector<Exp>{{0, 0}, {3, 1}, {2, 3}});
    CHECK(f1.twice_area == 7);

    auto square = newton_polygon(parse_polynomial("1+z^2+w^2+z^2w^2"));
    CHECK(square.vertices == std::vector<Exp>{{0, 0}, {2, 0}, {2, 2}, {0, 2}});
    CHECK(square.twice_area == 8);

    auto seg = newton_polygon(parse_polynomial("w^2 - z^3"));
    CHECK(seg.dimension() == 1);
    CHECK(seg.twice_area == 0);

    auto pt = newton_polygon(parse_polynomial("z^2*w^3"));
    CHECK(pt.dimension() == 0);
}

TEST_CASE("apply_matrix") {
    auto f = parse_polynomial("1+tau*z+tau*w+z*w", 0.7);
    auto diag = apply_matrix(f, LatticeMatrix::diagonal(3, 2));
    CHECK(diag.coeff({3, 0}) == Complex(0.7));
    CHECK(diag.coeff({0, 2}) == Complex(0.7));
    CHECK(diag.coeff({3, 2}) == Complex(1.0));
    CHECK(diag.coeff({0, 0}) == Complex(1.0));

    CHECK(apply_matrix(f, LatticeMatrix{}) == f);

    auto sheared = apply_matrix(f, LatticeMatrix{2, 2, 2, 3});
    CHECK(sheared.coeff({2, 2}) == Complex(0.7));
    CHECK(sheared.coeff({2, 3}) == Complex(0.7));
    CHECK(sheared.coeff({4, 5}) == Complex(1.0));

    CHECK_THROWS_AS(apply_matrix(f, LatticeMatrix{1, 1, 1, 1}), Error);
}

TEST_CASE("apply_matrix composes and preserves support size") {
    for (int k = 0; k < 50; ++k) {
        LaurentPolynomial p = random_poly();
        LatticeMatrix l1 = random_unimodular();
        LatticeMatrix l2 = random_unimodular();
        auto once = apply_matrix(p, mat_mul(l1, l2));
        auto twice = apply_matrix(apply_matrix(p, l2), l1);
        CHECK(once == twice);
        CHECK(once.support_size() == p.support_size());
    }
}

TEST_CASE("twice-area of a transformed unit square scales by |det|") {
    auto f = parse_polynomial("1+z+w+z*w");
    for (int k = 0; k < 30; ++k) {
        LatticeMatrix l = random_unimodular();
        l.a *= 2;  // leave unimodularity on purpose
        if (l.det() == 0) continue;
        auto np = newton_polygon(apply_matrix(f, l));
        CHECK(np.twice_area == 2 * std::llabs(l.det()));
    }
}

TEST_CASE("integer_length") {
    CHECK(integer_length({{2, 2}, {2, 3}}) == 1);
    CHECK(integer_length({{0, 0}, {0, 0}}) == 0);
    CHECK(integer_length({{0, 0}, {4, 6}}) == 2);

    // exhaustive small box against the brute-force count
    for (int ax = -6; ax <= 6; ax += 2) {
        for (int ay = -6; ay <= 6; ay += 3) {
            for (int bx = -6; bx <= 6; ++bx) {
                for (int by = -6; by <= 6; ++by) {
                    Exp a{ax, ay}, b{bx, by};
                    CHECK(integer_length({a, b}) == lattice_points_brute(a, b) - 1);
                }
            }
        }
    }
    // random segments over the full [-20, 20]^2 range
    for (int k = 0; k < 500; ++k) {
        Exp a{rnd_int(-20, 20), rnd_int(-20, 20)};
        Exp b{rnd_int(-20, 20), rnd_int(-20, 20)};
        CHECK(integer_length({a, b}) == lattice_points_brute(a, b) - 1);
    }
}
