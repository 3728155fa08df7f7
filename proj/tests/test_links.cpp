#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "amoebalink/links.hpp"
#include "amoebalink/poly.hpp"
#include "amoebalink/sampling.hpp"
#include "doctest.h"

using namespace amoebalink;

namespace {

double wrap_dist(double a, double b) {
    double d = std::fabs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, kTwoPi - d);
}

}  // namespace

TEST_CASE("quasi_homogeneous_decompose") {
    // powers on a slope -1/3 line: mu = 3, h(t) = t^2 + t - 2
    auto hopf = quasi_homogeneous_decompose(parse_polynomial("w^2 + z^3*w - 2z^6"));
    CHECK(hopf.mu.p == 3);
    CHECK(hopf.mu.q == 1);
    CHECK(hopf.c == Rat(6));
    REQUIRE(hopf.h_coeffs.size() == 3);
    CHECK(hopf.j_min == 0);
    CHECK(hopf.h_coeffs[0] == Complex(-2.0));
    CHECK(hopf.h_coeffs[1] == Complex(1.0));
    CHECK(hopf.h_coeffs[2] == Complex(1.0));

    // z^p - w^q: mu = p/q, h(t) = 1 - t^q
    auto cusp = quasi_homogeneous_decompose(parse_polynomial("z^3 - w^2"));
    CHECK(cusp.mu.p == 3);
    CHECK(cusp.mu.q == 2);
    CHECK(cusp.h_coeffs == std::vector<Complex>{1.0, 0.0, -1.0});

    auto lin = quasi_homogeneous_decompose(parse_polynomial("z - w"));
    CHECK(lin.mu.p == 1);
    CHECK(lin.mu.q == 1);
    CHECK(lin.c == Rat(1));
    CHECK(lin.h_coeffs == std::vector<Complex>{1.0, -1.0});

    CHECK_THROWS_AS(quasi_homogeneous_decompose(parse_polynomial("1+z+w")),
                    NotQuasiHomogeneousError);
    CHECK_THROWS_AS(quasi_homogeneous_decompose(parse_polynomial("z + z^2")),
                    OrientationError);
    CHECK_THROWS_AS(quasi_homogeneous_decompose(parse_polynomial("w + w^2")),
                    OrientationError);
    CHECK_THROWS_AS(quasi_homogeneous_decompose(parse_polynomial("1 + z*w")),
                    OrientationError);  // mu would be negative
}

TEST_CASE("singularity_link on the classic singular curves") {
    // cusp: one trefoil geodesic
    TorusLink trefoil = singularity_link(parse_polynomial("w^2 - z^3"));
    REQUIRE(trefoil.component_count() == 1);
    CHECK(trefoil.geodesics[0].m == 2);
    CHECK(trefoil.geodesics[0].n == 3);
    CHECK(trefoil.geodesics[0].offset == doctest::Approx(0.0).epsilon(1e-9));

    // two slope-3 unknots with offsets 0 and pi
    TorusLink hopf = singularity_link(parse_polynomial("w^2 + z^3*w - 2z^6"));
    REQUIRE(hopf.component_count() == 2);
    for (const TorusGeodesic& g : hopf.geodesics) {
        CHECK(g.m == 1);
        CHECK(g.n == 3);
    }
    double gap = std::fabs(hopf.geodesics[0].offset - hopf.geodesics[1].offset);
    CHECK(std::fabs(gap - M_PI) < 1e-8);

    // cinquefoil
    TorusLink cinq = singularity_link(parse_polynomial("z^5 - w^2"));
    REQUIRE(cinq.component_count() == 1);
    CHECK(cinq.geodesics[0].m == 2);
    CHECK(cinq.geodesics[0].n == 5);

    // gcd(4,2) = 2 components of reduced slope 2
    TorusLink pair = singularity_link(parse_polynomial("z^4 - w^2"));
    REQUIRE(pair.component_count() == 2);
    for (const TorusGeodesic& g : pair.geodesics) {
        CHECK(g.m == 1);
        CHECK(g.n == 2);
    }
}

TEST_CASE("singularity link component count equals gcd(p, q)") {
    for (int p = 1; p <= 12; ++p) {
        for (int q = 1; q <= 12; ++q) {
            std::string text = "z^" + std::to_string(p) + " - w^" + std::to_string(q);
            TorusLink link = singularity_link(parse_polynomial(text));
            CHECK(link.component_count() ==
                  static_cast<size_t>(count_components_closed_form(p, q)));
        }
    }
}

TEST_CASE("singularity_link with a monomial factor in w") {
    // z^2 w - w^3 = w (z - w)(z + w): the w factor is outside the torus, the
    // two lines give slope-1 geodesics at offsets 0 and pi
    TorusLink link = singularity_link(parse_polynomial("z^2*w - w^3"));
    REQUIRE(link.component_count() == 2);
    for (const TorusGeodesic& g : link.geodesics) {
        CHECK(g.m == 1);
        CHECK(g.n == 1);
    }
    CHECK(link.geodesics[0].offset == doctest::Approx(0.0));
    CHECK(link.geodesics[1].offset == doctest::Approx(M_PI));
}

TEST_CASE("singularity_link is scaling invariant") {
    auto f = parse_polynomial("w^2 + z^3*w - 2z^6");
    std::map<Exp, Complex> scaled;
    for (const auto& [e, c] : f.terms()) scaled[e] = c * Complex(2.5, -1.3);
    TorusLink a = singularity_link(f);
    TorusLink b = singularity_link(LaurentPolynomial(scaled));
    REQUIRE(a.component_count() == b.component_count());
    for (size_t k = 0; k < a.geodesics.size(); ++k) {
        CHECK(a.geodesics[k].m == b.geodesics[k].m);
        CHECK(a.geodesics[k].n == b.geodesics[k].n);
        CHECK(std::fabs(a.geodesics[k].offset - b.geodesics[k].offset) < 1e-9);
        CHECK(a.geodesics[k].multiplicity == b.geodesics[k].multiplicity);
    }
}

TEST_CASE("count_components_closed_form") {
    CHECK(count_components_closed_form(3, 2) == 1);
    CHECK(count_components_closed_form(4, 2) == 2);
    CHECK(count_components_closed_form(6, 9) == 3);
    CHECK_THROWS_AS(count_components_closed_form(0, 2), Error);
}

TEST_CASE("lee_yang_base_curve") {
    CHECK(wrap_dist(lee_yang_base_curve(0.5, 0.0), M_PI) < 1e-12);
    CHECK(wrap_dist(lee_yang_base_curve(2.0, M_PI), 0.0) < 1e-12);
    for (double tau : {0.5, 2.0}) {
        double worst = 0.0;
        for (int k = 0; k < 10000; ++k) {
            double theta = kTwoPi * k / 10000.0;
            Complex z = std::exp(Complex(0.0, theta));
            Complex w = -(1.0 + tau * z) / (tau + z);
            worst = std::max(worst, std::fabs(std::abs(w) - 1.0));
        }
        CHECK(worst < 1e-12);
    }
    CHECK_THROWS_AS(lee_yang_base_curve(1.0, 0.0), Error);
}

TEST_CASE("count_components_lee_yang") {
    CHECK(count_components_lee_yang({2, 2, 2, 3}, TauRegime::TAU_LT_1) == 1);
    CHECK(count_components_lee_yang({2, 0, 0, 2}, TauRegime::TAU_GT_1) == 2);
    CHECK(count_components_lee_yang({3, 0, 0, 3}, TauRegime::TAU_LT_1) == 3);
    CHECK_THROWS_AS(count_components_lee_yang({1, 1, 1, 1}, TauRegime::TAU_LT_1), Error);
}

TEST_CASE("unit_fiber_link traces the named fibers") {
    // Hopf pair
    TorusLink hopf = unit_fiber_link(LatticeMatrix::diagonal(2, 2), 2.0);
    REQUIRE(hopf.component_count() == 2);
    for (const TracedLoop& l : hopf.loops) {
        CHECK(l.m == 1);
        CHECK(l.n == 1);
        CHECK(l.closure_gap < 1e-6);
        CHECK_FALSE(l.points.empty());
    }

    // three components
    TorusLink three = unit_fiber_link(LatticeMatrix::diagonal(3, 3), 0.5);
    REQUIRE(three.component_count() == 3);
    for (const TracedLoop& l : three.loops) {
        CHECK(l.m == 1);
        CHECK(std::abs(l.n) == 1);
    }

    // trefoil-type fiber
    TorusLink tre = unit_fiber_link(LatticeMatrix::diagonal(2, 3), 2.0);
    REQUIRE(tre.component_count() == 1);
    CHECK(tre.loops[0].m == 3);
    CHECK(tre.loops[0].n == 2);
    TorusLink tre_lt = unit_fiber_link(LatticeMatrix::diagonal(2, 3), 0.5);
    REQUIRE(tre_lt.component_count() == 1);
    CHECK(tre_lt.loops[0].m == 3);
    CHECK(std::abs(tre_lt.loops[0].n) == 2);
}

TEST_CASE("formula and trace agree on a twelve-matrix battery") {
    std::vector<LatticeMatrix> battery{{1, 0, 0, 1}, {2, 0, 0, 2},  {3, 0, 0, 2},
                                       {4, 0, 0, 3}, {2, 0, 0, 3},  {2, 2, 2, 3},
                                       {3, 1, 3, 2}, {1, 2, 1, 3},  {2, 1, 3, 2},
                                       {1, 0, 4, 1}, {2, -1, 1, 1}, {-1, 2, 3, 1}};
    for (const LatticeMatrix& L : battery) {
        for (double tau : {0.5, 2.0}) {
            TauRegime regime = tau > 1 ? TauRegime::TAU_GT_1 : TauRegime::TAU_LT_1;
            TorusLink link = unit_fiber_link(L, tau, 2048);
            CHECK(link.component_count() ==
                  static_cast<size_t>(count_components_lee_yang(L, regime)));
            for (const TracedLoop& l : link.loops) {
                CHECK(l.closure_gap < 1e-6);
                CHECK(std::gcd(std::abs(l.m), std::abs(l.n)) == 1);
            }
        }
    }
}

TEST_CASE("traced loops close and have integer winding") {
    TorusLink link = unit_fiber_link({2, 2, 2, 3}, 0.5);
    REQUIRE(link.component_count() == 1);
    const TracedLoop& l = link.loops[0];
    CHECK(l.closure_gap < 1e-6);
    CHECK(std::gcd(std::abs(l.m), std::abs(l.n)) == 1);
    // points wind |det| sweeps worth of samples
    CHECK(l.points.size() == 4096u * 2u);
}

TEST_CASE("diagonal_pq_link") {
    TorusLink knot = diagonal_pq_link(2, 3, 0.5);
    CHECK(knot.component_count() == 1);
    TorusLink pair = diagonal_pq_link(2, 2, 0.5);
    CHECK(pair.component_count() == 2);
    TorusLink circle = diagonal_pq_link(1, 1, 2.0);
    REQUIRE(circle.component_count() == 1);
    CHECK(circle.loops[0].m == 1);
    CHECK(std::abs(circle.loops[0].n) == 1);
    CHECK(classify_link(circle).label == "unknot");
}

TEST_CASE("unit_fiber_link rejects bad inputs") {
    CHECK_THROWS_AS(unit_fiber_link({2, 2, 1, 1}, 0.5), Error);  // det = 0
    CHECK_THROWS_AS(unit_fiber_link({2, 0, 0, 2}, 1.0), Error);
    CHECK_THROWS_AS(unit_fiber_link({2, 0, 0, 2}, -0.5), Error);
    CHECK_THROWS_AS(singularity_link(parse_polynomial("1")), NotQuasiHomogeneousError);
}

TEST_CASE("classify_link labels") {
    LinkDescription tre = classify_link(singularity_link(parse_polynomial("w^2 - z^3")));
    CHECK(tre.label.find("T(3,2)") != std::string::npos);
    CHECK(tre.label.find("trefoil") != std::string::npos);

    LinkDescription cinq = classify_link(singularity_link(parse_polynomial("z^5 - w^2")));
    CHECK(cinq.label.find("T(5,2)") != std::string::npos);
    CHECK(cinq.label.find("cinquefoil") != std::string::npos);

    LinkDescription hopf = classify_link(singularity_link(parse_polynomial("w^2 + z^3*w - 2z^6")));
    CHECK(hopf.label.find("2-component link, each unknotted") != std::string::npos);
    CHECK(hopf.label.find("slope-3") != std::string::npos);

    TorusLink one;
    one.geodesics.push_back({1, 1, 0.0, 1});
    CHECK(classify_link(one).label == "unknot");

    TorusLink t64;  // three (2,3)-type components
    t64.geodesics.push_back({3, 2, 0.0, 1});
    t64.geodesics.push_back({3, 2, 1.0, 1});
    t64.geodesics.push_back({3, 2, 2.0, 1});
    LinkDescription d = classify_link(t64);
    CHECK(d.label.find("T(6,9) torus link") != std::string::npos);
}
