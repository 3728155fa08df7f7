#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "amoebalink/poly.hpp"
#include "amoebalink/roots.hpp"
#include "doctest.h"

using namespace amoebalink;

namespace {

uint64_t rng_state = 0x853c49e6748fea9bull;
double rnd() {
    uint64_t x = (rng_state += 0x9e3779b97f4a7c15ull);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    x ^= x >> 31;
    return static_cast<double>(x >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

Complex horner(const std::vector<Complex>& c, Complex x) {
    Complex y = 0.0;
    for (size_t k = c.size(); k-- > 0;) y = y * x + c[k];
    return y;
}

// Independent oracle: Newton iteration from a grid of starts, converged
// points clustered into distinct roots.
std::vector<Complex> newton_grid_roots(const std::vector<Complex>& coeffs, int grid = 40) {
    size_t d = coeffs.size() - 1;
    std::vector<Complex> deriv(d);
    for (size_t k = 1; k <= d; ++k) deriv[k - 1] = coeffs[k] * static_cast<double>(k);

    double radius = 0.0;
    for (size_t k = 0; k + 1 < coeffs.size(); ++k)
        radius = std::max(radius, std::abs(coeffs[k] / coeffs.back()));
    radius = 2.0 * std::max(1.0, radius);

    double scale = 0.0;
    for (const Complex& c : coeffs) scale = std::max(scale, std::abs(c));

    std::vector<Complex> found;
    for (int gx = 0; gx < grid; ++gx) {
        for (int gy = 0; gy < grid; ++gy) {
            Complex x(radius * (2.0 * gx / (grid - 1) - 1.0),
                      radius * (2.0 * gy / (grid - 1) - 1.0));
            bool ok = false;
            for (int it = 0; it < 120; ++it) {
                Complex pv = horner(coeffs, x);
                Complex dv = horner(deriv, x);
                if (std::abs(dv) == 0.0) break;
                Complex step = pv / dv;
                x -= step;
                if (std::abs(step) < 1e-13 * std::max(1.0, std::abs(x))) {
                    ok = std::abs(horner(coeffs, x)) < 1e-9 * scale;
                    break;
                }
            }
            if (!ok) continue;
            bool dup = false;
            for (const Complex& r : found)
                if (std::abs(r - x) < 1e-7) dup = true;
            if (!dup) found.push_back(x);
        }
    }
    return found;
}

// greedy nearest matching; fine for well-separated roots
double match_distance(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) return 1e300;
    double worst = 0.0;
    for (const Complex& x : a) {
        size_t best = 0;
        double bd = 1e300;
        for (size_t k = 0; k < b.size(); ++k) {
            double d = std::abs(b[k] - x);
            if (d < bd) {
                bd = d;
                best = k;
            }
        }
        worst = std::max(worst, bd);
        b.erase(b.begin() + static_cast<long>(best));
    }
    return worst;
}

}  // namespace

TEST_CASE("univariate_roots on fixed inputs") {
    // w^2 - 1
    RootSet rs = univariate_roots({-1.0, 0.0, 1.0});
    REQUIRE(rs.roots.size() == 2);
    CHECK(std::abs(rs.roots[0] - Complex(-1.0)) < 1e-12);
    CHECK(std::abs(rs.roots[1] - Complex(1.0)) < 1e-12);
    CHECK(rs.zero_multiplicity == 0);
    CHECK(rs.converged);

    // (w - 2)(w - (1+i)) = w^2 - (3+i) w + (2+2i)
    RootSet qs = univariate_roots({Complex(2.0, 2.0), Complex(-3.0, -1.0), 1.0});
    REQUIRE(qs.roots.size() == 2);
    CHECK(std::abs(qs.roots[0] - Complex(1.0, 1.0)) < 1e-10);
    CHECK(std::abs(qs.roots[1] - Complex(2.0, 0.0)) < 1e-10);

    // w^5 - 1: five phases spaced by 2*pi/5
    RootSet fives = univariate_roots({-1.0, 0.0, 0.0, 0.0, 0.0, 1.0});
    REQUIRE(fives.roots.size() == 5);
    std::vector<double> args;
    for (const Complex& r : fives.roots) {
        CHECK(std::abs(std::abs(r) - 1.0) < 1e-10);
        args.push_back(std::arg(r));
    }
    std::sort(args.begin(), args.end());
    for (size_t k = 1; k < args.size(); ++k)
        CHECK(std::abs(args[k] - args[k - 1] - 2.0 * M_PI / 5) < 1e-8);
}

TEST_CASE("univariate_roots degenerate inputs") {
    // trailing zeros become a zero-root multiplicity
    RootSet rs = univariate_roots({0.0, 0.0, 1.0, 1.0});  // w^2 (w + 1)
    CHECK(rs.zero_multiplicity == 2);
    REQUIRE(rs.roots.size() == 1);
    CHECK(std::abs(rs.roots[0] - Complex(-1.0)) < 1e-12);

    RootSet constant = univariate_roots({5.0});
    CHECK(constant.constant);
    CHECK(constant.roots.empty());

    CHECK_THROWS_AS(univariate_roots({0.0, 0.0}), Error);

    // negligible leading coefficient collapses the degree
    RootSet collapsed = univariate_roots({1.0, 1.0, 1e-30});
    CHECK(collapsed.degree_collapses == 1);
    REQUIRE(collapsed.roots.size() == 1);
    CHECK(std::abs(collapsed.roots[0] - Complex(-1.0)) < 1e-12);
}

TEST_CASE("Vieta sums and products") {
    for (int rep = 0; rep < 100; ++rep) {
        int d = 2 + static_cast<int>(std::abs(rnd()) * 6.99);
        std::vector<Complex> coeffs(d + 1);
        for (auto& c : coeffs) c = {rnd(), rnd()};
        if (std::abs(coeffs.back()) < 0.2) coeffs.back() += Complex(0.5, 0.5);
        if (std::abs(coeffs.front()) < 0.2) coeffs.front() += Complex(0.5, -0.5);

        RootSet rs = univariate_roots(coeffs);
        REQUIRE(static_cast<int>(rs.roots.size()) == d);
        Complex sum = 0.0, prod = 1.0;
        for (const Complex& r : rs.roots) {
            sum += r;
            prod *= r;
        }
        Complex want_sum = -coeffs[d - 1] / coeffs[d];
        Complex want_prod = coeffs[0] / coeffs[d];
        if (d % 2 != 0) want_prod = -want_prod;
        CHECK(std::abs(sum - want_sum) <= 1e-8 * std::max(1.0, std::abs(want_sum)));
        CHECK(std::abs(prod - want_prod) <= 1e-8 * std::max(1.0, std::abs(want_prod)));
    }
}

TEST_CASE("roots match the grid-Newton oracle") {
    int checked = 0;
    for (int rep = 0; rep < 50; ++rep) {
        int d = 2 + static_cast<int>(std::abs(rnd()) * 6.99);
        std::vector<Complex> coeffs(d + 1);
        for (auto& c : coeffs) c = {rnd(), rnd()};
        if (std::abs(coeffs.back()) < 0.3) coeffs.back() += Complex(0.7, 0.0);

        std::vector<Complex> oracle = newton_grid_roots(coeffs);
        if (oracle.size() != static_cast<size_t>(d)) continue;  // oracle missed a root
        RootSet rs = univariate_roots(coeffs);
        CHECK(match_distance(rs.roots, oracle) < 1e-6);
        ++checked;
    }
    CHECK(checked >= 40);
}

TEST_CASE("solve_fiber on fixed inputs") {
    auto ly = parse_polynomial("1+2z+2w+zw");
    FiberResult fr = solve_fiber(ly, 1.0);
    REQUIRE(fr.roots.size() == 1);
    CHECK(std::abs(fr.roots[0] - Complex(-1.0)) < 1e-12);
    CHECK(fr.ok());

    auto cusp = parse_polynomial("w^2 - z^3");
    FiberResult fc = solve_fiber(cusp, 1.0);
    REQUIRE(fc.roots.size() == 2);
    CHECK(std::abs(fc.roots[0] - Complex(-1.0)) < 1e-10);
    CHECK(std::abs(fc.roots[1] - Complex(1.0)) < 1e-10);

    auto quint = parse_polynomial("z^5 - w^2");
    FiberResult fq = solve_fiber(quint, 1.0);
    REQUIRE(fq.roots.size() == 2);
    CHECK(std::abs(fq.roots[0] - Complex(-1.0)) < 1e-10);
    CHECK(std::abs(fq.roots[1] - Complex(1.0)) < 1e-10);
}

TEST_CASE("solve_fiber flags") {
    // (1+z)(1+w): every w-coefficient vanishes at z = -1
    auto vert = parse_polynomial("1+z+w+z*w");
    FiberResult fv = solve_fiber(vert, -1.0);
    CHECK(fv.vertical);
    CHECK_FALSE(fv.ok());

    // w^2 (1-z) + w: leading coefficient dies at z = 1
    auto coll = parse_polynomial("w^2 - z*w^2 + w");
    FiberResult fc = solve_fiber(coll, 1.0);
    CHECK(fc.degree_collapses == 1);
    CHECK(fc.roots.empty());
    FiberResult fk = solve_fiber(coll, 0.5);
    REQUIRE(fk.roots.size() == 1);
    CHECK(std::abs(fk.roots[0] - Complex(-2.0)) < 1e-10);

    CHECK_THROWS_AS(solve_fiber(parse_polynomial("1+z"), 1.0), Error);
    CHECK_THROWS_AS(solve_fiber(parse_polynomial("1+w"), 0.0), Error);
}

TEST_CASE("solve_fiber residual invariant on moderate fibers") {
    auto f1 = parse_polynomial("1+z1^2*z2^3+z1^3*z2");
    double amax = f1.coeff_scale();
    for (int k = 0; k < 40; ++k) {
        double rho = -1.0 + 2.0 * k / 39.0;
        Complex z0 = std::exp(Complex(rho, 2.0 * M_PI * k / 40.0 + 0.1));
        FiberResult fr = solve_fiber(f1, z0);
        if (!fr.ok()) continue;
        for (const Complex& w : fr.roots)
            CHECK(std::abs(evaluate(f1, z0, w)) < 1e-9 * amax * 50.0);
    }
}
