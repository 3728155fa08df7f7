#include "amoebalink/links.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "amoebalink/kernels.hpp"
#include "amoebalink/sampling.hpp"

namespace amoebalink {

RationalSlope::RationalSlope(long long pp, long long qq) {
    if (qq == 0) throw Error("RationalSlope: zero denominator");
    if (qq < 0) {
        qq = -qq;
        pp = -pp;
    }
    long long g = std::gcd(std::llabs(pp), qq);
    if (g > 1) {
        pp /= g;
        qq /= g;
    }
    p = static_cast<int>(pp);
    q = static_cast<int>(qq);
}

QuasiHomogeneousData quasi_homogeneous_decompose(const LaurentPolynomial& poly) {
    if (poly.support_size() < 2)
        throw NotQuasiHomogeneousError("support has fewer than two points");
    std::vector<Exp> pts;
    for (const auto& [e, c] : poly.terms()) pts.push_back(e);
    std::sort(pts.begin(), pts.end());
    Exp lo = pts.front(), hi = pts.back();
    long long di = hi.i - lo.i;
    long long dj = hi.j - lo.j;
    for (const Exp& e : pts) {
        long long cx = (static_cast<long long>(e.i) - lo.i) * dj -
                       (static_cast<long long>(e.j) - lo.j) * di;
        if (cx != 0) throw NotQuasiHomogeneousError("support is not collinear");
    }
    if (di == 0 || dj == 0)
        throw OrientationError(di == 0 ? "vertical support line" : "horizontal support line");
    if ((di > 0) == (dj > 0)) throw OrientationError("support line slope gives mu <= 0");

    RationalSlope mu(std::llabs(di), std::llabs(dj));
    QuasiHomogeneousData out;
    out.mu = mu;
    out.c = Rat(static_cast<long long>(lo.i) * mu.q + static_cast<long long>(lo.j) * mu.p,
                mu.q);

    int jmin = lo.j, jmax = lo.j;
    for (const Exp& e : pts) {
        jmin = std::min(jmin, e.j);
        jmax = std::max(jmax, e.j);
    }
    out.j_min = jmin;
    out.h_coeffs.assign(static_cast<size_t>(jmax - jmin) + 1, Complex(0.0));
    for (const auto& [e, c] : poly.terms()) out.h_coeffs[static_cast<size_t>(e.j - jmin)] = c;
    return out;
}

TorusLink singularity_link(const LaurentPolynomial& poly, const SolverConfig& cfg) {
    QuasiHomogeneousData d = quasi_homogeneous_decompose(poly);
    RootSet rs = univariate_roots(d.h_coeffs, cfg);
    if (rs.constant) throw Error("singularity_link: h(t) has no torus roots");

    const int q = d.mu.q;
    const int p = d.mu.p;
    const double width = kTwoPi / q;  // phases equal mod 2*pi/q give one geodesic
    constexpr double kPhaseTol = 1e-8;

    std::vector<double> cls;
    cls.reserve(rs.roots.size());
    for (const Complex& t : rs.roots) {
        double phase = wrap_angle(std::atan2(t.imag(), t.real()));
        double c = std::fmod(phase, width);
        if (c < 0) c += width;
        if (width - c < kPhaseTol) c = 0.0;  // wrap-around of the class interval
        cls.push_back(c);
    }
    std::sort(cls.begin(), cls.end());

    TorusLink link;
    link.source = LinkSource::FORMULA;
    size_t k = 0;
    while (k < cls.size()) {
        size_t j = k + 1;
        while (j < cls.size() && cls[j] - cls[j - 1] < kPhaseTol) ++j;
        TorusGeodesic g;
        g.m = q;
        g.n = p;
        g.offset = cls[k] < kPhaseTol ? 0.0 : cls[k];
        g.multiplicity = static_cast<int>(j - k);
        link.geodesics.push_back(g);
        k = j;
    }
    return link;
}

long long count_components_closed_form(long long pp, long long qq) {
    if (pp < 1 || qq < 1) throw Error("count_components_closed_form: p, q must be >= 1");
    return std::gcd(pp, qq);
}

double lee_yang_base_curve(double tau, double theta) {
    if (!(tau > 0.0) || tau == 1.0) throw Error("lee_yang_base_curve: need tau > 0, tau != 1");
    double cr = std::cos(theta), sr = std::sin(theta);
    Complex w = -(Complex(1.0 + tau * cr, tau * sr)) / Complex(tau + cr, sr);
    return wrap_angle(std::atan2(w.imag(), w.real()));
}

long long count_components_lee_yang(const LatticeMatrix& L, TauRegime regime) {
    if (L.det() == 0) throw Error("count_components_lee_yang: singular matrix");
    if (regime == TauRegime::TAU_GT_1) return std::gcd(std::llabs(L.b - L.a), std::llabs(L.d - L.c));
    return std::gcd(std::llabs(L.a + L.b), std::llabs(L.c + L.d));
}

// ---------------------------------------------------------------------------
// Unit-fiber tracing
// ---------------------------------------------------------------------------

namespace {

struct Mat2i {
    long long m[2][2];
    long long det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

// Diagonalize M over Z by unimodular row/column operations; P tracks the row
// side, so k is in M Z^2 exactly when P k vanishes mod (d1, d2).
void diagonalize(Mat2i M, Mat2i& P, long long& d1, long long& d2) {
    P = {{{1, 0}, {0, 1}}};
    auto row_op = [&](long long f) {  // row1 -= f * row0
        for (int c = 0; c < 2; ++c) {
            M.m[1][c] -= f * M.m[0][c];
            P.m[1][c] -= f * P.m[0][c];
        }
    };
    auto row_swap = [&] {
        std::swap(M.m[0], M.m[1]);
        std::swap(P.m[0], P.m[1]);
    };
    auto col_op = [&](long long f) {  // col1 -= f * col0
        for (int r = 0; r < 2; ++r) M.m[r][1] -= f * M.m[r][0];
    };
    auto col_swap = [&] {
        std::swap(M.m[0][0], M.m[0][1]);
        std::swap(M.m[1][0], M.m[1][1]);
    };

    while (M.m[1][0] != 0 || M.m[0][1] != 0) {
        if (M.m[0][0] == 0) {
            if (M.m[1][0] != 0)
                row_swap();
            else
                col_swap();
            continue;
        }
        if (M.m[1][0] != 0) {
            row_op(M.m[1][0] / M.m[0][0]);
            if (M.m[1][0] != 0) row_swap();  // Euclid step on the pivot column
            continue;
        }
        col_op(M.m[0][1] / M.m[0][0]);
        if (M.m[0][1] != 0) col_swap();
    }
    d1 = std::llabs(M.m[0][0]);
    d2 = std::llabs(M.m[1][1]);
}

void canonicalize_pair(long long& m, long long& n) {
    if (m < 0 || (m == 0 && n < 0)) {
        m = -m;
        n = -n;
    }
}

}  // namespace

TorusLink unit_fiber_link(const LatticeMatrix& L, double tau, int theta_steps) {
    if (L.det() == 0) throw Error("unit_fiber_link: singular matrix");
    if (!(tau > 0.0) || tau == 1.0) throw Error("unit_fiber_link: need tau > 0, tau != 1");
    if (theta_steps < 16) throw Error("unit_fiber_link: too few steps");

    // (theta, phi) = M (alpha, beta) with M = L^T
    Mat2i M{{{L.a, L.c}, {L.b, L.d}}};
    const long long det = M.det();
    const long long adj[2][2] = {{M.m[1][1], -M.m[0][1]}, {-M.m[1][0], M.m[0][0]}};
    const double inv_det = 1.0 / static_cast<double>(det);

    // Continuous lift of the base-curve phase over one theta period.
    const int K = theta_steps;
    std::vector<double> nre(K + 1), nim(K + 1), dre(K + 1), dim(K + 1), wre(K + 1), wim(K + 1);
    for (int k = 0; k <= K; ++k) {
        double th = kTwoPi * k / K;
        double c = std::cos(th), s = std::sin(th);
        nre[k] = -(1.0 + tau * c);
        nim[k] = -tau * s;
        dre[k] = tau + c;
        dim[k] = s;
    }
    kern::cplx_ratio_many(nre.data(), nim.data(), dre.data(), dim.data(),
                          static_cast<size_t>(K) + 1, wre.data(), wim.data());
    std::vector<double> phi(K + 1);
    phi[0] = std::atan2(wim[0], wre[0]);
    for (int k = 1; k <= K; ++k) {
        double raw = std::atan2(wim[k], wre[k]);
        double prev = phi[k - 1];
        raw += kTwoPi * std::round((prev - raw) / kTwoPi);
        phi[k] = raw;
    }
    const long long wind = tau > 1.0 ? 1 : -1;
    if (std::abs(phi[K] - phi[0] - kTwoPi * static_cast<double>(wind)) > 1e-6)
        throw Error("unit_fiber_link: base-curve winding did not match the regime");

    Mat2i P;
    long long d1 = 0, d2 = 0;
    diagonalize(M, P, d1, d2);
    auto canon = [&](long long b1, long long b2, long long& c1, long long& c2) {
        c1 = ((P.m[0][0] * b1 + P.m[0][1] * b2) % d1 + d1) % d1;
        c2 = ((P.m[1][0] * b1 + P.m[1][1] * b2) % d2 + d2) % d2;
    };
    // P is unimodular; its integer inverse turns residue labels into branches
    long long pdet = P.det();
    const long long pinv[2][2] = {{P.m[1][1] * pdet, -P.m[0][1] * pdet},
                                  {-P.m[1][0] * pdet, P.m[0][0] * pdet}};

    auto point = [&](double theta_tot, double phi_tot, double& a, double& b) {
        a = (adj[0][0] * theta_tot + adj[0][1] * phi_tot) * inv_det;
        b = (adj[1][0] * theta_tot + adj[1][1] * phi_tot) * inv_det;
    };

    std::vector<uint8_t> visited(static_cast<size_t>(d1 * d2), 0);
    TorusLink link;
    link.source = LinkSource::TRACED;

    for (long long i = 0; i < d1; ++i) {
        for (long long j = 0; j < d2; ++j) {
            if (visited[static_cast<size_t>(i * d2 + j)]) continue;
            long long b1 = pinv[0][0] * i + pinv[0][1] * j;
            long long b2 = pinv[1][0] * i + pinv[1][1] * j;

            TracedLoop loop;
            double a0, b0;
            point(kTwoPi * b1, phi[0] + kTwoPi * b2, a0, b0);
            long long sweeps = 0;
            double aEnd = a0, bEnd = b0;
            bool closed = false;
            while (!closed) {
                long long c1, c2;
                canon(b1, b2, c1, c2);
                visited[static_cast<size_t>(c1 * d2 + c2)] = 1;
                for (int k = 0; k < K; ++k) {
                    double a, b;
                    point(kTwoPi * (k / static_cast<double>(K) + b1), phi[k] + kTwoPi * b2, a, b);
                    loop.points.push_back({wrap_angle(a), wrap_angle(b)});
                }
                b1 += 1;
                b2 += wind;
                ++sweeps;
                point(kTwoPi * b1, phi[0] + kTwoPi * b2, aEnd, bEnd);
                double ga = std::remainder(aEnd - a0, kTwoPi);
                double gb = std::remainder(bEnd - b0, kTwoPi);
                loop.closure_gap = std::hypot(ga, gb);
                closed = loop.closure_gap < 1e-6;
                if (!closed && sweeps > d1 * d2)
                    throw Error("unit_fiber_link: trace failed to close");
            }

            // exact homology: sweeps * M^{-1} (1, wind) must be integral
            long long hn1 = sweeps * (adj[0][0] + adj[0][1] * wind);
            long long hn2 = sweeps * (adj[1][0] + adj[1][1] * wind);
            if (hn1 % det != 0 || hn2 % det != 0)
                throw Error("unit_fiber_link: non-integral winding");
            long long hm = hn1 / det, hn = hn2 / det;
            canonicalize_pair(hm, hn);
            if (std::gcd(std::llabs(hm), std::llabs(hn)) != 1)
                throw Error("unit_fiber_link: traced loop has imprimitive homology");
            loop.m = static_cast<int>(hm);
            loop.n = static_cast<int>(hn);
            link.loops.push_back(std::move(loop));
        }
    }
    return link;
}

TorusLink diagonal_pq_link(int p, int q, double tau, int theta_steps) {
    if (p < 1 || q < 1) throw Error("diagonal_pq_link: p, q must be >= 1");
    TorusLink link = unit_fiber_link(LatticeMatrix::diagonal(p, q), tau, theta_steps);
    auto expected = static_cast<size_t>(std::gcd(p, q));
    if (link.component_count() != expected)
        throw Error("diagonal_pq_link: traced count disagrees with gcd(p, q)");
    return link;
}

LinkDescription classify_link(const TorusLink& link) {
    if (link.component_count() == 0) throw Error("classify_link: empty link");
    LinkDescription d;
    d.components = link.component_count();
    if (link.source == LinkSource::FORMULA) {
        for (const TorusGeodesic& g : link.geodesics) d.homology.push_back({g.m, g.n});
    } else {
        for (const TracedLoop& l : link.loops) d.homology.push_back({l.m, l.n});
    }

    bool uniform = true;
    for (const auto& h : d.homology) uniform = uniform && h == d.homology[0];
    if (!uniform) {
        d.label = std::to_string(d.components) + " components, mixed homology classes";
        return d;
    }

    int m = d.homology[0][0], n = d.homology[0][1];
    auto c = static_cast<long long>(d.components);
    bool unknotted = std::abs(m) <= 1 || std::abs(n) <= 1;
    auto named = [&](long long a, long long b) -> std::string {
        long long lo = std::min(std::llabs(a), std::llabs(b));
        long long hi = std::max(std::llabs(a), std::llabs(b));
        if (lo == 2 && hi == 3) return " (trefoil)";
        if (lo == 2 && hi == 5) return " (cinquefoil)";
        return "";
    };
    // torus-knot names ignore chirality; the homology list keeps the signs
    long long am = std::abs(m), an = std::abs(n);
    if (c == 1) {
        if (unknotted)
            d.label = "unknot";
        else
            d.label = "T(" + std::to_string(an) + "," + std::to_string(am) + ") torus knot" +
                      named(an, am);
    } else if (unknotted) {
        std::string slope = (am == 1) ? std::to_string(an)
                                      : std::to_string(an) + "/" + std::to_string(am);
        d.label = std::to_string(c) + "-component link, each unknotted, slope-" + slope +
                  " geodesics";
    } else {
        d.label = "T(" + std::to_string(c * an) + "," + std::to_string(c * am) +
                  ") torus link, " + std::to_string(c) + " components";
    }
    return d;
}

}  // namespace amoebalink
