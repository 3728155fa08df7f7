#include "amoebalink/roots.hpp"

#include <algorithm>
#include <cmath>

#include "amoebalink/kernels.hpp"

namespace amoebalink {

namespace {

// splitmix64, used only to jitter the initial circle.
uint64_t mix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double unit_jitter(uint64_t seed, uint64_t k) {
    return static_cast<double>(mix(seed * 0x100000001b3ull + k) >> 11) * 0x1.0p-53;
}

struct SplitPoly {
    std::vector<double> re, im;
    void assign(const Complex* c, size_t n) {
        re.resize(n);
        im.resize(n);
        for (size_t k = 0; k < n; ++k) {
            re[k] = c[k].real();
            im[k] = c[k].imag();
        }
    }
};

void eval_many(const SplitPoly& p, const std::vector<Complex>& xs,
               std::vector<Complex>& out) {
    size_t n = xs.size();
    static thread_local std::vector<double> xr, xi, yr, yi;
    xr.resize(n);
    xi.resize(n);
    yr.resize(n);
    yi.resize(n);
    for (size_t k = 0; k < n; ++k) {
        xr[k] = xs[k].real();
        xi[k] = xs[k].imag();
    }
    kern::horner_many(p.re.data(), p.im.data(), p.re.size(), xr.data(), xi.data(), n,
                      yr.data(), yi.data());
    out.resize(n);
    for (size_t k = 0; k < n; ++k) out[k] = Complex(yr[k], yi[k]);
}

double fujiwara_bound(const std::vector<Complex>& c) {
    size_t d = c.size() - 1;
    double lead = std::abs(c[d]);
    double bound = 0.0;
    for (size_t k = 1; k <= d; ++k) {
        double ratio = std::abs(c[d - k]) / lead;
        if (k == d) ratio *= 0.5;
        bound = std::max(bound, std::pow(ratio, 1.0 / static_cast<double>(k)));
    }
    return 2.0 * bound;
}

}  // namespace

RootSet univariate_roots(const std::vector<Complex>& coeffs, const SolverConfig& cfg) {
    double scale = 0.0;
    for (const Complex& c : coeffs) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) throw Error("univariate_roots: all coefficients are zero");

    RootSet out;
    double trim = cfg.trim_tol * scale;
    size_t lo = 0, hi = coeffs.size();
    while (lo < hi && std::abs(coeffs[lo]) < trim) {
        ++lo;
        ++out.zero_multiplicity;
    }
    while (hi > lo && std::abs(coeffs[hi - 1]) < trim) {
        --hi;
        ++out.degree_collapses;
    }
    std::vector<Complex> c(coeffs.begin() + lo, coeffs.begin() + hi);
    if (c.size() <= 1) {
        out.constant = true;
        return out;
    }
    size_t d = c.size() - 1;

    SplitPoly p, dp;
    p.assign(c.data(), c.size());
    std::vector<Complex> deriv(d);
    for (size_t k = 1; k <= d; ++k) deriv[k - 1] = c[k] * static_cast<double>(k);
    dp.assign(deriv.data(), deriv.size());

    // Initial guesses on a circle at the Fujiwara bound, slightly jittered so
    // symmetric configurations cannot trap the iteration.
    double radius = std::max(fujiwara_bound(c), 1e-12);
    std::vector<Complex> x(d);
    for (size_t k = 0; k < d; ++k) {
        double ang = 2.0 * M_PI * (static_cast<double>(k) + 0.25) / static_cast<double>(d) +
                     0.577 + 1e-3 * (unit_jitter(cfg.seed, k) - 0.5);
        x[k] = radius * Complex(std::cos(ang), std::sin(ang));
    }

    std::vector<Complex> pv, dv;
    out.converged = false;
    for (int it = 0; it < cfg.max_iterations; ++it) {
        eval_many(p, x, pv);
        eval_many(dp, x, dv);
        double max_step = 0.0;
        for (size_t k = 0; k < d; ++k) {
            Complex newton;
            if (std::abs(dv[k]) > 0.0) {
                newton = pv[k] / dv[k];
            } else {
                x[k] += Complex(1e-8 * radius, 1e-8 * radius);
                max_step = 1e9;
                continue;
            }
            Complex sum = 0.0;
            for (size_t j = 0; j < d; ++j) {
                if (j == k) continue;
                Complex diff = x[k] - x[j];
                if (std::abs(diff) < 1e-300) diff = Complex(1e-300, 0.0);
                sum += 1.0 / diff;
            }
            Complex denom = 1.0 - newton * sum;
            Complex step = (std::abs(denom) > 0.0) ? newton / denom : newton;
            x[k] -= step;
            max_step = std::max(max_step, std::abs(step));
        }
        if (max_step < cfg.step_tol) {
            out.converged = true;
            break;
        }
    }

    std::sort(x.begin(), x.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    for (size_t k = 0; k < d; ++k) {
        for (size_t j = k + 1; j < d; ++j) {
            if (std::abs(x[k] - x[j]) < cfg.cluster_tol) out.cluster = true;
        }
    }
    eval_many(p, x, pv);
    out.roots = x;
    out.residuals.resize(d);
    for (size_t k = 0; k < d; ++k) out.residuals[k] = std::abs(pv[k]);
    return out;
}

std::vector<Complex> collect_fiber_coeffs(const LaurentPolynomial& p, Complex z0,
                                          int& jmin_out) {
    if (p.is_zero()) throw Error("solve_fiber: zero polynomial");
    int jmin = 0, jmax = 0;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        if (first) {
            jmin = jmax = e.j;
            first = false;
        } else {
            jmin = std::min(jmin, e.j);
            jmax = std::max(jmax, e.j);
        }
    }
    std::vector<Complex> coeffs(static_cast<size_t>(jmax - jmin) + 1, Complex(0.0));
    for (const auto& [e, c] : p.terms())
        coeffs[static_cast<size_t>(e.j - jmin)] += c * complex_ipow(z0, e.i);
    jmin_out = jmin;
    return coeffs;
}

FiberResult solve_fiber(const LaurentPolynomial& p, Complex z0, const SolverConfig& cfg) {
    if (z0 == Complex(0.0)) throw Error("solve_fiber: z0 must be nonzero");
    int jmin = 0;
    std::vector<Complex> coeffs = collect_fiber_coeffs(p, z0, jmin);
    if (coeffs.size() < 2) throw Error("solve_fiber: polynomial has no w-degree spread");

    FiberResult res;
    double scale = 0.0;
    for (const Complex& c : coeffs) scale = std::max(scale, std::abs(c));
    if (scale < 1e-280) {
        res.vertical = true;  // the whole fiber line lies in the curve
        return res;
    }

    RootSet rs = univariate_roots(coeffs, cfg);
    res.zero_multiplicity = rs.zero_multiplicity;
    res.degree_collapses = rs.degree_collapses;
    res.cluster = rs.cluster;
    if (rs.constant) return res;

    double accept = cfg.residual_tol * scale;
    double relaxed = cfg.cluster_tol * scale;
    for (size_t k = 0; k < rs.roots.size(); ++k) {
        bool in_cluster = false;
        for (size_t j = 0; j < rs.roots.size(); ++j) {
            if (j != k && std::abs(rs.roots[j] - rs.roots[k]) < cfg.cluster_tol)
                in_cluster = true;
        }
        double tol = in_cluster ? relaxed : accept;
        if (rs.residuals[k] <= tol) {
            res.roots.push_back(rs.roots[k]);
            res.residuals.push_back(rs.residuals[k]);
        } else {
            res.cluster = true;  // unexplained residual: treat the fiber as suspect
        }
    }
    return res;
}

}  // namespace amoebalink
