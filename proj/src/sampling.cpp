#include "amoebalink/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <thread>

#include "amoebalink/kernels.hpp"

namespace amoebalink {

double wrap_angle(double theta) {
    double u = theta / kTwoPi;
    u -= std::floor(u);
    if (u >= 1.0) u = 0.0;
    return u * kTwoPi;
}

uint64_t TorusRaster::total() const {
    uint64_t t = 0;
    for (uint32_t c : counts) t += c;
    return t;
}

namespace {

int worker_count() {
    if (const char* env = std::getenv("COAMOEBA_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return std::min(n, 256);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 64u));
}

double grid_rho(const SampleGrid& g, int r) {
    if (g.n_radii <= 1) return g.rho_min;
    return g.rho_min + (g.rho_max - g.rho_min) * r / static_cast<double>(g.n_radii - 1);
}

// Dense-in-i view of the z-polynomial multiplying one power of w.
struct WSlice {
    int j = 0;
    int imin = 0;
    std::vector<double> cre, cim;  // ascending in i
};

std::vector<WSlice> w_slices(const LaurentPolynomial& p, int& jmin, int& jmax) {
    jmin = jmax = p.terms().begin()->first.j;
    for (const auto& [e, c] : p.terms()) {
        jmin = std::min(jmin, e.j);
        jmax = std::max(jmax, e.j);
    }
    std::vector<WSlice> slices;
    for (int j = jmin; j <= jmax; ++j) {
        int imin = 0, imax = 0;
        bool any = false;
        for (const auto& [e, c] : p.terms()) {
            if (e.j != j) continue;
            if (!any) {
                imin = imax = e.i;
                any = true;
            } else {
                imin = std::min(imin, e.i);
                imax = std::max(imax, e.i);
            }
        }
        WSlice s;
        s.j = j;
        if (any) {
            s.imin = imin;
            s.cre.assign(static_cast<size_t>(imax - imin) + 1, 0.0);
            s.cim.assign(static_cast<size_t>(imax - imin) + 1, 0.0);
            for (const auto& [e, c] : p.terms()) {
                if (e.j != j) continue;
                s.cre[static_cast<size_t>(e.i - imin)] = c.real();
                s.cim[static_cast<size_t>(e.i - imin)] = c.imag();
            }
        }
        slices.push_back(std::move(s));
    }
    return slices;
}

struct RowOutput {
    std::vector<std::array<double, 2>> pts;
    uint64_t skipped = 0;
    uint64_t collapses = 0;
};

enum class DepositMode { Amoeba, Coamoeba, Contour };

struct SampleJob {
    LaurentPolynomial dz, dw;  // used by the contour filter
    SampleGrid grid;
    SolverConfig cfg;
    DepositMode mode;
    double im_tol = 0.0;
    std::vector<WSlice> slices;
    int jmin = 0;
};

void sample_row(const SampleJob& job, int row, RowOutput& out) {
    const int na = job.grid.n_angles;
    double rho = grid_rho(job.grid, row);
    double radius = std::exp(rho);

    std::vector<double> zr(na), zi(na);
    std::vector<double> theta(na);
    for (int k = 0; k < na; ++k) {
        theta[k] = kTwoPi * k / na;
        zr[k] = radius * std::cos(theta[k]);
        zi[k] = radius * std::sin(theta[k]);
    }

    // w-coefficients for the whole row, one batched Horner per w-power
    size_t nslices = job.slices.size();
    std::vector<std::vector<Complex>> coeff(nslices);
    std::vector<double> tre(na), tim(na);
    for (size_t s = 0; s < nslices; ++s) {
        coeff[s].assign(na, Complex(0.0));
        const WSlice& sl = job.slices[s];
        if (sl.cre.empty()) continue;
        kern::horner_many(sl.cre.data(), sl.cim.data(), sl.cre.size(), zr.data(), zi.data(),
                          static_cast<size_t>(na), tre.data(), tim.data());
        for (int k = 0; k < na; ++k) {
            Complex shift = complex_ipow(Complex(zr[k], zi[k]), sl.imin);
            coeff[s][k] = Complex(tre[k], tim[k]) * shift;
        }
    }

    std::vector<Complex> fiber(nslices);
    for (int k = 0; k < na; ++k) {
        for (size_t s = 0; s < nslices; ++s) fiber[s] = coeff[s][k];

        double scale = 0.0;
        for (const Complex& c : fiber) scale = std::max(scale, std::abs(c));
        if (scale < 1e-280) {
            ++out.skipped;
            continue;
        }
        RootSet rs = univariate_roots(fiber, job.cfg);
        out.collapses += rs.degree_collapses;
        if (rs.constant) {
            ++out.skipped;
            continue;
        }

        bool bad = rs.cluster;
        double accept = job.cfg.residual_tol * scale;
        for (double r : rs.residuals)
            if (r > accept) bad = true;
        if (bad) {
            ++out.skipped;
            continue;
        }

        Complex z(zr[k], zi[k]);
        for (const Complex& w : rs.roots) {
            switch (job.mode) {
                case DepositMode::Amoeba:
                    out.pts.push_back({rho, std::log(std::abs(w))});
                    break;
                case DepositMode::Coamoeba:
                    out.pts.push_back({wrap_angle(theta[k]),
                                       wrap_angle(std::atan2(w.imag(), w.real()))});
                    break;
                case DepositMode::Contour: {
                    Complex znum = z * evaluate(job.dz, z, w);
                    Complex wden = w * evaluate(job.dw, z, w);
                    if (std::abs(wden) < 1e-12) break;
                    Complex gamma = znum / wden;
                    if (std::abs(gamma.imag()) < job.im_tol)
                        out.pts.push_back({wrap_angle(theta[k]),
                                           wrap_angle(std::atan2(w.imag(), w.real()))});
                    break;
                }
            }
        }
    }
}

PointCloud run_sampler(const LaurentPolynomial& p, const SampleGrid& grid,
                       const SolverConfig& cfg, DepositMode mode, double im_tol,
                       SampleStats* stats) {
    if (p.is_zero()) throw Error("sampler: zero polynomial");
    if (grid.n_radii < 1 || grid.n_angles < 1) throw Error("sampler: empty grid");
    if (grid.rho_min > grid.rho_max) throw Error("sampler: inverted log-radius range");

    SampleJob job;
    job.grid = grid;
    job.cfg = cfg;
    job.mode = mode;
    job.im_tol = im_tol;
    int jmin, jmax;
    job.slices = w_slices(p, jmin, jmax);
    job.jmin = jmin;
    if (jmax - jmin < 1) throw Error("sampler: polynomial independent of w");
    if (mode == DepositMode::Contour) {
        job.dz = partial_derivative(p, Var::Z);
        job.dw = partial_derivative(p, Var::W);
    }

    std::vector<RowOutput> rows(grid.n_radii);
    int threads = std::min(worker_count(), grid.n_radii);
    if (threads <= 1) {
        for (int r = 0; r < grid.n_radii; ++r) sample_row(job, r, rows[r]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (int r = t; r < grid.n_radii; r += threads) sample_row(job, r, rows[r]);
            });
        }
        for (auto& th : pool) th.join();
    }

    PointCloud cloud;
    cloud.kind = (mode == DepositMode::Amoeba)     ? CloudKind::AMOEBA
                 : (mode == DepositMode::Coamoeba) ? CloudKind::COAMOEBA
                                                   : CloudKind::CONTOUR;
    uint64_t skipped = 0, collapses = 0;
    size_t total = 0;
    for (const RowOutput& r : rows) total += r.pts.size();
    cloud.pts.reserve(total);
    for (const RowOutput& r : rows) {  // fixed merge order keeps output deterministic
        cloud.pts.insert(cloud.pts.end(), r.pts.begin(), r.pts.end());
        skipped += r.skipped;
        collapses += r.collapses;
    }
    if (stats) {
        stats->fibers = static_cast<uint64_t>(grid.n_radii) * grid.n_angles;
        stats->skipped_fibers = skipped;
        stats->deposits = cloud.pts.size();
        stats->degree_collapses = collapses;
    }
    return cloud;
}

}  // namespace

PointCloud sample_coamoeba(const LaurentPolynomial& p, const SampleGrid& grid,
                           const SolverConfig& cfg, SampleStats* stats) {
    return run_sampler(p, grid, cfg, DepositMode::Coamoeba, 0.0, stats);
}

PointCloud sample_amoeba(const LaurentPolynomial& p, const SampleGrid& grid,
                         const SolverConfig& cfg, SampleStats* stats) {
    return run_sampler(p, grid, cfg, DepositMode::Amoeba, 0.0, stats);
}

PointCloud contour_sample(const LaurentPolynomial& p, const SampleGrid& grid, double im_tol,
                          const SolverConfig& cfg, SampleStats* stats) {
    if (im_tol <= 0) throw Error("contour_sample: im_tol must be positive");
    return run_sampler(p, grid, cfg, DepositMode::Contour, im_tol, stats);
}

namespace {

PointCloud run_dual(const LaurentPolynomial& p, const SampleGrid& grid,
                    const SolverConfig& cfg, DepositMode mode, double im_tol,
                    SampleStats* stats) {
    LaurentPolynomial swapped = apply_matrix(p, LatticeMatrix{0, 1, 1, 0});
    SampleStats s1, s2;
    PointCloud primal, mirror;
    bool have_primal = true, have_mirror = true;
    try {
        primal = run_sampler(p, grid, cfg, mode, im_tol, &s1);
    } catch (const Error&) {
        have_primal = false;
    }
    try {
        mirror = run_sampler(swapped, grid, cfg, mode, im_tol, &s2);
    } catch (const Error&) {
        have_mirror = false;
    }
    if (!have_primal && !have_mirror)
        throw Error("sampler: polynomial depends on neither projection");

    PointCloud out = have_primal ? std::move(primal) : PointCloud{};
    if (!have_primal) out.kind = mirror.kind;
    if (have_mirror) {
        out.kind = mirror.kind;
        out.pts.reserve(out.pts.size() + mirror.pts.size());
        for (const auto& pt : mirror.pts) out.pts.push_back({pt[1], pt[0]});
    }
    if (stats) {
        stats->fibers = s1.fibers + s2.fibers;
        stats->skipped_fibers = s1.skipped_fibers + s2.skipped_fibers;
        stats->deposits = out.pts.size();
        stats->degree_collapses = s1.degree_collapses + s2.degree_collapses;
    }
    return out;
}

}  // namespace

PointCloud sample_coamoeba_dual(const LaurentPolynomial& p, const SampleGrid& grid,
                                const SolverConfig& cfg, SampleStats* stats) {
    return run_dual(p, grid, cfg, DepositMode::Coamoeba, 0.0, stats);
}

PointCloud sample_amoeba_dual(const LaurentPolynomial& p, const SampleGrid& grid,
                              const SolverConfig& cfg, SampleStats* stats) {
    return run_dual(p, grid, cfg, DepositMode::Amoeba, 0.0, stats);
}

PointCloud contour_sample_dual(const LaurentPolynomial& p, const SampleGrid& grid,
                               double im_tol, const SolverConfig& cfg, SampleStats* stats) {
    if (im_tol <= 0) throw Error("contour_sample: im_tol must be positive");
    return run_dual(p, grid, cfg, DepositMode::Contour, im_tol, stats);
}

LogGaussValue log_gauss(const LaurentPolynomial& p, Complex z, Complex w) {
    double scale = 0.0;
    for (const auto& [e, c] : p.terms())
        scale += std::abs(c) * std::pow(std::abs(z), e.i) * std::pow(std::abs(w), e.j);
    if (std::abs(evaluate(p, z, w)) > 1e-8 * scale)
        throw Error("log_gauss: point is not on the curve");

    Complex znum = z * evaluate(partial_derivative(p, Var::Z), z, w);
    Complex wden = w * evaluate(partial_derivative(p, Var::W), z, w);
    LogGaussValue out;
    if (std::abs(znum) < 1e-12 * scale && std::abs(wden) < 1e-12 * scale) {
        out.singular = true;
        return out;
    }
    if (std::abs(wden) < 1e-12) throw Error("log_gauss: denominator vanishes");
    out.gamma = znum / wden;
    return out;
}

TorusRaster rasterize(const PointCloud& cloud, int width, int height) {
    if (!cloud.torus_reduced()) throw Error("rasterize: cloud is not torus-reduced");
    if (width < 1 || height < 1) throw Error("rasterize: empty raster");
    TorusRaster r(width, height);
    size_t n = cloud.pts.size();
    std::vector<double> t1(n), t2(n), u1(n), u2(n);
    for (size_t k = 0; k < n; ++k) {
        t1[k] = cloud.pts[k][0];
        t2[k] = cloud.pts[k][1];
    }
    kern::wrap_unit(t1.data(), n, u1.data());
    kern::wrap_unit(t2.data(), n, u2.data());
    for (size_t k = 0; k < n; ++k) {
        int x = std::min(width - 1, static_cast<int>(u1[k] * width));
        int y = std::min(height - 1, static_cast<int>(u2[k] * height));
        ++r.counts[static_cast<size_t>(y) * width + x];
    }
    return r;
}

int complement_components(const TorusRaster& r, uint32_t occupancy_threshold) {
    if (occupancy_threshold < 1) throw Error("complement_components: threshold must be >= 1");
    const int w = r.width, h = r.height;
    std::vector<uint8_t> seen(static_cast<size_t>(w) * h, 0);
    auto empty = [&](int x, int y) { return r.at(x, y) < occupancy_threshold; };

    int regions = 0;
    std::vector<std::pair<int, int>> stack;
    for (int y0 = 0; y0 < h; ++y0) {
        for (int x0 = 0; x0 < w; ++x0) {
            if (!empty(x0, y0) || seen[static_cast<size_t>(y0) * w + x0]) continue;
            ++regions;
            stack.push_back({x0, y0});
            seen[static_cast<size_t>(y0) * w + x0] = 1;
            while (!stack.empty()) {
                auto [x, y] = stack.back();
                stack.pop_back();
                const int nx[4] = {(x + 1) % w, (x + w - 1) % w, x, x};
                const int ny[4] = {y, y, (y + 1) % h, (y + h - 1) % h};
                for (int d = 0; d < 4; ++d) {
                    size_t idx = static_cast<size_t>(ny[d]) * w + nx[d];
                    if (!seen[idx] && empty(nx[d], ny[d])) {
                        seen[idx] = 1;
                        stack.push_back({nx[d], ny[d]});
                    }
                }
            }
        }
    }
    return regions;
}

std::vector<int> chebyshev_distance_to_occupied(const TorusRaster& r, uint32_t threshold) {
    const int w = r.width, h = r.height;
    std::vector<int> dist(static_cast<size_t>(w) * h, -1);
    std::deque<std::pair<int, int>> queue;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (r.at(x, y) >= threshold) {
                dist[static_cast<size_t>(y) * w + x] = 0;
                queue.push_back({x, y});
            }
    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        int d = dist[static_cast<size_t>(y) * w + x];
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                int nx = (x + dx + w) % w;
                int ny = (y + dy + h) % h;
                size_t idx = static_cast<size_t>(ny) * w + nx;
                if (dist[idx] < 0) {
                    dist[idx] = d + 1;
                    queue.push_back({nx, ny});
                }
            }
        }
    }
    return dist;
}

PointCloud transform_cloud(const PointCloud& cloud, const AffineTorusMap& m) {
    if (!cloud.torus_reduced()) throw Error("transform_cloud: cloud is not torus-reduced");
    if (m.den < 1) throw Error("transform_cloud: denominator must be positive");
    if (m.num_det() == 0) throw Error("transform_cloud: singular matrix");

    // Distinct branch translates M * 2*pi*k mod 2*pi, k in [0,den)^2, kept as
    // exact residues so duplicates collapse.
    std::vector<std::array<long long, 2>> residues;
    for (long long k1 = 0; k1 < m.den; ++k1) {
        for (long long k2 = 0; k2 < m.den; ++k2) {
            long long r1 = ((m.num[0][0] * k1 + m.num[0][1] * k2) % m.den + m.den) % m.den;
            long long r2 = ((m.num[1][0] * k1 + m.num[1][1] * k2) % m.den + m.den) % m.den;
            residues.push_back({r1, r2});
        }
    }
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());

    double inv_den = 1.0 / static_cast<double>(m.den);
    PointCloud out;
    out.kind = cloud.kind;
    out.pts.reserve(cloud.pts.size() * residues.size());
    for (const auto& pt : cloud.pts) {
        double y1 = (m.num[0][0] * pt[0] + m.num[0][1] * pt[1]) * inv_den + m.t[0];
        double y2 = (m.num[1][0] * pt[0] + m.num[1][1] * pt[1]) * inv_den + m.t[1];
        for (const auto& res : residues) {
            out.pts.push_back({wrap_angle(y1 + kTwoPi * res[0] * inv_den),
                               wrap_angle(y2 + kTwoPi * res[1] * inv_den)});
        }
    }
    return out;
}

const char* cloud_kind_name(CloudKind k) {
    switch (k) {
        case CloudKind::AMOEBA: return "AMOEBA";
        case CloudKind::COAMOEBA: return "COAMOEBA";
        case CloudKind::CONTOUR: return "CONTOUR";
    }
    return "?";
}

void dump_cloud(const PointCloud& cloud, const std::string& path,
                const std::string& polynomial, const SampleGrid& grid) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("dump_cloud: cannot open " + path);
    char buf[128];
    f << "# polynomial: " << polynomial << "\n";
    std::snprintf(buf, sizeof(buf), "# grid: %d x %d log-range [%.17g, %.17g]\n",
                  grid.n_radii, grid.n_angles, grid.rho_min, grid.rho_max);
    f << buf;
    f << "# kind: " << cloud_kind_name(cloud.kind) << "\n";
    for (const auto& pt : cloud.pts) {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", pt[0], pt[1]);
        f << buf;
    }
    if (!f) throw Error("dump_cloud: write failed for " + path);
}

}  // namespace amoebalink
