#pragma once

// Log / Arg image sampling of plane curves, torus rasterization, complement
// counting, the argument-map contour filter, and affine torus transforms of
// point clouds.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "amoebalink/poly.hpp"
#include "amoebalink/roots.hpp"

namespace amoebalink {

enum class CloudKind { AMOEBA, COAMOEBA, CONTOUR };

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Reduce an angle to [0, 2*pi).
double wrap_angle(double theta);

struct TorusPoint {
    double theta1 = 0.0;  // in [0, 2*pi)
    double theta2 = 0.0;
    static TorusPoint reduced(double t1, double t2) {
        return {wrap_angle(t1), wrap_angle(t2)};
    }
};

struct PointCloud {
    CloudKind kind = CloudKind::COAMOEBA;
    std::vector<std::array<double, 2>> pts;
    bool torus_reduced() const { return kind != CloudKind::AMOEBA; }
};

struct TorusRaster {
    int width = 0;
    int height = 0;
    std::vector<uint32_t> counts;  // row-major, counts[y * width + x]

    TorusRaster() = default;
    TorusRaster(int w, int h) : width(w), height(h), counts(static_cast<size_t>(w) * h, 0) {}
    uint32_t at(int x, int y) const { return counts[static_cast<size_t>(y) * width + x]; }
    uint64_t total() const;
};

struct SampleGrid {
    int n_radii = 700;
    int n_angles = 2100;
    double rho_min = -3.0;
    double rho_max = 3.0;
};

struct SampleStats {
    uint64_t fibers = 0;
    uint64_t skipped_fibers = 0;
    uint64_t deposits = 0;
    uint64_t degree_collapses = 0;
};

// Arg-image samples (theta1, arg w) over the log-radius x angle grid. Fibers
// flagged by the solver (vertical, cluster, residual failure) are skipped and
// counted, never interpolated.
PointCloud sample_coamoeba(const LaurentPolynomial& p, const SampleGrid& grid,
                           const SolverConfig& cfg = SolverConfig{},
                           SampleStats* stats = nullptr);

// Log-image samples (rho, log |w|) over the same grid.
PointCloud sample_amoeba(const LaurentPolynomial& p, const SampleGrid& grid,
                         const SolverConfig& cfg = SolverConfig{},
                         SampleStats* stats = nullptr);

struct LogGaussValue {
    Complex gamma;         // (z f_z) / (w f_w)
    bool singular = false; // both logarithmic derivatives vanish
};

// Logarithmic Gauss ratio at an on-curve point; real values mark critical
// points of both the Log and Arg maps. Throws if (z, w) is not on the curve.
LogGaussValue log_gauss(const LaurentPolynomial& p, Complex z, Complex w);

// Arg-images of sampled on-curve points with |Im gamma| < im_tol.
PointCloud contour_sample(const LaurentPolynomial& p, const SampleGrid& grid,
                          double im_tol = 1e-3,
                          const SolverConfig& cfg = SolverConfig{},
                          SampleStats* stats = nullptr);

// Dual-projection variants: the same image sampled over z-fibers and, with
// coordinates swapped back, over w-fibers of the variable-swapped polynomial.
// One projection undersamples wherever its roots pass 0 or infinity; the
// other projection is regular there, so the union rasterizes cleanly. Falls
// back to whichever projection exists when the curve depends on one variable.
PointCloud sample_coamoeba_dual(const LaurentPolynomial& p, const SampleGrid& grid,
                                const SolverConfig& cfg = SolverConfig{},
                                SampleStats* stats = nullptr);
PointCloud sample_amoeba_dual(const LaurentPolynomial& p, const SampleGrid& grid,
                              const SolverConfig& cfg = SolverConfig{},
                              SampleStats* stats = nullptr);
PointCloud contour_sample_dual(const LaurentPolynomial& p, const SampleGrid& grid,
                               double im_tol = 1e-3,
                               const SolverConfig& cfg = SolverConfig{},
                               SampleStats* stats = nullptr);

// Count histogram of a torus-reduced cloud. Bin (u, v) covers
// [2*pi*u/W, 2*pi*(u+1)/W) x [2*pi*v/H, 2*pi*(v+1)/H).
TorusRaster rasterize(const PointCloud& cloud, int width, int height);

// Number of 4-connected regions of bins with count < threshold, with opposite
// raster edges identified.
int complement_components(const TorusRaster& r, uint32_t occupancy_threshold = 1);

// Chebyshev (8-neighbour) distance on the wrapped grid from every bin to the
// nearest bin with count >= threshold; -1 everywhere when none is occupied.
std::vector<int> chebyshev_distance_to_occupied(const TorusRaster& r,
                                                uint32_t threshold = 1);

// x -> M x + t on the torus, M rational with denominator `den`. Each input
// point emits the den^2 branch images M(x + 2*pi*k), k in [0,den)^2, reduced
// mod 2*pi (duplicate branch translates collapse).
struct AffineTorusMap {
    long long num[2][2] = {{1, 0}, {0, 1}};
    long long den = 1;
    double t[2] = {0.0, 0.0};
    long long num_det() const { return num[0][0] * num[1][1] - num[0][1] * num[1][0]; }
};

PointCloud transform_cloud(const PointCloud& cloud, const AffineTorusMap& m);

// Text dump, one "x y" pair per line; '#' header records polynomial, grid, kind.
void dump_cloud(const PointCloud& cloud, const std::string& path,
                const std::string& polynomial, const SampleGrid& grid);

const char* cloud_kind_name(CloudKind k);

}  // namespace amoebalink
