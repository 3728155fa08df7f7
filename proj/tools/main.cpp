// amoebalink: amoebas, coamoebas, tropical curves, and torus links of plane
// curves from the command line.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "amoebalink/links.hpp"
#include "amoebalink/poly.hpp"
#include "amoebalink/render.hpp"
#include "amoebalink/roots.hpp"
#include "amoebalink/sampling.hpp"
#include "amoebalink/tropical.hpp"

namespace al = amoebalink;

namespace {

struct Options {
    std::string poly;
    std::optional<double> tau;
    std::string matrix;  // "a,b,c,d"
    int p = 0, q = 0;
    std::string grid;       // "R,A"
    std::string log_range;  // "MIN,MAX"
    int raster = 512;
    double im_tol = 1e-3;
    std::string out;
    std::string svg;
    std::string cloud;
    bool report = false;
    bool check_formula = false;
    long long seed = 0;
    std::string jobs_file;
};

std::vector<double> split_numbers(const std::string& s, size_t expected, const char* what) {
    std::vector<double> vals;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            vals.push_back(std::stod(item));
        } catch (...) {
            throw al::Error(std::string("bad number in --") + what + ": " + item);
        }
    }
    if (vals.size() != expected)
        throw al::Error(std::string("--") + what + " wants " + std::to_string(expected) +
                        " comma-separated values");
    return vals;
}

al::SampleGrid make_grid(const Options& opt) {
    al::SampleGrid g;
    if (!opt.grid.empty()) {
        auto v = split_numbers(opt.grid, 2, "grid");
        g.n_radii = static_cast<int>(v[0]);
        g.n_angles = static_cast<int>(v[1]);
    }
    if (!opt.log_range.empty()) {
        auto v = split_numbers(opt.log_range, 2, "log-range");
        g.rho_min = v[0];
        g.rho_max = v[1];
    }
    return g;
}

al::LatticeMatrix make_matrix(const Options& opt) {
    if (!opt.matrix.empty()) {
        auto v = split_numbers(opt.matrix, 4, "matrix");
        return {static_cast<long long>(v[0]), static_cast<long long>(v[1]),
                static_cast<long long>(v[2]), static_cast<long long>(v[3])};
    }
    if (opt.p > 0 && opt.q > 0) return al::LatticeMatrix::diagonal(opt.p, opt.q);
    throw al::Error("need --matrix a,b,c,d or --p/--q");
}

al::SolverConfig make_solver(const Options& opt) {
    al::SolverConfig cfg;
    cfg.seed = static_cast<uint64_t>(opt.seed);
    return cfg;
}

std::string homology_text(const al::LinkDescription& d) {
    bool uniform = true;
    for (const auto& h : d.homology) uniform = uniform && h == d.homology[0];
    std::string s;
    size_t count = uniform ? 1 : d.homology.size();
    for (size_t k = 0; k < count; ++k) {
        if (k) s += " ";
        s += "(" + std::to_string(d.homology[k][0]) + "," + std::to_string(d.homology[k][1]) + ")";
    }
    return s;
}

void report_link(const al::TorusLink& link) {
    al::LinkDescription d = al::classify_link(link);
    std::printf("components: %zu, homology: %s, label: %s\n", d.components,
                homology_text(d).c_str(), d.label.c_str());
    if (link.source == al::LinkSource::FORMULA) {
        for (size_t k = 0; k < link.geodesics.size(); ++k) {
            const al::TorusGeodesic& g = link.geodesics[k];
            std::printf("component %zu: homology (%d,%d), offset %.12g, multiplicity %d\n", k,
                        g.m, g.n, g.offset, g.multiplicity);
        }
    } else {
        for (size_t k = 0; k < link.loops.size(); ++k) {
            const al::TracedLoop& l = link.loops[k];
            std::printf("component %zu: homology (%d,%d), points %zu, closure_gap %.3g\n", k,
                        l.m, l.n, l.points.size(), l.closure_gap);
        }
    }
}

// Plain box histogram for amoeba images; torus pipelines use rasterize().
al::ImageBuffer plane_image(const al::PointCloud& cloud, int n, double x0, double x1,
                            double y0, double y1) {
    al::TorusRaster grid(n, n);
    for (const auto& pt : cloud.pts) {
        double ux = (pt[0] - x0) / (x1 - x0);
        double uy = (pt[1] - y0) / (y1 - y0);
        if (ux < 0 || ux >= 1 || uy < 0 || uy >= 1) continue;
        int x = std::min(n - 1, static_cast<int>(ux * n));
        int y = std::min(n - 1, static_cast<int>(uy * n));
        ++grid.counts[static_cast<size_t>(y) * n + x];
    }
    return al::raster_to_image(grid, al::Palette::HEAT);
}

int run_sampler_command(const std::string& name, const Options& opt) {
    al::LaurentPolynomial poly = al::parse_polynomial(opt.poly, opt.tau);
    al::SampleGrid grid = make_grid(opt);
    al::SolverConfig cfg = make_solver(opt);
    al::SampleStats stats;

    // both coordinate projections, so rasters fill cleanly at high resolution
    al::PointCloud cloud;
    if (name == "amoeba")
        cloud = al::sample_amoeba_dual(poly, grid, cfg, &stats);
    else if (name == "coamoeba")
        cloud = al::sample_coamoeba_dual(poly, grid, cfg, &stats);
    else
        cloud = al::contour_sample_dual(poly, grid, opt.im_tol, cfg, &stats);

    if (!opt.cloud.empty()) al::dump_cloud(cloud, opt.cloud, al::to_string(poly), grid);
    if (!opt.out.empty()) {
        if (cloud.torus_reduced()) {
            al::TorusRaster r = al::rasterize(cloud, opt.raster, opt.raster);
            al::write_ppm(al::raster_to_image(r, al::Palette::HEAT), opt.out);
        } else {
            double pad = 0.5 * (grid.rho_max - grid.rho_min) + 1.0;
            double lo = grid.rho_min - pad, hi = grid.rho_max + pad;
            al::write_ppm(plane_image(cloud, opt.raster, lo, hi, lo, hi), opt.out);
        }
    }
    if (opt.report) {
        std::printf("subcommand: %s\n", name.c_str());
        std::printf("polynomial: %s\n", al::to_string(poly).c_str());
        std::printf("grid: %dx%d log-range [%g, %g]\n", grid.n_radii, grid.n_angles,
                    grid.rho_min, grid.rho_max);
        std::printf("fibers: %llu\n", static_cast<unsigned long long>(stats.fibers));
        std::printf("skipped_fibers: %llu\n",
                    static_cast<unsigned long long>(stats.skipped_fibers));
        std::printf("deposits: %llu\n", static_cast<unsigned long long>(stats.deposits));
        if (name == "coamoeba") {
            al::TorusRaster r = al::rasterize(cloud, opt.raster, opt.raster);
            std::printf("complement_components: %d\n", al::complement_components(r, 1));
        }
    }
    return 0;
}

int run_parse_info(const Options& opt) {
    al::LaurentPolynomial poly = al::parse_polynomial(opt.poly, opt.tau);
    std::printf("polynomial: %s\n", al::to_string(poly).c_str());
    std::printf("support: %zu terms\n", poly.support_size());
    al::NewtonPolygon np = al::newton_polygon(poly);
    std::string verts;
    for (const al::Exp& e : np.vertices)
        verts += "(" + std::to_string(e.i) + "," + std::to_string(e.j) + ") ";
    std::printf("newton_polygon: %s\n", verts.c_str());
    std::printf("twice_area: %lld\n", np.twice_area);
    try {
        al::QuasiHomogeneousData d = al::quasi_homogeneous_decompose(poly);
        std::printf("quasi_homogeneous: yes, mu=%d/%d, c=%lld/%lld\n", d.mu.p, d.mu.q,
                    d.c.num, d.c.den);
    } catch (const al::Error&) {
        std::printf("quasi_homogeneous: no\n");
    }
    return 0;
}

int run_tropical(const Options& opt) {
    std::string text = opt.poly;
    if (std::filesystem::exists(text)) {
        std::ifstream f(text);
        std::stringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    } else {
        for (char& c : text)
            if (c == ';') c = '\n';
    }
    al::TropicalPolynomial tp = al::TropicalPolynomial::parse(text);
    al::DualSubdivision sub = al::dual_subdivision(tp);
    al::TropicalCurve curve = al::corner_locus(tp);
    if (!opt.out.empty()) {
        std::ofstream f(opt.out, std::ios::binary);
        f << al::curve_to_text(curve);
    }
    if (opt.report) {
        al::DualityReport rep = al::check_duality(curve, sub);
        std::printf("terms: %zu\n", tp.terms().size());
        std::printf("cells: %zu, edges: %zu\n", sub.cells.size(), sub.edges.size());
        std::printf("curve_vertices: %zu, curve_edges: %zu\n", curve.vertices.size(),
                    curve.edges.size());
        std::printf("duality: %s\n", rep.summary.c_str());
        if (!rep.pass) return 1;
    }
    return 0;
}

int run_singularity_link(const Options& opt) {
    al::LaurentPolynomial poly = al::parse_polynomial(opt.poly, opt.tau);
    al::TorusLink link = al::singularity_link(poly, make_solver(opt));
    if (!opt.svg.empty()) al::write_svg_link(link, opt.svg, opt.raster);
    report_link(link);
    return 0;
}

int run_unit_fiber(const Options& opt) {
    al::LatticeMatrix L = make_matrix(opt);
    double tau = opt.tau.value_or(0.5);
    al::TorusLink link = al::unit_fiber_link(L, tau);
    if (!opt.svg.empty()) al::write_svg_link(link, opt.svg, opt.raster);
    std::printf("matrix: [%lld %lld; %lld %lld], tau: %g\n", L.a, L.b, L.c, L.d, tau);
    report_link(link);
    if (opt.check_formula) {
        al::TauRegime regime = tau > 1.0 ? al::TauRegime::TAU_GT_1 : al::TauRegime::TAU_LT_1;
        long long formula = al::count_components_lee_yang(L, regime);
        bool match = formula == static_cast<long long>(link.component_count());
        std::printf("traced: %zu, formula: %lld, %s\n", link.component_count(), formula,
                    match ? "MATCH" : "MISMATCH");
        if (!match) return 1;
    }
    return 0;
}

int run_classify(const Options& opt) {
    al::TorusLink link;
    if (!opt.poly.empty()) {
        link = al::singularity_link(al::parse_polynomial(opt.poly, opt.tau), make_solver(opt));
    } else {
        link = al::unit_fiber_link(make_matrix(opt), opt.tau.value_or(0.5));
    }
    al::LinkDescription d = al::classify_link(link);
    std::printf("components: %zu\n", d.components);
    std::printf("homology: %s\n", homology_text(d).c_str());
    std::printf("label: %s\n", d.label.c_str());
    return 0;
}

int run_argv(const std::vector<std::string>& args);

int run_batch(const Options& opt) {
    std::ifstream f(opt.jobs_file);
    if (!f) throw al::Error("batch: cannot open " + opt.jobs_file);
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        // whitespace split with double-quote grouping
        std::vector<std::string> args;
        std::string cur;
        bool quoted = false, have = false;
        for (char c : line) {
            if (c == '"') {
                quoted = !quoted;
                have = true;
            } else if (!quoted && std::isspace(static_cast<unsigned char>(c))) {
                if (have) args.push_back(cur);
                cur.clear();
                have = false;
            } else {
                cur += c;
                have = true;
            }
        }
        if (have) args.push_back(cur);
        if (args.empty()) continue;
        std::printf("== job %d: %s\n", lineno, line.c_str());
        int rc = run_argv(args);
        if (rc != 0) return rc;
    }
    return 0;
}

int run_argv(const std::vector<std::string>& args) {
    CLI::App app{"amoebas, coamoebas, tropical curves, and torus links of plane curves"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--poly", opt.poly, "polynomial text");
        sub->add_option("--tau", opt.tau, "value substituted for 'tau'");
        sub->add_option("--matrix", opt.matrix, "lattice matrix a,b,c,d (columns (a,c),(b,d))");
        sub->add_option("--p", opt.p, "diagonal matrix entry p");
        sub->add_option("--q", opt.q, "diagonal matrix entry q");
        sub->add_option("--grid", opt.grid, "sampling grid R,A (radii, angles)");
        sub->add_option("--log-range", opt.log_range, "log-radius range MIN,MAX");
        sub->add_option("--raster", opt.raster, "raster / viewport size");
        sub->add_option("--im-tol", opt.im_tol, "contour |Im gamma| tolerance");
        sub->add_option("--out", opt.out, "output image (PPM) or curve text");
        sub->add_option("--svg", opt.svg, "output link diagram (SVG)");
        sub->add_option("--cloud", opt.cloud, "output point cloud dump");
        sub->add_flag("--report", opt.report, "print a text report");
        sub->add_flag("--check-formula", opt.check_formula,
                      "compare traced count against the gcd formula");
        sub->add_option("--seed", opt.seed, "solver seed");
        return sub;
    };

    add_common(app.add_subcommand("parse-info", "parse a polynomial and describe it"));
    add_common(app.add_subcommand("amoeba", "sample the Log image"));
    add_common(app.add_subcommand("coamoeba", "sample the Arg image"));
    add_common(app.add_subcommand("contour", "sample argument-map critical values"));
    add_common(app.add_subcommand("tropical", "corner locus and dual subdivision"));
    add_common(app.add_subcommand("singularity-link", "torus link of a quasi-homogeneous singularity"));
    add_common(app.add_subcommand("unit-fiber", "torus link over the origin of the amoeba"));
    add_common(app.add_subcommand("classify", "describe a torus link"));
    CLI::App* batch = app.add_subcommand("batch", "run a jobs file, one command line per job");
    batch->add_option("jobs", opt.jobs_file, "jobs file")->required();

    // CLI11 parses back-to-front
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        std::string name = app.get_subcommands().front()->get_name();
        if (name == "parse-info") return run_parse_info(opt);
        if (name == "amoeba" || name == "coamoeba" || name == "contour")
            return run_sampler_command(name, opt);
        if (name == "tropical") return run_tropical(opt);
        if (name == "singularity-link") return run_singularity_link(opt);
        if (name == "unit-fiber") return run_unit_fiber(opt);
        if (name == "classify") return run_classify(opt);
        if (name == "batch") return run_batch(opt);
        return 2;
    } catch (const al::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_argv(args);
}
