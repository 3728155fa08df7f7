#include "amoebalink/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace amoebalink {

ImageBuffer raster_to_image(const TorusRaster& r, Palette palette) {
    ImageBuffer img;
    img.width = r.width;
    img.height = r.height;
    img.rgb.assign(static_cast<size_t>(r.width) * r.height * 3, 255);

    uint32_t cmax = 0;
    for (uint32_t c : r.counts) cmax = std::max(cmax, c);
    if (cmax == 0) return img;
    double denom = std::log1p(static_cast<double>(cmax));

    for (size_t k = 0; k < r.counts.size(); ++k) {
        uint32_t c = r.counts[k];
        if (c == 0) continue;
        int v = static_cast<int>(std::lround(255.0 * std::log1p(static_cast<double>(c)) / denom));
        v = std::clamp(v, 0, 255);
        uint8_t* px = &img.rgb[k * 3];
        if (palette == Palette::GRAYSCALE) {
            px[0] = px[1] = px[2] = static_cast<uint8_t>(255 - v);
        } else {
            px[0] = static_cast<uint8_t>(255 - v / 4);
            px[1] = static_cast<uint8_t>(255 - v);
            px[2] = static_cast<uint8_t>(255 - v);
        }
    }
    return img;
}

void write_ppm(const ImageBuffer& img, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("write_ppm: cannot open " + path);
    f << "P6\n" << img.width << " " << img.height << "\n255\n";
    f.write(reinterpret_cast<const char*>(img.rgb.data()),
            static_cast<std::streamsize>(img.rgb.size()));
    if (!f) throw Error("write_ppm: write failed for " + path);
}

ImageBuffer read_ppm(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("read_ppm: cannot open " + path);
    std::string magic;
    int w = 0, h = 0, maxval = 0;
    f >> magic >> w >> h >> maxval;
    if (magic != "P6" || maxval != 255 || w < 1 || h < 1)
        throw Error("read_ppm: unsupported header in " + path);
    f.get();  // the single whitespace byte after maxval
    ImageBuffer img;
    img.width = w;
    img.height = h;
    img.rgb.resize(static_cast<size_t>(w) * h * 3);
    f.read(reinterpret_cast<char*>(img.rgb.data()),
           static_cast<std::streamsize>(img.rgb.size()));
    if (f.gcount() != static_cast<std::streamsize>(img.rgb.size()))
        throw Error("read_ppm: truncated file " + path);
    return img;
}

// ---------------------------------------------------------------------------
// Link diagrams
// ---------------------------------------------------------------------------

namespace {

double frac(double x) {
    double u = x - std::floor(x);
    return u >= 1.0 ? 0.0 : u;
}

void emit_piece(std::vector<UnitSegment>& out, double ta, double tb, double m, double n,
                double lambda) {
    if (tb - ta < 1e-12) return;
    double tm = 0.5 * (ta + tb);
    double xm = frac(m * tm);
    double ym = frac(n * tm + lambda);
    UnitSegment s;
    s.x1 = std::clamp(xm + m * (ta - tm), 0.0, 1.0);
    s.x2 = std::clamp(xm + m * (tb - tm), 0.0, 1.0);
    s.y1 = std::clamp(ym + n * (ta - tm), 0.0, 1.0);
    s.y2 = std::clamp(ym + n * (tb - tm), 0.0, 1.0);
    out.push_back(s);
}

}  // namespace

std::vector<UnitSegment> geodesic_unit_segments(const TorusGeodesic& g) {
    if (g.m < 1) throw Error("geodesic_unit_segments: need m >= 1");
    const double lambda = g.offset / kTwoPi;

    std::vector<double> cuts{0.0, 1.0};
    for (int k = 1; k < g.m; ++k) cuts.push_back(static_cast<double>(k) / g.m);
    if (g.n != 0) {
        // n t + lambda integral inside (0,1)
        double lo = std::min(lambda, lambda + g.n);
        double hi = std::max(lambda, lambda + g.n);
        for (long long j = static_cast<long long>(std::ceil(lo)); j <= std::floor(hi); ++j) {
            double t = (static_cast<double>(j) - lambda) / g.n;
            if (t > 1e-12 && t < 1.0 - 1e-12) cuts.push_back(t);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               cuts.end());

    std::vector<UnitSegment> out;
    for (size_t k = 0; k + 1 < cuts.size(); ++k)
        emit_piece(out, cuts[k], cuts[k + 1], g.m, g.n, lambda);
    return out;
}

std::vector<UnitSegment> loop_unit_segments(const TracedLoop& loop, size_t max_points) {
    std::vector<UnitSegment> out;
    size_t n = loop.points.size();
    if (n < 2) return out;
    size_t stride = std::max<size_t>(1, (n + max_points - 1) / max_points);

    for (size_t k = 0; k < n; k += stride) {
        size_t next = k + stride < n ? k + stride : 0;
        double x1 = loop.points[k][0] / kTwoPi;
        double y1 = loop.points[k][1] / kTwoPi;
        double dx = std::remainder(loop.points[next][0] - loop.points[k][0], kTwoPi) / kTwoPi;
        double dy = std::remainder(loop.points[next][1] - loop.points[k][1], kTwoPi) / kTwoPi;

        // split at unit-cell boundary crossings (at most one per axis per step)
        std::vector<double> ts{0.0, 1.0};
        auto cross_at = [&](double a, double d) {
            if (d > 0 && a + d > 1.0) ts.push_back((1.0 - a) / d);
            if (d < 0 && a + d < 0.0) ts.push_back(-a / d);
        };
        cross_at(x1, dx);
        cross_at(y1, dy);
        std::sort(ts.begin(), ts.end());
        for (size_t s = 0; s + 1 < ts.size(); ++s) {
            double ta = ts[s], tb = ts[s + 1];
            if (tb - ta < 1e-12) continue;
            double tm = 0.5 * (ta + tb);
            double sx = std::floor(x1 + dx * tm);  // cell shift of this piece
            double sy = std::floor(y1 + dy * tm);
            UnitSegment seg;
            seg.x1 = std::clamp(x1 + dx * ta - sx, 0.0, 1.0);
            seg.y1 = std::clamp(y1 + dy * ta - sy, 0.0, 1.0);
            seg.x2 = std::clamp(x1 + dx * tb - sx, 0.0, 1.0);
            seg.y2 = std::clamp(y1 + dy * tb - sy, 0.0, 1.0);
            if (std::abs(seg.x1 - seg.x2) > 1e-12 || std::abs(seg.y1 - seg.y2) > 1e-12)
                out.push_back(seg);
        }
        if (next == 0) break;
    }
    return out;
}

void write_svg_link(const TorusLink& link, const std::string& path, int size) {
    if (link.component_count() == 0) throw Error("write_svg_link: empty link");
    if (size < 16) throw Error("write_svg_link: viewport too small");
    static const char* kColors[8] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                     "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("write_svg_link: cannot open " + path);

    char buf[256];
    f << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                  "width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n",
                  size, size, size, size);
    f << buf;
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"0.00\" y=\"0.00\" width=\"%.2f\" height=\"%.2f\" "
                  "fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"1.00\"/>\n",
                  static_cast<double>(size), static_cast<double>(size));
    f << buf;

    double sw = std::max(1.0, size / 256.0);
    size_t comp = 0;
    auto emit = [&](const std::vector<UnitSegment>& segs, size_t color_idx) {
        for (const UnitSegment& s : segs) {
            // SVG y grows downward; flip so theta2 grows upward like the plots
            std::snprintf(buf, sizeof(buf),
                          "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                          "stroke=\"%s\" stroke-width=\"%.2f\"/>\n",
                          s.x1 * size, (1.0 - s.y1) * size, s.x2 * size, (1.0 - s.y2) * size,
                          kColors[color_idx % 8], sw);
            f << buf;
        }
    };
    if (link.source == LinkSource::FORMULA) {
        for (const TorusGeodesic& g : link.geodesics) emit(geodesic_unit_segments(g), comp++);
    } else {
        for (const TracedLoop& l : link.loops) emit(loop_unit_segments(l), comp++);
    }
    f << "</svg>\n";
    if (!f) throw Error("write_svg_link: write failed for " + path);
}

}  // namespace amoebalink
