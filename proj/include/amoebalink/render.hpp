#pragma once

// Deterministic image emission: PPM heatmaps of torus rasters and SVG line
// diagrams of torus links in the fundamental domain.

#include <cstdint>
#include <string>
#include <vector>

#include "amoebalink/links.hpp"
#include "amoebalink/sampling.hpp"

namespace amoebalink {

struct ImageBuffer {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> rgb;  // row-major byte triples
};

enum class Palette { GRAYSCALE, HEAT };

// Log-scaled tone mapping 255*log(1+c)/log(1+c_max); zero count stays white.
ImageBuffer raster_to_image(const TorusRaster& r, Palette palette);

// Binary PPM "P6\n<w> <h>\n255\n" + raw bytes, bit-exact across runs.
void write_ppm(const ImageBuffer& img, const std::string& path);

ImageBuffer read_ppm(const std::string& path);

// One wrapped piece of a torus curve in unit-square coordinates.
struct UnitSegment {
    double x1, y1, x2, y2;
};

// Wrapped drawing of a geodesic: finitely many segments found by exact
// crossing of the domain edges; lifted, they are collinear with slope n/m.
std::vector<UnitSegment> geodesic_unit_segments(const TorusGeodesic& g);

// Wrapped drawing of a traced loop, optionally decimated to at most
// max_points polyline nodes.
std::vector<UnitSegment> loop_unit_segments(const TracedLoop& loop,
                                            size_t max_points = 1024);

// SVG 1.1 subset (line and rect only, 2-decimal coordinates); the unit square
// maps onto a size x size viewport, one stroke color per component from a
// fixed 8-color cycle.
void write_svg_link(const TorusLink& link, const std::string& path, int size = 512);

}  // namespace amoebalink
