#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gff2d/point.hpp"

namespace gff2d {

// Axis-aligned set of lattice vertices.
struct LatticeBox {
    Point corner;             // lower-left vertex
    std::int64_t width = 0;   // vertex count along x
    std::int64_t height = 0;  // vertex count along y

    std::int64_t vertex_count() const { return width * height; }
    Point max_corner() const { return {corner.x + width - 1, corner.y + height - 1}; }

    bool contains(Point p) const {
        return p.x >= corner.x && p.x < corner.x + width && p.y >= corner.y &&
               p.y < corner.y + height;
    }
    bool contains_box(const LatticeBox& b) const;
    bool intersects(const LatticeBox& b) const;

    // Row-major flat index, y-major so that scanning order matches reading order.
    std::int64_t index_of(Point p) const {
        return (p.y - corner.y) * width + (p.x - corner.x);
    }
    Point point_at(std::int64_t idx) const {
        return {corner.x + idx % width, corner.y + idx / width};
    }

    LatticeBox expanded(std::int64_t margin) const {
        return {{corner.x - margin, corner.y - margin}, width + 2 * margin, height + 2 * margin};
    }

    friend bool operator==(const LatticeBox&, const LatticeBox&) = default;
};

// V_N = [-N/2, N/2]^2 intersected with the lattice.
LatticeBox box_vn(std::int64_t n);

// V_ell(z): lattice points within L-infinity distance ell/2 of z.
LatticeBox box_vl(Point z, double ell);

// One tile of the scale-r partition; tile (a,b) covers lattice columns
// [a*r, (a+1)*r - 1] and likewise for rows.
struct BoxId {
    std::int64_t scale = 1;
    Point index;

    friend bool operator==(const BoxId&, const BoxId&) = default;
};

BoxId box_of(Point p, std::int64_t r);
LatticeBox box_lattice(const BoxId& id);
inline Point box_lower_left(const BoxId& id) {
    return {id.index.x * id.scale, id.index.y * id.scale};
}
RealPoint box_center(const BoxId& id);

// Tiles of side K^{j-2} meeting V_N.  When the nominal side drops below one
// (j < 2) every lattice point is its own tile, so side-1 tiles are returned.
std::vector<BoxId> end_boxes(int j, std::int64_t k_base, std::int64_t n);

// Closed parallelogram with corners (a,b), (a+l,b+h), (a+l,b+h+w), (a,b+w).
// Left and right sides are vertical; crossings connect them.
struct Parallelogram {
    double a = 0.0;
    double b = 0.0;
    double l = 0.0;
    double h = 0.0;
    double w = 0.0;

    double angle() const;  // arctan(h/l), in [0, pi/4]
    bool good() const;     // a,l integral and l = 16w
    Point anchor() const;
    std::array<RealPoint, 4> corners() const;
    LatticeBox bounding_lattice() const;

    bool contains(RealPoint p) const;
    bool contains(Point p) const { return contains(RealPoint{double(p.x), double(p.y)}); }

    std::vector<Point> lattice_points() const;
    // Lattice points of the first/last lattice column meeting the region.
    std::vector<Point> left_side_points() const;
    std::vector<Point> right_side_points() const;
};

Parallelogram make_parallelogram(double a, double b, double l, double h, double w);

// Four quarter-turn copies of a good parallelogram about its anchor.  Their
// union is a ring inside V_{4l}(v0) that surrounds V_{2w}(v0).
struct Annulus {
    Parallelogram base;
    Point center;  // the anchor v0
    std::array<std::array<RealPoint, 4>, 4> copy_corners;
    LatticeBox inner_box;  // V_{2w}(v0)
    LatticeBox outer_box;  // V_{4l}(v0)

    bool in_copy(Point p, int i) const;
    bool in_band(Point p) const;
    std::vector<Point> band_points() const;
};

Annulus rotate_and_assemble(const Parallelogram& d);

// The crossing construction for a pair of end-boxes at scale K^{j-2}: a slab
// of width 20K^{j-1} and length K^j/4 across the joining segment, plus
// floor(sqrt(K)/8) good sub-parallelograms centered in uniform sections with
// pairwise-disjoint surrounding boxes of side K^{j-1/2}.
struct CrossingGeometry {
    Parallelogram slab;
    std::vector<Parallelogram> subs;
    std::vector<LatticeBox> around;  // V_i = V_{K^{j-1/2}}(anchor of subs[i])
    LatticeBox hull;                 // V_{4K^j}(z_B)
};

CrossingGeometry crossing_geometry(const BoxId& b, const BoxId& b_prime, int j,
                                   std::int64_t k_base);

std::int64_t floor_div(std::int64_t a, std::int64_t b);

}  // namespace gff2d
