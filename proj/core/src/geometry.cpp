#include "gff2d/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "gff2d/error.hpp"

namespace gff2d {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

bool LatticeBox::contains_box(const LatticeBox& b) const {
    if (b.width <= 0 || b.height <= 0) return true;
    return contains(b.corner) && contains(b.max_corner());
}

bool LatticeBox::intersects(const LatticeBox& b) const {
    if (width <= 0 || height <= 0 || b.width <= 0 || b.height <= 0) return false;
    return corner.x <= b.max_corner().x && b.corner.x <= max_corner().x &&
           corner.y <= b.max_corner().y && b.corner.y <= max_corner().y;
}

LatticeBox box_vn(std::int64_t n) {
    if (n < 1) throw config_error("box_vn: N must be >= 1");
    std::int64_t half = n / 2;
    std::int64_t lo = -half;
    std::int64_t hi = half;
    if (n % 2 != 0) {
        lo = -(n - 1) / 2;
        hi = (n - 1) / 2;
    }
    return {{lo, lo}, hi - lo + 1, hi - lo + 1};
}

LatticeBox box_vl(Point z, double ell) {
    if (!(ell > 0.0)) throw config_error("box_vl: side must be positive");
    double half = ell / 2.0;
    auto lo_x = std::int64_t(std::ceil(double(z.x) - half));
    auto hi_x = std::int64_t(std::floor(double(z.x) + half));
    auto lo_y = std::int64_t(std::ceil(double(z.y) - half));
    auto hi_y = std::int64_t(std::floor(double(z.y) + half));
    return {{lo_x, lo_y}, hi_x - lo_x + 1, hi_y - lo_y + 1};
}

BoxId box_of(Point p, std::int64_t r) {
    if (r < 1) throw config_error("box_of: scale must be >= 1");
    return {r, {floor_div(p.x, r), floor_div(p.y, r)}};
}

LatticeBox box_lattice(const BoxId& id) {
    return {{id.index.x * id.scale, id.index.y * id.scale}, id.scale, id.scale};
}

RealPoint box_center(const BoxId& id) {
    return {(double(id.index.x) + 0.5) * double(id.scale) - 0.5,
            (double(id.index.y) + 0.5) * double(id.scale) - 0.5};
}

std::vector<BoxId> end_boxes(int j, std::int64_t k_base, std::int64_t n) {
    if (j < 1) throw config_error("end_boxes: j must be >= 1");
    if (k_base < 2 || (k_base & (k_base - 1)) != 0)
        throw config_error("end_boxes: K must be a power of two >= 2");
    if (n < 1) return {};

    std::int64_t scale = 1;
    if (j >= 2) {
        for (int i = 0; i < j - 2; ++i) {
            if (scale > (std::int64_t(1) << 45) / k_base)
                throw config_error("end_boxes: tile side too large to enumerate");
            scale *= k_base;
        }
    }
    LatticeBox v = box_vn(n);
    std::vector<BoxId> out;
    std::int64_t a0 = floor_div(v.corner.x, scale), a1 = floor_div(v.max_corner().x, scale);
    std::int64_t b0 = floor_div(v.corner.y, scale), b1 = floor_div(v.max_corner().y, scale);
    out.reserve(std::size_t((a1 - a0 + 1) * (b1 - b0 + 1)));
    for (std::int64_t b = b0; b <= b1; ++b)
        for (std::int64_t a = a0; a <= a1; ++a) out.push_back({scale, {a, b}});
    return out;
}

// ---------------------------------------------------------------------------
// Parallelograms

namespace {

// Membership tolerance. Exact (no effect) when all inputs are integral and
// products stay below 2^63; otherwise a 1e-9-relative guard band.
long double memb_tol(double l, double w) {
    long double scale = std::max<long double>(1.0L, (long double)(l) * std::max(1.0, w));
    return 1e-9L * scale;
}

}  // namespace

double Parallelogram::angle() const { return std::atan2(h, l); }

bool Parallelogram::good() const {
    return a == std::floor(a) && l == std::floor(l) && l == 16.0 * w;
}

Point Parallelogram::anchor() const {
    long double ll = l, hh = h;
    long double den = ll * ll + hh * hh;
    long double s2 = den > 0 ? hh * hh / den : 0.0L;   // sin^2(theta)
    long double sc = den > 0 ? hh * ll / den : 0.0L;   // sin(theta)cos(theta)
    // offsets relative to the base corner; the absolute form leaves the
    // quarter-turn ring broken away from the origin
    long double vx = a + (h + l - 7.0L * w * s2) / 2.0L;
    long double vy = b + (h - l + 7.0L * w * sc) / 2.0L;
    return {std::int64_t(std::floor(vx)), std::int64_t(std::floor(vy))};
}

std::array<RealPoint, 4> Parallelogram::corners() const {
    return {RealPoint{a, b}, {a + l, b + h}, {a + l, b + h + w}, {a, b + w}};
}

LatticeBox Parallelogram::bounding_lattice() const {
    auto lo_x = std::int64_t(std::ceil(a - 1e-9));
    auto hi_x = std::int64_t(std::floor(a + l + 1e-9));
    auto lo_y = std::int64_t(std::ceil(b - 1e-9));
    auto hi_y = std::int64_t(std::floor(b + h + w + 1e-9));
    return {{lo_x, lo_y}, hi_x - lo_x + 1, hi_y - lo_y + 1};
}

bool Parallelogram::contains(RealPoint p) const {
    long double tol = memb_tol(l, w);
    long double dx = (long double)(p.x) - a;
    long double tx = 1e-9L * std::max(1.0, l);
    if (dx < -tx || dx > (long double)(l) + tx) return false;
    // between the slanted edges: 0 <= l*(y-b) - dx*h <= l*w
    long double cross = (long double)(l) * ((long double)(p.y) - b) - dx * (long double)(h);
    return cross >= -tol && cross <= (long double)(l) * w + tol;
}

std::vector<Point> Parallelogram::lattice_points() const {
    std::vector<Point> pts;
    LatticeBox bb = bounding_lattice();
    for (std::int64_t y = bb.corner.y; y <= bb.max_corner().y; ++y)
        for (std::int64_t x = bb.corner.x; x <= bb.max_corner().x; ++x)
            if (contains(Point{x, y})) pts.push_back({x, y});
    return pts;
}

std::vector<Point> Parallelogram::left_side_points() const {
    std::vector<Point> pts;
    auto x0 = std::int64_t(std::ceil(a - 1e-9));
    auto lo_y = std::int64_t(std::ceil(b - 1e-9));
    auto hi_y = std::int64_t(std::floor(b + h + w + 1e-9));
    for (std::int64_t y = lo_y; y <= hi_y; ++y)
        if (contains(Point{x0, y})) pts.push_back({x0, y});
    return pts;
}

std::vector<Point> Parallelogram::right_side_points() const {
    std::vector<Point> pts;
    auto x1 = std::int64_t(std::floor(a + l + 1e-9));
    auto lo_y = std::int64_t(std::ceil(b - 1e-9));
    auto hi_y = std::int64_t(std::floor(b + h + w + 1e-9));
    for (std::int64_t y = lo_y; y <= hi_y; ++y)
        if (contains(Point{x1, y})) pts.push_back({x1, y});
    return pts;
}

Parallelogram make_parallelogram(double a, double b, double l, double h, double w) {
    if (!(w >= 10.0))
        throw config_error("make_parallelogram: width must be >= 10, got " + std::to_string(w));
    if (!(l >= w))
        throw config_error("make_parallelogram: length must be >= width (l=" +
                           std::to_string(l) + ", w=" + std::to_string(w) + ")");
    if (!(h >= 0.0 && h <= l))
        throw config_error("make_parallelogram: rise must satisfy 0 <= h <= l, got " +
                           std::to_string(h));
    return {a, b, l, h, w};
}

// ---------------------------------------------------------------------------
// Annulus

namespace {

Point rot90_about(Point p, Point c) { return {c.x - (p.y - c.y), c.y + (p.x - c.x)}; }
Point rot270_about(Point p, Point c) { return {c.x + (p.y - c.y), c.y - (p.x - c.x)}; }
RealPoint rot90_about(RealPoint p, Point c) {
    return {double(c.x) - (p.y - double(c.y)), double(c.y) + (p.x - double(c.x))};
}

}  // namespace

bool Annulus::in_copy(Point p, int i) const {
    Point q = p;
    for (int t = 0; t < i; ++t) q = rot270_about(q, center);
    return base.contains(q);
}

bool Annulus::in_band(Point p) const {
    for (int i = 0; i < 4; ++i)
        if (in_copy(p, i)) return true;
    return false;
}

std::vector<Point> Annulus::band_points() const {
    std::vector<Point> pts;
    for (std::int64_t y = outer_box.corner.y; y <= outer_box.max_corner().y; ++y)
        for (std::int64_t x = outer_box.corner.x; x <= outer_box.max_corner().x; ++x)
            if (in_band({x, y})) pts.push_back({x, y});
    return pts;
}

Annulus rotate_and_assemble(const Parallelogram& d) {
    if (!d.good())
        throw config_error("rotate_and_assemble: parallelogram must be good "
                           "(a,l integral and l = 16w)");
    Annulus ann;
    ann.base = d;
    ann.center = d.anchor();
    auto base_corners = d.corners();
    for (int i = 0; i < 4; ++i) {
        auto c = base_corners;
        for (int t = 0; t < i; ++t)
            for (auto& p : c) p = rot90_about(p, ann.center);
        ann.copy_corners[std::size_t(i)] = c;
    }
    ann.inner_box = box_vl(ann.center, 2.0 * d.w);
    ann.outer_box = box_vl(ann.center, 4.0 * d.l);

    for (const auto& copy : ann.copy_corners)
        for (const auto& p : copy)
            if (std::abs(p.x - double(ann.center.x)) > 2.0 * d.l + 1e-6 ||
                std::abs(p.y - double(ann.center.y)) > 2.0 * d.l + 1e-6)
                throw invariant_error("rotate_and_assemble: copy escapes V_{4l}(v0)");

    if (ann.outer_box.width <= 4100) {
        // Lattice check: a 4-adjacent flood from outside must not reach the
        // inner box without touching the band.
        LatticeBox world = ann.outer_box.expanded(1);
        std::vector<std::uint8_t> seen(std::size_t(world.vertex_count()), 0);
        std::deque<Point> queue;
        auto blocked = [&](Point p) { return ann.in_band(p); };
        auto push = [&](Point p) {
            auto idx = std::size_t(world.index_of(p));
            if (!seen[idx] && !blocked(p)) {
                seen[idx] = 1;
                queue.push_back(p);
            }
        };
        for (std::int64_t x = world.corner.x; x <= world.max_corner().x; ++x) {
            push({x, world.corner.y});
            push({x, world.max_corner().y});
        }
        for (std::int64_t y = world.corner.y; y <= world.max_corner().y; ++y) {
            push({world.corner.x, y});
            push({world.max_corner().x, y});
        }
        while (!queue.empty()) {
            Point p = queue.front();
            queue.pop_front();
            const Point nbrs[4] = {{p.x + 1, p.y}, {p.x, p.y + 1}, {p.x - 1, p.y}, {p.x, p.y - 1}};
            for (Point q : nbrs)
                if (world.contains(q)) push(q);
        }
        for (std::int64_t y = ann.inner_box.corner.y; y <= ann.inner_box.max_corner().y; ++y)
            for (std::int64_t x = ann.inner_box.corner.x; x <= ann.inner_box.max_corner().x; ++x) {
                if (ann.in_band({x, y}))
                    throw invariant_error("rotate_and_assemble: band touches the inner box");
                if (seen[std::size_t(world.index_of({x, y}))])
                    throw invariant_error("rotate_and_assemble: band fails to surround V_{2w}(v0)");
            }
    } else {
        // Too large to flood; check that rays from the center meet the band.
        for (int t = 0; t < 1024; ++t) {
            double ang = 2.0 * 3.14159265358979323846 * (double(t) + 0.5) / 1024.0;
            bool hit = false;
            for (double r = 2.0 * d.w; r <= 2.0 * d.l + d.w && !hit; r += d.w / 4.0) {
                Point p{std::int64_t(std::llround(double(ann.center.x) + r * std::cos(ang))),
                        std::int64_t(std::llround(double(ann.center.y) + r * std::sin(ang)))};
                hit = ann.in_band(p);
            }
            if (!hit) throw invariant_error("rotate_and_assemble: ray escapes the band");
        }
    }
    return ann;
}

// ---------------------------------------------------------------------------
// Crossing construction

CrossingGeometry crossing_geometry(const BoxId& b, const BoxId& b_prime, int j,
                                   std::int64_t k_base) {
    if (j < 1) throw config_error("crossing_geometry: j must be >= 1");
    if (k_base < 2 || (k_base & (k_base - 1)) != 0)
        throw config_error("crossing_geometry: K must be a power of two");
    std::int64_t n_subs = std::int64_t(std::floor(std::sqrt(double(k_base)))) / 8;
    if (n_subs < 1)
        throw config_error("crossing_geometry: floor(sqrt(K)/8) must be >= 1 (K too small)");

    const double kd = double(k_base);
    const double kj = std::pow(kd, j);            // K^j
    const double kj1 = kj / kd;                   // K^{j-1}
    const double tile = j >= 2 ? std::pow(kd, j - 2) : 1.0;
    if (double(b.scale) != tile || double(b_prime.scale) != tile)
        throw config_error("crossing_geometry: boxes are not at scale K^{j-2}");

    RealPoint c1 = box_center(b), c2 = box_center(b_prime);
    double dx = c2.x - c1.x, dy = c2.y - c1.y;
    if (!(dx >= dy && dy >= 0.0))
        throw config_error("crossing_geometry: pair must be in the canonical octant "
                           "(dx >= dy >= 0); apply a lattice symmetry first");
    double dist = std::hypot(dx, dy);
    double tile_rad = tile * 0.70710678118654752440;
    double win_lo = kj, win_hi = (1.0 + 1.0 / kd) * kj;
    if (dist + 2.0 * tile_rad < win_lo || dist - 2.0 * tile_rad > win_hi)
        throw config_error("crossing_geometry: no scale-K^j path can join these boxes");

    const double slab_len = kj / 4.0;
    const double sub_w = 20.0 * kj1;
    const double sub_l = 320.0 * kj1;  // 16 * sub_w
    const double around_side = kj / std::sqrt(kd);

    if (slab_len < sub_w)
        throw config_error("crossing_geometry: infeasible at this K (slab shorter than wide)");
    double section = slab_len / double(n_subs);
    if (sub_l > section / 5.0)
        throw config_error("crossing_geometry: infeasible placement, sub-parallelogram does "
                           "not fit the middle fifth of a section (K too small)");
    if (4.0 * sub_l > around_side)
        throw config_error("crossing_geometry: infeasible placement, V_{4l} exceeds the "
                           "surrounding box (K too small)");
    double cos_t = dx / dist, sin_t = dy / dist, tan_t = dy / dx;
    if (section * cos_t <= around_side + 2.0)
        throw config_error("crossing_geometry: infeasible placement, surrounding boxes "
                           "would overlap (K too small)");

    RealPoint mid{(c1.x + c2.x) / 2.0, (c1.y + c2.y) / 2.0};
    double slab_a = mid.x - slab_len / 2.0;
    double slab_h = slab_len * tan_t;
    double slab_b = mid.y - slab_h / 2.0 - sub_w / 2.0;

    CrossingGeometry out;
    out.slab = make_parallelogram(slab_a, slab_b, slab_len, slab_h, sub_w);
    out.hull = box_vl(box_lower_left(b), 4.0 * kj);

    for (std::int64_t i = 0; i < n_subs; ++i) {
        double cx = slab_a + (double(i) + 0.5) * section;
        double ai = std::floor(cx - sub_l / 2.0);
        double bi = slab_b + (ai - slab_a) * tan_t;
        Parallelogram sub = make_parallelogram(ai, bi, sub_l, sub_l * tan_t, sub_w);
        if (!sub.good()) throw invariant_error("crossing_geometry: sub-parallelogram not good");
        for (auto c : sub.corners()) {
            if (!out.slab.contains(c))
                throw invariant_error("crossing_geometry: sub-parallelogram escapes the slab");
            Point v = sub.anchor();
            if (std::abs(c.x - double(v.x)) > 2.0 * sub_l + 1e-6 ||
                std::abs(c.y - double(v.y)) > 2.0 * sub_l + 1e-6)
                throw invariant_error("crossing_geometry: sub-parallelogram escapes V_{4l}(v_i)");
        }
        LatticeBox vi = box_vl(sub.anchor(), around_side);
        if (!vi.contains_box(box_vl(sub.anchor(), 4.0 * sub_l)))
            throw invariant_error("crossing_geometry: V_{4l}(v_i) escapes V_i");
        out.subs.push_back(sub);
        out.around.push_back(vi);
    }
    for (std::size_t i = 0; i < out.around.size(); ++i) {
        if (!out.hull.contains_box(out.around[i]))
            throw invariant_error("crossing_geometry: V_i escapes V_{4K^j}(z_B)");
        for (std::size_t t = i + 1; t < out.around.size(); ++t)
            if (out.around[i].intersects(out.around[t]))
                throw invariant_error("crossing_geometry: surrounding boxes intersect");
    }

    // Slab coverage: the fattened focal ellipse of any admissible endpoint
    // pair stays between the slab's long edges, and both boxes project
    // strictly outside the slab's column range, so scale-K^j paths between
    // them must cross it.
    double span_max = win_hi;
    double ecc = 1.0 + 2.0 / (kd * kd);
    double b_max = 0.5 * span_max * std::sqrt(ecc * ecc - 1.0);
    double tube = b_max + tile_rad + 4.0 * kj1;
    if (tube > (sub_w / 2.0) * cos_t)
        throw invariant_error("crossing_geometry: tame tube exceeds the slab width");
    if (!(c1.x + tile / 2.0 <= slab_a && c2.x - tile / 2.0 >= slab_a + slab_len))
        throw invariant_error("crossing_geometry: boxes overlap the slab columns");

    return out;
}

}  // namespace gff2d
