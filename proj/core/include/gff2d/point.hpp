#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

namespace gff2d {

struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const Point&, const Point&) = default;
    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
};

// Row-major order: y first, then x.  Used for deterministic tie-breaking.
inline bool row_major_less(Point a, Point b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
}

struct RealPoint {
    double x = 0.0;
    double y = 0.0;

    friend RealPoint operator+(RealPoint a, RealPoint b) { return {a.x + b.x, a.y + b.y}; }
    friend RealPoint operator-(RealPoint a, RealPoint b) { return {a.x - b.x, a.y - b.y}; }
    friend RealPoint operator*(double s, RealPoint p) { return {s * p.x, s * p.y}; }
};

inline RealPoint to_real(Point p) { return {double(p.x), double(p.y)}; }

inline double norm2(RealPoint p) { return std::hypot(p.x, p.y); }
inline double dist2(RealPoint a, RealPoint b) { return norm2(a - b); }
inline double dist2(Point a, Point b) { return std::hypot(double(a.x - b.x), double(a.y - b.y)); }

// L-infinity distance.  The maximum of the coordinate differences; see the
// geometry module notes for why the maximum (and not the minimum) is used.
inline std::int64_t linf(Point a, Point b) {
    std::int64_t dx = a.x > b.x ? a.x - b.x : b.x - a.x;
    std::int64_t dy = a.y > b.y ? a.y - b.y : b.y - a.y;
    return dx > dy ? dx : dy;
}

struct PointHash {
    std::size_t operator()(const Point& p) const {
        std::uint64_t h = std::uint64_t(p.x) * 0x9e3779b97f4a7c15ull;
        h ^= std::uint64_t(p.y) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return std::size_t(h);
    }
};

}  // namespace gff2d
