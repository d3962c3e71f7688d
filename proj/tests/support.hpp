// Test-side oracles and generators.  Everything here is deliberately
// independent of the library's algorithms: brute-force cycle enumeration,
// ray-parity point location, Floyd-Warshall distances, and direct dense
// solves, used to pin expected values.
#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "gff2d/levelset.hpp"
#include "gff2d/pathtree.hpp"
#include "gff2d/rng.hpp"

namespace gff2d::testing {

// ---------------------------------------------------------------------------
// contour oracle: enumerate every simple 4-cycle of open band vertices,
// classify by ray parity, keep the one enclosing the most vertices.

struct OracleContour {
    bool exists = false;
    std::vector<Point> enclosed;  // of the maximal surrounding cycle, sorted
    std::size_t cycles_seen = 0;
};

// parity of eastward ray crossings from q + (1/2, 1/2)
inline bool oracle_inside(const std::vector<Point>& cycle, Point q) {
    int crossings = 0;
    for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
        Point u = cycle[i], v = cycle[i + 1];
        if (u.x != v.x || u.x <= q.x) continue;
        if (std::min(u.y, v.y) == q.y) ++crossings;
    }
    return crossings % 2 != 0;
}

inline OracleContour contour_oracle(const OpenMask& mask, const AnnulusRegion& region,
                                    std::size_t step_cap = 80'000'000) {
    std::vector<Point> open;
    for (Point p : region.band)
        if (mask.is_open(p)) open.push_back(p);
    std::sort(open.begin(), open.end(), row_major_less);

    auto id_of = [&](Point p) -> int {
        auto it = std::lower_bound(open.begin(), open.end(), p, row_major_less);
        if (it == open.end() || !(*it == p)) return -1;
        return int(it - open.begin());
    };
    const int n = int(open.size());
    auto adj = std::vector<std::vector<int>>(std::size_t(n));
    for (int i = 0; i < n; ++i) {
        Point p = open[std::size_t(i)];
        const Point nbrs[4] = {{p.x + 1, p.y}, {p.x, p.y + 1}, {p.x - 1, p.y}, {p.x, p.y - 1}};
        for (Point q : nbrs) {
            int j = id_of(q);
            if (j >= 0) adj[std::size_t(i)].push_back(j);
        }
    }

    OracleContour out;
    std::vector<std::int8_t> on_path(std::size_t(n), 0);
    std::vector<int> path;
    std::size_t steps = 0;

    std::vector<Point> inner_pts;
    for (std::int64_t y = region.inner.corner.y; y <= region.inner.max_corner().y; ++y)
        for (std::int64_t x = region.inner.corner.x; x <= region.inner.max_corner().x; ++x)
            inner_pts.push_back({x, y});

    auto consider = [&](const std::vector<int>& cyc_ids) {
        ++out.cycles_seen;
        std::vector<Point> cycle;
        cycle.reserve(cyc_ids.size() + 1);
        for (int id : cyc_ids) cycle.push_back(open[std::size_t(id)]);
        cycle.push_back(open[std::size_t(cyc_ids.front())]);
        for (Point q : inner_pts)
            if (!oracle_inside(cycle, q)) return;  // must surround the whole inner box
        std::vector<Point> enclosed;
        for (std::int64_t y = region.world.corner.y; y <= region.world.max_corner().y; ++y)
            for (std::int64_t x = region.world.corner.x; x <= region.world.max_corner().x; ++x) {
                Point q{x, y};
                bool on_cycle = false;
                for (int id : cyc_ids) on_cycle = on_cycle || (open[std::size_t(id)] == q);
                if (!on_cycle && oracle_inside(cycle, q)) enclosed.push_back(q);
            }
        if (!out.exists || enclosed.size() > out.enclosed.size()) {
            out.exists = true;
            out.enclosed = std::move(enclosed);
        }
    };

    // simple cycles with a canonical orientation: minimal vertex first,
    // second vertex id below the last
    std::function<void(int, int)> extend = [&](int root, int current) {
        if (++steps > step_cap) throw std::runtime_error("contour oracle: step cap exceeded");
        for (int next : adj[std::size_t(current)]) {
            if (next == root && path.size() >= 4) {
                if (path[1] < path.back()) consider(path);
                continue;
            }
            if (next <= root || on_path[std::size_t(next)]) continue;
            on_path[std::size_t(next)] = 1;
            path.push_back(next);
            extend(root, next);
            path.pop_back();
            on_path[std::size_t(next)] = 0;
        }
    };
    for (int s = 0; s < n; ++s) {
        path.assign(1, s);
        on_path.assign(std::size_t(n), 0);
        on_path[std::size_t(s)] = 1;
        extend(s, s);
    }
    return out;
}

// ---------------------------------------------------------------------------
// all-pairs shortest open path by Floyd-Warshall (independent of BFS)

inline std::optional<std::int64_t> fw_distance_oracle(const OpenMask& mask,
                                                      const std::vector<Point>& sources,
                                                      const std::vector<Point>& targets,
                                                      const LatticeBox& within) {
    std::vector<Point> open;
    for (std::int64_t y = within.corner.y; y <= within.max_corner().y; ++y)
        for (std::int64_t x = within.corner.x; x <= within.max_corner().x; ++x)
            if (mask.is_open({x, y})) open.push_back({x, y});
    const std::size_t n = open.size();
    auto id_of = [&](Point p) -> std::ptrdiff_t {
        for (std::size_t i = 0; i < n; ++i)
            if (open[i] == p) return std::ptrdiff_t(i);
        return -1;
    };
    const std::int64_t inf = std::int64_t(1) << 40;
    std::vector<std::int64_t> d(n * n, inf);
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (linf(open[i], open[j]) == 1 &&
                std::abs(open[i].x - open[j].x) + std::abs(open[i].y - open[j].y) == 1)
                d[i * n + j] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
    std::int64_t best = inf;
    for (Point s : sources)
        for (Point t : targets) {
            auto i = id_of(s), j = id_of(t);
            if (i >= 0 && j >= 0) best = std::min(best, d[std::size_t(i) * n + std::size_t(j)]);
        }
    if (best >= inf) return std::nullopt;
    return best;
}

// ---------------------------------------------------------------------------
// path generators

// Random walk from the origin, stopped the first time the span reaches K^j,
// then loop-erased.  The result lies in scale class j.
inline LatticePath random_scaled_path(std::int64_t k_base, int j, std::uint64_t seed) {
    Rng rng(seed);
    std::int64_t target = 1;
    for (int i = 0; i < j; ++i) target *= k_base;
    std::vector<Point> walk{{0, 0}};
    const Point dirs[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    while (true) {
        Point p = walk.back() + dirs[rng.next_below(4)];
        walk.push_back(p);
        if (p.x * p.x + p.y * p.y >= target * target) break;
        if (walk.size() > 4'000'000) throw std::runtime_error("walk generator stuck");
    }
    // loop erasure
    std::vector<Point> out;
    std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> last;
    for (Point p : walk) {
        auto key = std::make_pair(p.x, p.y);
        auto it = last.find(key);
        if (it != last.end()) {
            while (out.size() > it->second + 1) {
                last.erase(std::make_pair(out.back().x, out.back().y));
                out.pop_back();
            }
        } else {
            out.push_back(p);
            last[key] = out.size() - 1;
        }
    }
    return {out};
}

// Monotone staircase from the origin to (dx, dy) with randomized step order;
// length dx + dy + 1 vertices, nearly the shortest possible.
inline LatticePath staircase_path(std::int64_t dx, std::int64_t dy, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Point> v{{0, 0}};
    std::int64_t rx = dx, ry = dy;
    while (rx > 0 || ry > 0) {
        bool go_x = ry == 0 || (rx > 0 && rng.next_below(std::uint64_t(rx + ry)) <
                                              std::uint64_t(rx));
        Point p = v.back();
        v.push_back(go_x ? Point{p.x + 1, p.y} : Point{p.x, p.y + 1});
        go_x ? --rx : --ry;
    }
    return {v};
}

inline OpenMask random_mask(const LatticeBox& box, double p_open, std::uint64_t seed) {
    OpenMask m;
    m.box = box;
    m.lambda = 0.0;
    m.alpha = 0.0;
    m.open.assign(std::size_t(box.vertex_count()), 0);
    Rng rng(seed);
    for (auto& cell : m.open) cell = rng.next_unit() < p_open ? 1 : 0;
    return m;
}

}  // namespace gff2d::testing
