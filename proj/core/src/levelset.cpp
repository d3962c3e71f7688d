#include "gff2d/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <unordered_map>

#include "gff2d/error.hpp"

namespace gff2d {

namespace {

const Point kDir4[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};  // E, N, W, S
const Point kDir8[8] = {{1, 0},  {0, 1},  {-1, 0}, {0, -1},
                        {1, 1},  {-1, 1}, {-1, -1}, {1, -1}};

}  // namespace

OpenMask open_mask(const FieldSample& sample, double lambda, double alpha) {
    if (!(lambda >= 0.0)) throw config_error("open_mask: lambda must be >= 0");
    OpenMask m;
    m.box = sample.box;
    m.lambda = lambda;
    m.alpha = alpha;
    m.open.resize(sample.values.size());
    for (std::size_t i = 0; i < sample.values.size(); ++i)
        m.open[i] = std::abs(sample.values[i] + alpha) <= lambda ? 1 : 0;
    return m;
}

OpenMask one_sided_mask(const FieldSample& sample, double h) {
    OpenMask m;
    m.box = sample.box;
    m.lambda = h;
    m.alpha = 0.0;
    m.open.resize(sample.values.size());
    for (std::size_t i = 0; i < sample.values.size(); ++i)
        m.open[i] = sample.values[i] >= h ? 1 : 0;
    return m;
}

bool crossing_exists(const OpenMask& mask, const Parallelogram& d) {
    LatticeBox bb = d.bounding_lattice();
    if (!mask.box.contains_box(bb))
        throw config_error("crossing_exists: parallelogram escapes the mask domain");
    auto left = d.left_side_points();
    auto right = d.right_side_points();
    if (left.empty() || right.empty()) return false;

    std::vector<std::uint8_t> seen(std::size_t(bb.vertex_count()), 0);
    std::vector<std::uint8_t> target(std::size_t(bb.vertex_count()), 0);
    for (Point p : right) target[std::size_t(bb.index_of(p))] = 1;

    std::deque<Point> queue;
    for (Point p : left)
        if (mask.is_open(p)) {
            auto i = std::size_t(bb.index_of(p));
            if (!seen[i]) {
                seen[i] = 1;
                queue.push_back(p);
            }
        }
    while (!queue.empty()) {
        Point p = queue.front();
        queue.pop_front();
        if (target[std::size_t(bb.index_of(p))]) return true;
        for (Point step : kDir4) {
            Point q = p + step;
            if (!bb.contains(q)) continue;
            auto i = std::size_t(bb.index_of(q));
            if (!seen[i] && mask.is_open(q) && d.contains(q)) {
                seen[i] = 1;
                queue.push_back(q);
            }
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Annulus regions

void AnnulusRegion::finish() {
    std::sort(band.begin(), band.end(), row_major_less);
    band.erase(std::unique(band.begin(), band.end()), band.end());
    grid_.assign(std::size_t(world.vertex_count()), 0);
    for (Point p : band) {
        if (!world.contains(p)) throw config_error("AnnulusRegion: band escapes the world box");
        if (inner.contains(p)) throw config_error("AnnulusRegion: band touches the inner box");
        grid_[std::size_t(world.index_of(p))] = 1;
    }
    if (!world.contains_box(inner)) throw config_error("AnnulusRegion: inner box escapes world");
}

AnnulusRegion AnnulusRegion::from_annulus(const Annulus& a) {
    AnnulusRegion r;
    r.world = a.outer_box;
    r.inner = a.inner_box;
    r.band = a.band_points();
    r.finish();
    return r;
}

AnnulusRegion AnnulusRegion::box_ring(const LatticeBox& world, const LatticeBox& inner) {
    AnnulusRegion r;
    r.world = world;
    r.inner = inner;
    for (std::int64_t y = world.corner.y; y <= world.max_corner().y; ++y)
        for (std::int64_t x = world.corner.x; x <= world.max_corner().x; ++x)
            if (!inner.contains({x, y})) r.band.push_back({x, y});
    r.finish();
    return r;
}

// ---------------------------------------------------------------------------
// Circuits.  All adjacency is 4-adjacency, for circuits and for paths alike;
// a circuit surrounds the inner box iff no 4-path from outside reaches it
// without sharing a vertex with the circuit.  Unit axis segments meet only at
// lattice points, so vertex-sharing is the only way paths cross.

namespace {

struct GridFlags {
    explicit GridFlags(const LatticeBox& box)
        : box_(box), flags_(std::size_t(box.vertex_count()), 0) {}
    std::uint8_t& at(Point p) { return flags_[std::size_t(box_.index_of(p))]; }
    bool get(Point p) const {
        return box_.contains(p) && flags_[std::size_t(box_.index_of(p))] != 0;
    }
    const LatticeBox& box() const { return box_; }

  private:
    LatticeBox box_;
    std::vector<std::uint8_t> flags_;
};

// 8-adjacent flood from the rim of `window`, blocked on `blocked`; marks
// reached cells in `reached`.  Diagonal steps never cross unit axis edges, so
// this is exactly reachability in the plane minus the drawing of `blocked`.
void flood8(const LatticeBox& window, const GridFlags& blocked, GridFlags& reached) {
    std::deque<Point> queue;
    auto push = [&](Point p) {
        if (!window.contains(p) || blocked.get(p)) return;
        auto& f = reached.at(p);
        if (!f) {
            f = 1;
            queue.push_back(p);
        }
    };
    for (std::int64_t x = window.corner.x; x <= window.max_corner().x; ++x) {
        push({x, window.corner.y});
        push({x, window.max_corner().y});
    }
    for (std::int64_t y = window.corner.y; y <= window.max_corner().y; ++y) {
        push({window.corner.x, y});
        push({window.max_corner().x, y});
    }
    while (!queue.empty()) {
        Point p = queue.front();
        queue.pop_front();
        for (Point step : kDir8) push(p + step);
    }
}

// Signed crossings of the eastward ray from (anchor.x + 1/2, anchor.y + 1/2)
// by the directed edge u -> v.
int ray_crossing(Point u, Point v, Point anchor) {
    if (u.x != v.x) return 0;  // horizontal edges never cross
    if (u.x <= anchor.x) return 0;
    std::int64_t ylo = std::min(u.y, v.y);
    if (ylo != anchor.y) return 0;
    return v.y > u.y ? 1 : -1;
}

long long walk_winding(const std::vector<Point>& walk, Point anchor) {
    long long w = 0;
    for (std::size_t i = 0; i + 1 < walk.size(); ++i)
        w += ray_crossing(walk[i], walk[i + 1], anchor);
    return w;
}

// Boundary walk of the outer face of a 4-connected vertex set, starting at
// its row-major-smallest vertex.  Directed edges are traversed at most once.
std::vector<Point> outer_face_walk(const std::vector<Point>& comp, const GridFlags& member) {
    Point start = comp.front();
    for (Point p : comp)
        if (row_major_less(p, start)) start = p;

    int first_dir = -1;
    for (int d = 0; d < 4 && first_dir < 0; ++d)
        if (member.get(start + kDir4[d])) first_dir = d;
    if (first_dir < 0) return {start, start};  // isolated vertex

    std::vector<Point> walk{start};
    Point u = start;
    int dir = first_dir;
    while (true) {
        Point v = u + kDir4[dir];
        walk.push_back(v);
        // rotate from the reverse direction, first neighbor wins; the
        // reverse itself is the last resort (dead-end backtrack)
        int back = (dir + 2) % 4;
        int next = back;
        for (int t = 1; t <= 4; ++t) {
            int cand = (back + t) % 4;
            if (member.get(v + kDir4[cand])) {
                next = cand;
                break;
            }
        }
        u = v;
        dir = next;
        if (u == start && dir == first_dir) break;
        if (walk.size() > 8 * comp.size() + 16)
            throw invariant_error("outer_face_walk: runaway trace");
    }
    return walk;
}

// Reduce a closed walk of odd winding to a simple cycle of odd winding by
// repeatedly splitting at the first repeated vertex.
std::vector<Point> reduce_to_simple_cycle(std::vector<Point> walk, Point anchor) {
    for (int guard = 0; guard < 1 << 22; ++guard) {
        std::unordered_map<std::int64_t, std::size_t> seen;
        auto key = [](Point p) { return (p.x << 32) ^ (p.y & 0xffffffffll); };
        bool split = false;
        for (std::size_t i = 0; i + 1 < walk.size() && !split; ++i) {
            auto [it, fresh] = seen.emplace(key(walk[i]), i);
            if (fresh) continue;
            std::size_t j = it->second;
            std::vector<Point> sub(walk.begin() + std::ptrdiff_t(j),
                                   walk.begin() + std::ptrdiff_t(i) + 1);
            long long w_sub = walk_winding(sub, anchor);
            if (w_sub % 2 != 0) {
                walk = std::move(sub);
            } else {
                walk.erase(walk.begin() + std::ptrdiff_t(j), walk.begin() + std::ptrdiff_t(i));
            }
            split = true;
        }
        if (!split) return walk;
    }
    throw invariant_error("reduce_to_simple_cycle: did not converge");
}

struct CircuitSearch {
    std::optional<std::vector<Point>> best_cycle;  // maximal by enclosed size
    std::vector<Point> best_enclosed;
};

// Enclosed vertices of a simple cycle: cells of the world box not reachable
// from outside when the cycle blocks.
std::vector<Point> enclosed_of(const std::vector<Point>& cycle, const LatticeBox& world) {
    std::int64_t x0 = cycle[0].x, x1 = x0, y0 = cycle[0].y, y1 = y0;
    for (Point p : cycle) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    LatticeBox window{{x0 - 1, y0 - 1}, x1 - x0 + 3, y1 - y0 + 3};
    GridFlags blocked(window), reached(window);
    for (Point p : cycle) blocked.at(p) = 1;
    flood8(window, blocked, reached);
    std::vector<Point> enc;
    for (std::int64_t y = y0; y <= y1; ++y)
        for (std::int64_t x = x0; x <= x1; ++x) {
            Point p{x, y};
            if (!reached.get(p) && !blocked.get(p) && world.contains(p)) enc.push_back(p);
        }
    return enc;
}

CircuitSearch find_outermost(const OpenMask& mask, const AnnulusRegion& region,
                             bool existence_only) {
    CircuitSearch out;
    Point v_inner{region.inner.corner.x + (region.inner.width - 1) / 2,
                  region.inner.corner.y + (region.inner.height - 1) / 2};

    // 4-components of the open band vertices
    GridFlags open_band(region.world);
    for (Point p : region.band)
        if (mask.is_open(p)) open_band.at(p) = 1;
    GridFlags visited(region.world);
    for (Point seed : region.band) {
        if (!open_band.get(seed) || visited.get(seed)) continue;
        std::vector<Point> comp;
        std::deque<Point> queue{seed};
        visited.at(seed) = 1;
        while (!queue.empty()) {
            Point p = queue.front();
            queue.pop_front();
            comp.push_back(p);
            for (Point step : kDir4) {
                Point q = p + step;
                if (open_band.get(q) && !visited.get(q)) {
                    visited.at(q) = 1;
                    queue.push_back(q);
                }
            }
        }
        // quick reject: the component's box must wrap around the inner vertex
        std::int64_t x0 = comp[0].x, x1 = x0, y0 = comp[0].y, y1 = y0;
        for (Point p : comp) {
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y);
            y1 = std::max(y1, p.y);
        }
        if (comp.size() < 8 || v_inner.x <= x0 || v_inner.x >= x1 || v_inner.y <= y0 ||
            v_inner.y >= y1)
            continue;

        // does this component separate the inner vertex from outside?
        LatticeBox window{{x0 - 1, y0 - 1}, x1 - x0 + 3, y1 - y0 + 3};
        GridFlags blocked(window), reached(window);
        for (Point p : comp) blocked.at(p) = 1;
        flood8(window, blocked, reached);
        if (reached.get(v_inner)) continue;

        GridFlags member(region.world);
        for (Point p : comp) member.at(p) = 1;
        auto walk = outer_face_walk(comp, member);
        if (walk_winding(walk, v_inner) % 2 == 0) continue;  // no enclosing cycle here
        auto cycle = reduce_to_simple_cycle(std::move(walk), v_inner);
        if (cycle.size() < 5 || !(cycle.front() == cycle.back())) continue;

        if (existence_only) {
            out.best_cycle = std::move(cycle);
            return out;
        }
        auto enc = enclosed_of(cycle, region.world);
        if (!out.best_cycle || enc.size() > out.best_enclosed.size()) {
            out.best_cycle = std::move(cycle);
            out.best_enclosed = std::move(enc);
        }
    }
    return out;
}

}  // namespace

bool open_circuit_exists(const OpenMask& mask, const AnnulusRegion& region) {
    return find_outermost(mask, region, true).best_cycle.has_value();
}

std::optional<Contour> outermost_open_contour(const OpenMask& mask, const AnnulusRegion& region) {
    auto found = find_outermost(mask, region, false);
    if (!found.best_cycle) return std::nullopt;
    Contour c;
    c.cycle = std::move(*found.best_cycle);
    c.enclosed = std::move(found.best_enclosed);
    // the inner box must be part of what the contour surrounds
    for (std::int64_t y = region.inner.corner.y; y <= region.inner.max_corner().y; ++y)
        for (std::int64_t x = region.inner.corner.x; x <= region.inner.max_corner().x; ++x)
            if (!std::binary_search(c.enclosed.begin(), c.enclosed.end(), Point{x, y},
                                    row_major_less))
                throw invariant_error("outermost_open_contour: contour misses the inner box");
    return c;
}

// ---------------------------------------------------------------------------

std::optional<std::int64_t> chemical_distance(const OpenMask& mask,
                                              const std::vector<Point>& sources,
                                              const std::vector<Point>& targets) {
    return chemical_distance(mask, sources, targets, mask.box);
}

std::optional<std::int64_t> chemical_distance(const OpenMask& mask,
                                              const std::vector<Point>& sources,
                                              const std::vector<Point>& targets,
                                              const LatticeBox& within) {
    if (sources.empty() || targets.empty())
        throw config_error("chemical_distance: empty source or target set");
    GridFlags is_target(within);
    for (Point p : targets)
        if (within.contains(p)) is_target.at(p) = 1;

    std::vector<std::int64_t> dist(std::size_t(within.vertex_count()), -1);
    std::deque<Point> queue;
    for (Point p : sources) {
        if (!within.contains(p) || !mask.is_open(p)) continue;
        auto i = std::size_t(within.index_of(p));
        if (dist[i] < 0) {
            dist[i] = 0;
            queue.push_back(p);
        }
    }
    while (!queue.empty()) {
        Point p = queue.front();
        queue.pop_front();
        auto dp = dist[std::size_t(within.index_of(p))];
        if (is_target.get(p)) return dp;
        for (Point step : kDir4) {  // E, N, W, S
            Point q = p + step;
            if (!within.contains(q) || !mask.is_open(q)) continue;
            auto i = std::size_t(within.index_of(q));
            if (dist[i] < 0) {
                dist[i] = dp + 1;
                queue.push_back(q);
            }
        }
    }
    return std::nullopt;
}

std::vector<std::int64_t> cluster_labels(const OpenMask& mask) {
    const auto n = std::size_t(mask.box.vertex_count());
    std::vector<std::int64_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = std::int64_t(i);
    std::function<std::int64_t(std::int64_t)> find = [&](std::int64_t i) {
        while (parent[std::size_t(i)] != i) {
            parent[std::size_t(i)] = parent[std::size_t(parent[std::size_t(i)])];
            i = parent[std::size_t(i)];
        }
        return i;
    };
    auto unite = [&](std::int64_t a, std::int64_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::size_t(std::max(a, b))] = std::min(a, b);
    };
    for (std::int64_t y = mask.box.corner.y; y <= mask.box.max_corner().y; ++y)
        for (std::int64_t x = mask.box.corner.x; x <= mask.box.max_corner().x; ++x) {
            Point p{x, y};
            if (!mask.is_open(p)) continue;
            if (mask.is_open({x - 1, y}) && mask.box.contains({x - 1, y}))
                unite(mask.box.index_of(p), mask.box.index_of({x - 1, y}));
            if (mask.is_open({x, y - 1}) && mask.box.contains({x, y - 1}))
                unite(mask.box.index_of(p), mask.box.index_of({x, y - 1}));
        }
    std::vector<std::int64_t> label(n, -1);
    for (std::size_t i = 0; i < n; ++i)
        if (mask.is_open(mask.box.point_at(std::int64_t(i)))) label[i] = find(std::int64_t(i));
    return label;
}

}  // namespace gff2d
