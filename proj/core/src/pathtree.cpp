#include "gff2d/pathtree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "gff2d/error.hpp"

namespace gff2d {

namespace {

using int128 = __int128;

void check_k(std::int64_t k_base) {
    if (k_base < 2 || (k_base & (k_base - 1)) != 0)
        throw config_error("K must be a power of two >= 2");
}

std::int64_t ipow(std::int64_t base, int e) {
    std::int64_t v = 1;
    for (int i = 0; i < e; ++i) {
        if (v > (std::int64_t(1) << 62) / base) throw config_error("scale overflow");
        v *= base;
    }
    return v;
}

std::int64_t sq_dist(Point a, Point b) {
    std::int64_t dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// ||P[i] - P[s]||^2 >= (K^j (1 + t/K^2))^2, exactly:
// K^{2j} (K^2 + t)^2 <= d2 K^4
bool span_reaches(std::int64_t d2, std::int64_t kj, std::int64_t k_base, std::int64_t t) {
    int128 lhs = int128(kj) * kj * (int128(k_base) * k_base + t) * (int128(k_base) * k_base + t);
    int128 rhs = int128(d2) * k_base * k_base * int128(k_base) * k_base;
    return lhs <= rhs;
}

}  // namespace

void validate_path(const LatticePath& p) {
    if (p.vertices.empty()) throw config_error("path: empty vertex sequence");
    for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
        Point d = p.vertices[i + 1] - p.vertices[i];
        if (std::abs(d.x) + std::abs(d.y) != 1)
            throw config_error("path: vertices " + std::to_string(i) + " and " +
                               std::to_string(i + 1) + " are not lattice neighbors");
    }
}

std::optional<int> scale_class(const LatticePath& p, std::int64_t k_base) {
    check_k(k_base);
    validate_path(p);
    if (p.vertices.size() == 1) return 0;
    std::int64_t d2 = p.span_sq();
    if (d2 == 0) return std::nullopt;  // closed loop, no class

    for (int j = 1;; ++j) {
        std::int64_t kj = ipow(k_base, j);
        if (kj * kj > d2) return std::nullopt;  // overshoot: below every window
        // K^j <= ||P|| <= (1 + 1/K) K^j, exactly in integers
        if (int128(kj) * kj <= d2 &&
            int128(d2) * k_base * k_base <= int128(kj) * kj * (k_base + 1) * (k_base + 1)) {
            for (const Point& v : p.vertices)
                if (sq_dist(v, p.start()) > d2) return std::nullopt;  // escapes the ball
            return j;
        }
        if (kj > (std::int64_t(1) << 31)) return std::nullopt;
    }
}

namespace {

// Distance from q to the closed ellipse with foci f1,f2 and string length s.
double ellipse_distance(RealPoint q, RealPoint f1, RealPoint f2, double s) {
    double inside = dist2(q, f1) + dist2(q, f2);
    if (inside <= s) return 0.0;
    RealPoint c{(f1.x + f2.x) / 2.0, (f1.y + f2.y) / 2.0};
    double focal = dist2(f1, f2);
    double big_a = s / 2.0;
    double big_b = std::sqrt(std::max(0.0, big_a * big_a - focal * focal / 4.0));
    RealPoint u{(f2.x - f1.x) / focal, (f2.y - f1.y) / focal};
    double xi = std::abs((q.x - c.x) * u.x + (q.y - c.y) * u.y);
    double up = std::abs(-(q.x - c.x) * u.y + (q.y - c.y) * u.x);

    // root of F(t) = (A xi / (t+A^2))^2 + (B up / (t+B^2))^2 = 1 on t > 0
    auto f_of = [&](double t) {
        double ax = big_a * xi / (t + big_a * big_a);
        double by = big_b * up / (t + big_b * big_b);
        return ax * ax + by * by;
    };
    double lo = 0.0, hi = std::max(big_a * xi, big_b * up) + 1.0;
    while (f_of(hi) > 1.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (f_of(mid) > 1.0 ? lo : hi) = mid;
    }
    double t = 0.5 * (lo + hi);
    double px = big_a * big_a * xi / (t + big_a * big_a);
    double py = big_b * big_b * up / (t + big_b * big_b);
    return std::hypot(xi - px, up - py);
}

}  // namespace

bool is_tame(const LatticePath& p, std::int64_t k_base) {
    auto j = scale_class(p, k_base);
    if (!j || *j < 1)
        throw config_error("is_tame: tameness is defined only for paths in scale K^j, j >= 1");
    double fatten = 4.0 * double(ipow(k_base, *j - 1));
    double s = (1.0 + 2.0 / (double(k_base) * double(k_base))) * p.span();
    RealPoint f1 = to_real(p.start()), f2 = to_real(p.finish());
    for (const Point& v : p.vertices)
        if (ellipse_distance(to_real(v), f1, f2, s) > fatten + 1e-9) return false;
    return true;
}

namespace {

struct GreedyResult {
    std::vector<IndexRange> children;
    bool ok = false;
    std::string why;
};

// One-scale-down greedy extraction of child ranges in SL_{child_j} from the
// vertex range [lo, hi] of `path`.
GreedyResult greedy_extract(const std::vector<Point>& vertices, std::size_t lo, std::size_t hi,
                            int child_j, std::int64_t k_base, std::int64_t min_children) {
    GreedyResult res;
    std::int64_t kj = ipow(k_base, child_j);

    for (std::int64_t t = 0; t <= k_base; ++t) {
        std::vector<IndexRange> children;
        std::map<std::pair<std::int64_t, std::int64_t>, int> visits;  // BD_{K^j} tile -> count
        auto tiles_of = [&](std::size_t a, std::size_t b) {
            std::vector<std::pair<std::int64_t, std::int64_t>> ids;
            for (std::size_t i = a; i <= b; ++i) {
                BoxId id = box_of(vertices[i], kj);
                ids.emplace_back(id.index.x, id.index.y);
            }
            std::sort(ids.begin(), ids.end());
            ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
            return ids;
        };

        std::size_t s = lo;
        while (s < hi) {
            std::size_t e = s + 1;
            std::int64_t d2 = 0;
            bool reached = false;
            for (; e <= hi; ++e) {
                d2 = sq_dist(vertices[e], vertices[s]);
                if (span_reaches(d2, kj, k_base, t)) {
                    reached = true;
                    break;
                }
            }
            if (!reached) break;
            auto ids = tiles_of(s, e);
            bool full = false;
            for (const auto& id : ids) full = full || visits[id] >= 12;
            if (full) {
                ++s;  // skip: a tile already has 12 extracted visitors
                continue;
            }
            for (const auto& id : ids) ++visits[id];
            children.push_back({s, e});
            s = e;  // children may share the cut vertex
        }

        if (std::int64_t(children.size()) < min_children) {
            res.why = "too few children";
            continue;
        }
        bool classes_ok = true;
        for (const auto& ch : children) {
            LatticePath sub{std::vector<Point>(vertices.begin() + std::ptrdiff_t(ch.begin),
                                               vertices.begin() + std::ptrdiff_t(ch.end) + 1)};
            auto cls = scale_class(sub, k_base);
            if (!cls || *cls != child_j) {
                classes_ok = false;
                break;
            }
        }
        if (!classes_ok) {
            res.why = "child escaped its scale class";
            continue;
        }
        res.children = std::move(children);
        res.ok = true;
        return res;
    }
    if (res.why.empty()) res.why = "no candidate target span produced children";
    return res;
}

// Single-vertex children with the per-site 12-visit cap.
GreedyResult extract_leaves(const std::vector<Point>& vertices, std::size_t lo, std::size_t hi,
                            std::int64_t min_children, std::int64_t span_sq) {
    GreedyResult res;
    std::map<std::pair<std::int64_t, std::int64_t>, int> visits;
    for (std::size_t i = lo; i <= hi; ++i) {
        auto key = std::make_pair(vertices[i].x, vertices[i].y);
        if (visits[key] >= 12) continue;
        ++visits[key];
        res.children.push_back({i, i});
    }
    double d = double(res.children.size());
    if (std::int64_t(d) < min_children) {
        res.why = "too few single-vertex children";
        return res;
    }
    if (4.0 * d * d < double(span_sq)) {  // d >= ||P|| / 2
        res.why = "single-vertex child count below half the span";
        return res;
    }
    res.ok = true;
    return res;
}

}  // namespace

std::vector<IndexRange> decompose_children(const LatticePath& p, std::int64_t k_base) {
    check_k(k_base);
    auto j1 = scale_class(p, k_base);
    if (!j1 || *j1 < 1)
        throw config_error("decompose_children: path must be in scale K^j, j >= 1");
    int child_j = *j1 - 1;
    GreedyResult res =
        child_j == 0
            ? extract_leaves(p.vertices, 0, p.vertices.size() - 1, k_base, p.span_sq())
            : greedy_extract(p.vertices, 0, p.vertices.size() - 1, child_j, k_base, k_base);
    if (!res.ok)
        throw invariant_error("decompose_children: greedy extraction failed (" + res.why + ")");
    return res.children;
}

namespace {

BoxId start_box_of(Point start, int scale_j, std::int64_t k_base) {
    // END boxes at scale K^{j-2}; fractional sides collapse to single sites
    std::int64_t side = scale_j >= 2 ? ipow(k_base, scale_j - 2) : 1;
    return box_of(start, side);
}

void grow_tree(PathTree& tree, std::size_t node_id) {
    const int scale = tree.nodes[node_id].scale;
    if (scale == 0) return;
    const std::size_t begin = tree.nodes[node_id].begin;
    const std::size_t end = tree.nodes[node_id].end;
    const int level = tree.nodes[node_id].level;
    const double flow = tree.nodes[node_id].flow;
    const auto& vertices = tree.path.vertices;
    int child_j = scale - 1;
    std::int64_t min_children = tree.k_base;

    LatticePath sub = tree.subpath(tree.nodes[node_id]);
    GreedyResult res =
        child_j == 0 ? extract_leaves(vertices, begin, end, min_children, sub.span_sq())
                     : greedy_extract(vertices, begin, end, child_j, tree.k_base, min_children);
    if (!res.ok)
        throw invariant_error("build_tree: decomposition failed at level " +
                              std::to_string(level) + " (" + res.why + ")");

    double child_flow = flow / double(res.children.size());
    int child_level = level + 1;
    for (const auto& range : res.children) {
        PathTree::Node child;
        child.level = child_level;
        child.begin = range.begin;
        child.end = range.end;
        child.flow = child_flow;
        child.scale = child_j;
        child.start_box = start_box_of(vertices[range.begin], child_j, tree.k_base);
        std::size_t child_id = tree.nodes.size();
        tree.nodes[node_id].children.push_back(child_id);
        tree.nodes.push_back(std::move(child));
        if (std::size_t(child_level) >= tree.levels.size()) tree.levels.resize(child_level + 1);
        tree.levels[std::size_t(child_level)].push_back(child_id);
        grow_tree(tree, child_id);
    }
}

void finish_tame_flags(PathTree& tree) {
    for (auto& node : tree.nodes)
        if (node.scale >= 1 && node.scale <= tree.depth) {
            LatticePath sub = tree.subpath(node);
            if (scale_class(sub, tree.k_base).value_or(-1) == node.scale)
                node.tame = is_tame(sub, tree.k_base);
        }
}

}  // namespace

PathTree build_tree(const LatticePath& p, std::int64_t k_base) {
    check_k(k_base);
    auto j = scale_class(p, k_base);
    if (!j || *j < 1) throw config_error("build_tree: path must be in scale K^j with j >= 1");

    PathTree tree;
    tree.path = p;
    tree.k_base = k_base;
    tree.depth = *j;
    PathTree::Node root;
    root.level = 0;
    root.begin = 0;
    root.end = p.vertices.size() - 1;
    root.flow = 1.0;
    root.scale = *j;
    root.start_box = start_box_of(p.start(), *j, k_base);
    tree.nodes.push_back(root);
    tree.levels.assign(1, {0});
    grow_tree(tree, 0);
    finish_tame_flags(tree);
    return tree;
}

PathTree build_ensemble_tree(const LatticePath& p, double kappa, std::int64_t n,
                             std::int64_t k_base) {
    check_k(k_base);
    validate_path(p);
    if (!(kappa > 0.0 && kappa < 1.0)) throw config_error("build_ensemble_tree: kappa in (0,1)");
    double kn = kappa * double(n);
    if (p.span() < kn) throw config_error("build_ensemble_tree: span below kappa N");
    int m = 0;
    while (std::pow(double(k_base), m + 2) <= kn) ++m;
    if (m < 1) throw config_error("build_ensemble_tree: kappa N too small for K (depth < 1)");

    PathTree tree;
    tree.path = p;
    tree.k_base = k_base;
    tree.depth = m;
    PathTree::Node root;
    root.level = 0;
    root.begin = 0;
    root.end = p.vertices.size() - 1;
    root.flow = 1.0;
    root.scale = m;  // by convention; the root itself carries no scale class
    root.start_box = start_box_of(p.start(), m, k_base);
    tree.nodes.push_back(root);
    tree.levels.assign(1, {0});

    int child_j = m - 1;
    GreedyResult res =
        child_j == 0
            ? extract_leaves(p.vertices, 0, p.vertices.size() - 1, k_base, p.span_sq())
            : greedy_extract(p.vertices, 0, p.vertices.size() - 1, child_j, k_base, k_base);
    if (!res.ok)
        throw invariant_error("build_ensemble_tree: root extraction failed (" + res.why + ")");
    double child_flow = 1.0 / double(res.children.size());
    tree.levels.resize(2);
    for (const auto& range : res.children) {
        PathTree::Node child;
        child.level = 1;
        child.begin = range.begin;
        child.end = range.end;
        child.flow = child_flow;
        child.scale = child_j;
        child.start_box = start_box_of(p.vertices[range.begin], child_j, k_base);
        std::size_t child_id = tree.nodes.size();
        tree.nodes[0].children.push_back(child_id);
        tree.nodes.push_back(std::move(child));
        tree.levels[1].push_back(child_id);
        grow_tree(tree, child_id);
    }
    finish_tame_flags(tree);
    return tree;
}

double untamed_flow(const PathTree& tree) {
    double total = 0.0;
    for (const auto& node : tree.nodes)
        if (node.level >= 1 && node.level <= tree.depth - 1 && !node.tame) total += node.flow;
    return total;
}

double tame_open_flow(const PathTree& tree, const FieldSample& field, int r, double lambda,
                      const ShiftAssignment& alpha) {
    if (r < 0 || r >= tree.depth)
        throw config_error("tame_open_flow: level r must satisfy 0 <= r < depth");
    double total = 0.0;
    for (std::size_t id : tree.levels[std::size_t(r)]) {
        const auto& node = tree.nodes[id];
        if (!node.tame) continue;
        double shift = alpha(node.start_box);
        bool open = true;
        for (std::size_t i = node.begin; i <= node.end && open; ++i)
            open = std::abs(field.value(tree.path.vertices[i]) + shift) <= lambda;
        if (open) total += node.flow;
    }
    return total;
}

double xi_over_ensemble(const std::vector<PathTree>& trees, const FieldSample& field, int r,
                        double lambda, const ShiftAssignment& alpha) {
    if (trees.empty()) throw config_error("xi_over_ensemble: empty ensemble");
    const auto& first = trees.front();
    for (const auto& t : trees) {
        if (t.depth != first.depth)
            throw config_error("xi_over_ensemble: trees must share the scale class");
        if (!(t.nodes[0].start_box == first.nodes[0].start_box))
            throw config_error("xi_over_ensemble: trees must share the start box");
    }
    double best = 0.0;
    for (const auto& t : trees) best = std::max(best, tame_open_flow(t, field, r, lambda, alpha));
    return best;
}

double EnsembleSpec::length_cap() const {
    double k = std::log2(double(k_base));
    return std::pow(double(n), 1.0 + delta / (double(k_base) * double(k_base) * k));
}

int EnsembleSpec::m() const {
    double kn = kappa * double(n);
    int m = 0;
    while (std::pow(double(k_base), m + 2) <= kn) ++m;
    return m;
}

bool ensemble_membership(const LatticePath& p, const EnsembleSpec& spec) {
    validate_path(p);
    if (!(spec.kappa > 0.0 && spec.kappa < 1.0) || !(spec.delta > 0.0 && spec.delta < 1.0))
        throw config_error("ensemble_membership: kappa and delta must lie in (0,1)");
    check_k(spec.k_base);
    double kn = spec.kappa * double(spec.n);
    if (p.span() < kn) return false;
    return double(p.length()) <= spec.length_cap();
}

}  // namespace gff2d
