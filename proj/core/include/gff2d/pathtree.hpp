#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gff2d/field.hpp"
#include "gff2d/geometry.hpp"

namespace gff2d {

// Nearest-neighbor lattice path.  |P| counts vertices; ||P|| is the
// Euclidean distance between the endpoints.
struct LatticePath {
    std::vector<Point> vertices;

    Point start() const { return vertices.front(); }
    Point finish() const { return vertices.back(); }
    double span() const { return dist2(start(), finish()); }
    std::int64_t span_sq() const {
        std::int64_t dx = finish().x - start().x, dy = finish().y - start().y;
        return dx * dx + dy * dy;
    }
    std::size_t length() const { return vertices.size(); }
};

void validate_path(const LatticePath& p);

// The unique j with K^j <= ||P|| <= (1+1/K) K^j and P inside the closed ball
// B(x_P, ||P||); 0 for single vertices; nullopt when no class fits.
std::optional<int> scale_class(const LatticePath& p, std::int64_t k_base);

// A scaled path is tame when it stays within the 4K^{j-1}-fattening of the
// focal ellipse through its endpoints.  Throws for unscaled paths.
bool is_tame(const LatticePath& p, std::int64_t k_base);

// Inclusive index range into a path; consecutive children may share a single
// endpoint vertex but never an edge.
struct IndexRange {
    std::size_t begin = 0;
    std::size_t end = 0;
};

// Greedy one-scale-down extraction: at least K children (at least ||P||/2
// when the children are single vertices), each in the scale class below,
// with no tile of the matching partition visited by more than 12 children.
std::vector<IndexRange> decompose_children(const LatticePath& p, std::int64_t k_base);

struct PathTree {
    struct Node {
        int level = 0;
        std::size_t begin = 0;
        std::size_t end = 0;  // inclusive
        double flow = 1.0;
        int scale = 0;      // the node is a path in scale K^{scale}
        bool tame = false;  // meaningful when scale >= 1
        BoxId start_box;    // the END box containing the node's first vertex
        std::vector<std::size_t> children;
    };

    LatticePath path;
    std::int64_t k_base = 2;
    int depth = 0;
    std::vector<Node> nodes;                        // nodes[0] is the root
    std::vector<std::vector<std::size_t>> levels;   // node ids per level

    LatticePath subpath(const Node& n) const {
        return {std::vector<Point>(path.vertices.begin() + std::ptrdiff_t(n.begin),
                                   path.vertices.begin() + std::ptrdiff_t(n.end) + 1)};
    }
};

// Tree for a path in some scale class SL_j (depth j).
PathTree build_tree(const LatticePath& p, std::int64_t k_base);

// Tree for an ensemble path with span >= kappa N: the root splits into
// scale-class m-1 children, depth m, where K^{m+1} <= kappa N < K^{m+2}.
PathTree build_ensemble_tree(const LatticePath& p, double kappa, std::int64_t n,
                             std::int64_t k_base);

// Flow through untamed internal nodes (levels 1..depth-1).
double untamed_flow(const PathTree& tree);

using ShiftAssignment = std::function<double(const BoxId&)>;

// Flow-weighted fraction of level-r nodes that are tame and all of whose
// vertices v satisfy |field(v) + alpha(B_u)| <= lambda.
double tame_open_flow(const PathTree& tree, const FieldSample& field, int r, double lambda,
                      const ShiftAssignment& alpha);

// Maximum of tame_open_flow over a finite ensemble sharing scale and start box.
double xi_over_ensemble(const std::vector<PathTree>& trees, const FieldSample& field, int r,
                        double lambda, const ShiftAssignment& alpha);

struct EnsembleSpec {
    double kappa = 0.5;       // in (0,1)
    double delta = 0.5;       // in (0,1)
    std::int64_t k_base = 4;  // K = 2^k
    std::int64_t n = 0;

    double length_cap() const;  // N^{1 + delta / (K^2 k)}
    int m() const;              // K^{m+1} <= kappa N < K^{m+2}
};

bool ensemble_membership(const LatticePath& p, const EnsembleSpec& spec);

}  // namespace gff2d
