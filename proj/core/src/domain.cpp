#include "gff2d/domain.hpp"

#include <algorithm>

#include "gff2d/error.hpp"

namespace gff2d {

Domain Domain::from_box(const LatticeBox& box) {
    if (box.width < 1 || box.height < 1) throw config_error("Domain: empty box");
    Domain d;
    d.bbox_ = box;
    d.vertices_.reserve(std::size_t(box.vertex_count()));
    for (std::int64_t y = box.corner.y; y <= box.max_corner().y; ++y)
        for (std::int64_t x = box.corner.x; x <= box.max_corner().x; ++x)
            d.vertices_.push_back({x, y});
    d.cell_.assign(std::size_t(box.vertex_count()), -1);
    for (std::size_t i = 0; i < d.vertices_.size(); ++i)
        d.cell_[std::size_t(box.index_of(d.vertices_[i]))] = std::int32_t(i);
    d.classify();
    return d;
}

Domain Domain::from_points(std::vector<Point> pts) {
    if (pts.empty()) throw config_error("Domain: empty point set");
    std::sort(pts.begin(), pts.end(), row_major_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    Domain d;
    std::int64_t x0 = pts[0].x, x1 = pts[0].x, y0 = pts[0].y, y1 = pts[0].y;
    for (const auto& p : pts) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    d.bbox_ = {{x0, y0}, x1 - x0 + 1, y1 - y0 + 1};
    d.vertices_ = std::move(pts);
    d.cell_.assign(std::size_t(d.bbox_.vertex_count()), -1);
    for (std::size_t i = 0; i < d.vertices_.size(); ++i)
        d.cell_[std::size_t(d.bbox_.index_of(d.vertices_[i]))] = std::int32_t(i);
    d.classify();
    return d;
}

void Domain::classify() {
    interior_of_vertex_.assign(vertices_.size(), -1);
    interior_.clear();
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        Point p = vertices_[i];
        const Point nbrs[4] = {{p.x + 1, p.y}, {p.x, p.y + 1}, {p.x - 1, p.y}, {p.x, p.y - 1}};
        bool inner = true;
        for (Point q : nbrs) inner = inner && contains(q);
        if (inner) {
            interior_of_vertex_[i] = std::int32_t(interior_.size());
            interior_.push_back(p);
        }
    }
}

}  // namespace gff2d
