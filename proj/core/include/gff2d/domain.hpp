#pragma once

#include <cstdint>
#include <vector>

#include "gff2d/geometry.hpp"

namespace gff2d {

// Finite set of lattice vertices.  A vertex is boundary iff one of its four
// lattice neighbors lies outside the set; the field vanishes there.
class Domain {
  public:
    Domain() = default;
    static Domain from_box(const LatticeBox& box);
    static Domain from_points(std::vector<Point> pts);

    const std::vector<Point>& vertices() const { return vertices_; }
    const std::vector<Point>& interior() const { return interior_; }
    std::size_t size() const { return vertices_.size(); }
    std::size_t interior_size() const { return interior_.size(); }

    bool contains(Point p) const { return vertex_index(p) >= 0; }
    bool is_interior(Point p) const { return interior_index(p) >= 0; }
    bool is_boundary(Point p) const {
        auto i = vertex_index(p);
        return i >= 0 && interior_of_vertex_[std::size_t(i)] < 0;
    }

    // Index into interior(), or -1.
    std::int64_t interior_index(Point p) const {
        auto i = vertex_index(p);
        return i < 0 ? -1 : interior_of_vertex_[std::size_t(i)];
    }
    // Index into vertices(), or -1.
    std::int64_t vertex_index(Point p) const {
        if (!bbox_.contains(p)) return -1;
        return cell_[std::size_t(bbox_.index_of(p))];
    }

    const LatticeBox& bounding() const { return bbox_; }

  private:
    void classify();

    LatticeBox bbox_;
    std::vector<Point> vertices_;   // row-major sorted
    std::vector<Point> interior_;   // row-major sorted
    std::vector<std::int32_t> cell_;               // bbox cell -> vertex index or -1
    std::vector<std::int32_t> interior_of_vertex_; // vertex -> interior index or -1
};

}  // namespace gff2d
