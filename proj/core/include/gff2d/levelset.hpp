#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gff2d/field.hpp"
#include "gff2d/geometry.hpp"

namespace gff2d {

// Two-sided openness: v is open iff |eta(v) + alpha| <= lambda.
struct OpenMask {
    LatticeBox box;
    std::vector<std::uint8_t> open;
    double lambda = 0.0;
    double alpha = 0.0;

    bool is_open(Point p) const {
        return box.contains(p) && open[std::size_t(box.index_of(p))] != 0;
    }
    void set(Point p, bool v) { open[std::size_t(box.index_of(p))] = v ? 1 : 0; }
};

OpenMask open_mask(const FieldSample& sample, double lambda, double alpha = 0.0);

// One-sided comparison baseline: open iff eta(v) >= h.
OpenMask one_sided_mask(const FieldSample& sample, double h);

// Is there a 4-adjacent open path inside the parallelogram joining its left
// and right lattice columns?
bool crossing_exists(const OpenMask& mask, const Parallelogram& d);

// A band of vertices inside a world box, clear of a protected inner box.
// Circuits live in the band and surround the inner box.
struct AnnulusRegion {
    LatticeBox world;
    LatticeBox inner;
    std::vector<Point> band;

    static AnnulusRegion from_annulus(const Annulus& a);
    // Everything in the world except the inner box (a full square ring).
    static AnnulusRegion box_ring(const LatticeBox& world, const LatticeBox& inner);

    bool in_band(Point p) const {
        return world.contains(p) && grid_[std::size_t(world.index_of(p))] != 0;
    }

  private:
    void finish();
    std::vector<std::uint8_t> grid_;
};

// A closed 4-adjacent vertex cycle (front() == back()) together with the
// vertices it strictly surrounds.
struct Contour {
    std::vector<Point> cycle;
    std::vector<Point> enclosed;  // sorted row-major
};

bool open_circuit_exists(const OpenMask& mask, const AnnulusRegion& region);

// The unique maximal open circuit under interior inclusion, found by
// exploring inward from the outer boundary; nullopt when no open circuit in
// the band surrounds the inner box.
std::optional<Contour> outermost_open_contour(const OpenMask& mask, const AnnulusRegion& region);

// Edge count of the shortest all-open 4-path from any source to any target,
// searched inside `within` (defaults to the whole mask box).
std::optional<std::int64_t> chemical_distance(const OpenMask& mask,
                                              const std::vector<Point>& sources,
                                              const std::vector<Point>& targets);
std::optional<std::int64_t> chemical_distance(const OpenMask& mask,
                                              const std::vector<Point>& sources,
                                              const std::vector<Point>& targets,
                                              const LatticeBox& within);

// Per-vertex component label: the row-major flat index of the smallest open
// vertex in the component, or -1 for closed vertices.
std::vector<std::int64_t> cluster_labels(const OpenMask& mask);

}  // namespace gff2d
