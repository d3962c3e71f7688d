#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gff2d/field.hpp"
#include "gff2d/levelset.hpp"
#include "gff2d/pathtree.hpp"

namespace gff2d {

// Field dump: one JSON header line (corner, width, height, seed, sampler),
// then row-major little-endian doubles.
void write_field(const std::string& path, const FieldSample& sample);
FieldSample read_field(const std::string& path);
void write_field_csv(const std::string& path, const FieldSample& sample);

// Mask dump: one JSON header line, then one line per row of alternating run
// lengths, starting with the closed run.
void write_mask(const std::string& path, const OpenMask& mask);
OpenMask read_mask(const std::string& path);

// Path I/O: one "x,y" line per vertex.
void write_path(const std::string& path, const LatticePath& p);
LatticePath read_path(const std::string& path);

// Indented tree dump: level, index range, span, flow, tame flag per node.
void dump_tree(std::ostream& os, const PathTree& tree);

}  // namespace gff2d
