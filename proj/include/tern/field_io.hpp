#pragma once
// Snapshot and image export of grid fields.
//
// Snapshot format: little-endian binary, header {magic "TDF1", u32 n,
// u32 channel count}, followed by the channels as n·n float64 row-major.

#include <string>
#include <vector>

#include "tern/grid.hpp"

namespace tern::io {

void write_snapshot(const std::string& path, const std::vector<GridField>& channels);
std::vector<GridField> read_snapshot(const std::string& path);

// 8-bit P5, samples scaled linearly from [min, max] of the field.
void write_pgm(const std::string& path, const GridField& f);

// Composite P6: phase 1 red, phase 2 blue, background white.
void write_composite_ppm(const std::string& path, const GridField& u1, const GridField& u2);

}  // namespace tern::io
