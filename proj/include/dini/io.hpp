#pragma once

#include "dini/grid.hpp"
#include "dini/vector_field.hpp"

#include <filesystem>
#include <string>

namespace dini {

/// Field file: one line of JSON header {nx, ny, x0, y0, dx, dy, mask?,
/// dtype: "f64-le"} followed by nx * ny little-endian doubles, rows along y
/// (x runs fastest). The optional mask is a string of '0'/'1' in the same
/// order.
void write_field(const SampledField& f, const std::filesystem::path& path);

/// Throws corrupt_file when the header is malformed or the payload size
/// disagrees with it; nothing is returned in that case.
SampledField read_field(const std::filesystem::path& path);

/// Staggered components as <stem>_v1.field and <stem>_v2.field plus a JSON
/// manifest <stem>.json describing the node grid. Returns the manifest path.
std::filesystem::path write_vector_field(const VectorField& v, const std::filesystem::path& dir,
                                         const std::string& stem);
VectorField read_vector_field(const std::filesystem::path& manifest);

}  // namespace dini
