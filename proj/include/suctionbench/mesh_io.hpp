#pragma once

#include <string>

#include "suctionbench/geometry.hpp"

namespace suctionbench {

/// Loads a plain-text triangle mesh (Wavefront-style "v x y z" / "f a b c"
/// lines, 1-based indices, optional /vt/vn suffixes ignored). Faces must be
/// triangles. Coordinates are read as meters unless scale is given (e.g.
/// 0.001 for millimeter files). Per-vertex normals are computed on load.
///
/// Throws IoError for a missing file and ParseError (with line number) for
/// malformed lines, non-triangle faces and out-of-range indices.
TriangleMesh load_mesh(const std::string& path, double scale = 1.0);

/// Writes the mesh in the same format.
void save_mesh(const std::string& path, const TriangleMesh& mesh);

}  // namespace suctionbench
