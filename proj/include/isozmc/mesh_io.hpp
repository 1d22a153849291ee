#pragma once

#include <string>
#include <vector>

#include "isozmc/verify.hpp"

// Tessellation of a family over a grid and Wavefront-style text export.
// Vertices are written as (x, y, l) with the vertical coordinate as height;
// curvature lines go out as OBJ line records plus a sidecar text format.

namespace isozmc {

struct MeshBuffer {
  int n_u = 0, n_v = 0;
  std::vector<Vec3> vertices;                  // (l,x,y), row-major: index = i*n_v + j
  std::vector<std::array<int, 3>> triangles;   // 0-based
  std::vector<std::vector<int>> polylines;     // 0-based vertex indices
};

/// Sample, triangulate (quads split along the (i,j)->(i+1,j+1) diagonal),
/// and record the coordinate lines. Throws DegeneracyError naming the
/// offending sample when the grid touches a pole or metric zero.
MeshBuffer tessellate_family(const WeierstrassFamily& f, const GridSpec& grid,
                             const QuadratureConfig& quad = {},
                             double degenerate_floor = 1e-12);

std::string obj_text(const MeshBuffer& mesh);
std::string polyline_sidecar_text(const MeshBuffer& mesh);

/// Write-temp-then-rename; never leaves a partial file at `path`.
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace isozmc
