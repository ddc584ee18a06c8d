#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "slantsurf/ruled.hpp"

namespace slantsurf {

struct MeshBuffer {
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::array<int, 3>> faces;  // 1-based indices
};

// Triangulated (u,v) grid over r(u,v) = base(u) + v * director(u), with
// counterclockwise orientation in the (u,v) parameter square. Throws
// EmptyGrid for a degenerate grid or zero-width v-range.
MeshBuffer triangulate_ruled(const RuledSurfaceSpec& s, int nu, int nv, double v_lo,
                             double v_hi);

// Plain-text polygon format: "v x y z" vertex lines then "f i j k" face
// lines, 9-significant-digit decimals (byte-stable for identical input).
void write_mesh(const MeshBuffer& mesh, std::ostream& os);

}  // namespace slantsurf
