#include "slantsurf/mesh.hpp"

#include <cstdio>
#include <ostream>

#include "slantsurf/error.hpp"

namespace slantsurf {

MeshBuffer triangulate_ruled(const RuledSurfaceSpec& s, int nu, int nv, double v_lo,
                             double v_hi) {
    if (nu < 2 || nv < 2)
        throw Error(Errc::EmptyGrid, "grid needs at least 2x2 vertices");
    if (!(v_hi > v_lo))
        throw Error(Errc::EmptyGrid, "v-range has zero width");

    MeshBuffer mesh;
    mesh.vertices.reserve(static_cast<std::size_t>(nu) * nv);
    const double u0 = s.u_min(), u1 = s.u_max();
    for (int i = 0; i < nu; ++i) {
        const double u = u0 + (u1 - u0) * i / (nu - 1);
        const LorentzVec3 k = s.base.jet(u).value();
        const JetVec3 qraw = s.director.jet(u);
        const LorentzVec3 q = lorentz_normalize(qraw, 1e-12).value();
        for (int j = 0; j < nv; ++j) {
            const double v = v_lo + (v_hi - v_lo) * j / (nv - 1);
            const LorentzVec3 p = k + v * q;
            mesh.vertices.push_back({p.x1, p.x2, p.x3});
        }
    }

    mesh.faces.reserve(2u * (nu - 1) * (nv - 1));
    for (int i = 0; i + 1 < nu; ++i) {
        for (int j = 0; j + 1 < nv; ++j) {
            const int a = i * nv + j + 1;  // 1-based
            const int b = (i + 1) * nv + j + 1;
            const int c = (i + 1) * nv + j + 2;
            const int d = i * nv + j + 2;
            mesh.faces.push_back({a, b, c});
            mesh.faces.push_back({a, c, d});
        }
    }
    return mesh;
}

void write_mesh(const MeshBuffer& mesh, std::ostream& os) {
    char buf[128];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g\n", v[0], v[1], v[2]);
        os << buf;
    }
    for (const auto& f : mesh.faces) {
        std::snprintf(buf, sizeof buf, "f %d %d %d\n", f[0], f[1], f[2]);
        os << buf;
    }
}

}  // namespace slantsurf
