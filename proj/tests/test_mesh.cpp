#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "slantsurf/error.hpp"
#include "slantsurf/mesh.hpp"

using namespace slantsurf;

namespace {

RuledSurfaceSpec helicoid(double u1 = 6.0) {
    return {make_expr_curve("u", "0", "0", "u", 0.0, u1),
            make_expr_curve("0", "cos(u)", "sin(u)", "u", 0.0, u1)};
}

}  // namespace

TEST_CASE("2x2 grid: 4 vertices, 2 triangles") {
    const MeshBuffer m = triangulate_ruled(helicoid(1.0), 2, 2, -1.0, 1.0);
    CHECK(m.vertices.size() == 4);
    CHECK(m.faces.size() == 2);
}

TEST_CASE("64x16 grid: 1024 vertices, 1890 triangles") {
    const MeshBuffer m = triangulate_ruled(helicoid(), 64, 16, -1.0, 1.0);
    CHECK(m.vertices.size() == 1024);
    CHECK(m.faces.size() == 1890);
    // all face indices valid and 1-based
    for (const auto& f : m.faces)
        for (int ix : {f[0], f[1], f[2]}) {
            CHECK(ix >= 1);
            CHECK(ix <= 1024);
        }
}

TEST_CASE("degenerate grids are rejected") {
    CHECK_THROWS_AS(triangulate_ruled(helicoid(), 64, 16, 1.0, 1.0), Error);
    CHECK_THROWS_AS(triangulate_ruled(helicoid(), 1, 16, -1.0, 1.0), Error);
}

TEST_CASE("mesh text format is stable and 1-indexed") {
    const MeshBuffer m = triangulate_ruled(helicoid(1.0), 2, 2, 0.0, 1.0);
    std::ostringstream os1, os2;
    write_mesh(m, os1);
    write_mesh(m, os2);
    CHECK(os1.str() == os2.str());  // byte-identical on identical input

    const std::string text = os1.str();
    CHECK(text.find("v 0 0 0\n") == 0);      // first vertex: base(0) + 0*q(0)
    CHECK(text.find("f 1 3 4\n") != std::string::npos);
    CHECK(text.find("f 1 4 2\n") != std::string::npos);
}

TEST_CASE("counterclockwise orientation in the parameter square") {
    const MeshBuffer m = triangulate_ruled(helicoid(1.0), 3, 3, 0.0, 1.0);
    // first cell: vertices (0,0)=(1), (1,0)=(4), (1,1)=(5), (0,1)=(2)
    CHECK(m.faces[0][0] == 1);
    CHECK(m.faces[0][1] == 4);
    CHECK(m.faces[0][2] == 5);
    CHECK(m.faces[1][0] == 1);
    CHECK(m.faces[1][1] == 5);
    CHECK(m.faces[1][2] == 2);
}
