#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slantsurf/error.hpp"
#include "slantsurf/ruled.hpp"
#include "slantsurf/synthesis.hpp"

using namespace slantsurf;

namespace {

RuledSurfaceSpec helicoid() {
    return {make_expr_curve("u", "0", "0", "u", 0.1, 6.0),
            make_expr_curve("0", "cos(u)", "sin(u)", "u", 0.1, 6.0)};
}

RuledSurfaceSpec cone() {
    return {make_expr_curve("0", "0", "0", "u", 0.1, 1.2),
            make_expr_curve("2", "cos(u)", "sin(u)", "u", 0.1, 1.2)};
}

RuledSurfaceSpec cylinder() {
    return {make_expr_curve("0", "cos(u)", "sin(u)", "u", 0.0, 3.0),
            make_expr_curve("1", "0", "0", "u", 0.0, 3.0)};
}

}  // namespace

TEST_CASE("distribution parameter") {
    CHECK(distribution_parameter(helicoid(), 1.0) == doctest::Approx(1.0));
    CHECK(distribution_parameter(cone(), 0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(distribution_parameter(cylinder(), 1.0), Error);
}

TEST_CASE("striction point") {
    // helicoid: <dq,dk> = 0, striction curve equals the base curve exactly
    const RuledSurfaceSpec h = helicoid();
    const LorentzVec3 c = striction_point(h, 2.0);
    CHECK(c.x1 == 2.0);
    CHECK(c.x2 == 0.0);
    CHECK(c.x3 == 0.0);
    CHECK_THROWS_AS(striction_point(cylinder(), 1.0), Error);

    // k(u) = (u, 0, u^2), rotating director: the striction derivative is
    // metric-orthogonal to dq (checked with finite differences)
    const RuledSurfaceSpec s{make_expr_curve("u", "0", "u*u", "u", 0.2, 2.0),
                             make_expr_curve("0", "cos(u)", "sin(u)", "u", 0.2, 2.0)};
    const double du = 1e-5;
    for (double u : {0.5, 1.0, 1.6}) {
        const LorentzVec3 cp =
            (1.0 / (2 * du)) * (striction_point(s, u + du) - striction_point(s, u - du));
        const LorentzVec3 dq = s.director.jet(u).deriv(1);
        CHECK(std::fabs(lorentz_dot(cp, dq)) < 1e-6);
    }
}

TEST_CASE("frame of the helicoid") {
    const FrameSample f = frenet_frame(helicoid(), 1.3);
    CHECK(gram_residual(f.q, f.h, f.a, f.eps_q, f.eps_h) < 1e-10);
    CHECK(f.eps_q == 1.0);
    CHECK(f.eps_h == 1.0);
    // h parallel to dq, positively (k1 >= 0 orientation)
    const LorentzVec3 dq = helicoid().director.jet(1.3).deriv(1);
    CHECK(euclidean_norm(f.h - dq) < 1e-10);
    CHECK(f.drall == doctest::Approx(1.0));
    CHECK_THROWS_AS(frenet_frame(cylinder(), 1.0), Error);
}

TEST_CASE("classification") {
    CHECK(classify(helicoid()).tag == SurfaceClassTag::NPlus);

    // timelike director q = (cosh u, sinh u, 0): N_minus
    const RuledSurfaceSpec nm{make_expr_curve("0", "0", "u", "u", 0.0, 1.5),
                              make_expr_curve("cosh(u)", "sinh(u)", "0", "u", 0.0, 1.5)};
    CHECK(classify(nm).tag == SurfaceClassTag::NMinus);

    // director crossing the light cone inside the interval
    const RuledSurfaceSpec bad{
        make_expr_curve("0", "0", "u", "u", 0.5, 2.0),
        make_expr_curve("u", "1", "0", "u", 0.5, 2.0)};  // null at u = 1
    const SurfaceClass cls = classify(bad);
    CHECK(cls.tag == SurfaceClassTag::Degenerate);
    CHECK_FALSE(cls.reason.empty());
}

TEST_CASE("developability") {
    CHECK(is_developable(cone(), 1e-8));
    CHECK_FALSE(is_developable(helicoid(), 1e-8));
    const DevelopabilityReport rep = developability(cylinder(), 1e-8);
    CHECK(rep.developable);
    CHECK(rep.cylindrical);

    // synthesized developable surface: drall vanishes and the striction
    // tangent coincides with the ruling
    CurvatureProfile p;
    p.k1 = [](const Jet& s) { return Jet::constant(1.0) + 0.2 * sin(s); };
    p.k2 = [](const Jet&) { return Jet::constant(1.5); };
    p.cls = FrameClass::NMinus;
    p.s_min = 0.0;
    p.s_max = 2.0;
    const SynthesizedSurface surf = synthesize(p, ReconstructionMode::Developable, 1e-3);
    const DevelopabilityReport dr = developability(surf.as_ruled_spec(), 1e-6);
    CHECK(dr.developable);
    CHECK(dr.tangent_check_applicable);
    CHECK(dr.tangent_matches_ruling);
}

TEST_CASE("invariants of the helicoid") {
    AnalysisGrid grid;
    grid.samples = 64;
    const auto frames = invariants(helicoid(), grid);
    CHECK(frames.size() >= 64);
    for (const FrameSample& f : frames) {
        CHECK(f.k1 == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(std::fabs(f.k2) < 1e-8);  // central tangent is constant
        CHECK(f.frame_residual < 1e-6);
        CHECK_FALSE(f.flagged);
        CHECK(gram_residual(f.q, f.h, f.a, f.eps_q, f.eps_h) < 1e-8);
    }
}

TEST_CASE("frame-system residuals hold on a generic surface") {
    const RuledSurfaceSpec s{
        make_expr_curve("0.3*u", "u", "0.2*u*u", "u", 0.2, 2.2),
        make_expr_curve("0", "cos(u)", "sin(u)", "u", 0.2, 2.2)};
    AnalysisGrid grid;
    grid.samples = 96;
    const auto frames = invariants(s, grid);
    int flagged = 0;
    for (const FrameSample& f : frames) {
        flagged += f.flagged;
        // per-class product relations
        const ClassSigns cs = f.signs();
        LorentzVec3 r1, r2, r3;
        if (cs.timelike_surface) {
            r1 = lorentz_cross(f.q, f.h) - cs.eps_q * f.a;
            r2 = lorentz_cross(f.h, f.a) + cs.eps_q * f.q;
            r3 = lorentz_cross(f.a, f.q) + f.h;
        } else {
            r1 = lorentz_cross(f.q, f.h) + f.a;
            r2 = lorentz_cross(f.h, f.a) + f.q;
            r3 = lorentz_cross(f.a, f.q) - f.h;
        }
        CHECK(euclidean_norm(r1) < 1e-8);
        CHECK(euclidean_norm(r2) < 1e-8);
        CHECK(euclidean_norm(r3) < 1e-8);
    }
    CHECK(flagged == 0);
}

TEST_CASE("a momentarily stationary ruling flags its sample instead of aborting") {
    // q rotates at rate u^2: the ruling is stationary at u = 0, where the
    // frame does not exist; <dq,dk> = 0 structurally so the striction line
    // is the (unit-speed) base curve throughout
    const RuledSurfaceSpec s{
        make_expr_curve("u", "0", "0", "u", -1.0, 1.0),
        make_expr_curve("0", "cos(u*u*u/3)", "sin(u*u*u/3)", "u", -1.0, 1.0)};
    AnalysisGrid grid;
    grid.samples = 129;  // the midpoint sample lands exactly on u = 0
    grid.refine = false;
    const auto frames = invariants(s, grid);
    REQUIRE(frames.size() == 129);
    int flagged = 0;
    for (const FrameSample& f : frames) flagged += f.flagged ? 1 : 0;
    CHECK(flagged >= 1);
    CHECK(flagged <= 8);
    CHECK(frames[64].flagged);  // the degenerate station itself
    // away from the stationary point the analysis is clean: the spherical
    // image advances at rate |u|^2 with u = s - 1
    CHECK_FALSE(frames[10].flagged);
    const double u10 = frames[10].s - 1.0;
    CHECK(frames[10].k1 == doctest::Approx(u10 * u10).epsilon(1e-8));
    CHECK(frames[118].frame_residual < 1e-6);
}

TEST_CASE("analysis recovers the integrated frame vectors") {
    CurvatureProfile p;
    p.k1 = [](const Jet& s) { return Jet::constant(1.0) + 0.2 * sin(s); };
    p.k2 = [](const Jet&) { return Jet::constant(1.6); };
    p.cls = FrameClass::NMinus;
    p.s_min = 0.3;
    p.s_max = 2.3;
    const SynthesizedSurface surf = synthesize(p, ReconstructionMode::Developable, 1e-3);
    AnalysisGrid grid;
    grid.samples = 2001;  // aligned with the integration nodes
    grid.refine = false;
    const auto rec = invariants(surf.as_ruled_spec(), grid);
    REQUIRE(rec.size() == 2001);
    double worst = 0.0;
    for (std::size_t i = 0; i < rec.size(); i += 100) {
        const FrameTriple& node = surf.series.frames[i];
        worst = std::max(worst, euclidean_norm(rec[i].q - node.q));
        worst = std::max(worst, euclidean_norm(rec[i].h - node.h));
        worst = std::max(worst, euclidean_norm(rec[i].a - node.a));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("striction point is invariant under joint reparametrization") {
    const RuledSurfaceSpec a{make_expr_curve("u", "0", "u*u", "u", 0.2, 1.4),
                             make_expr_curve("0", "cos(u)", "sin(u)", "u", 0.2, 1.4)};
    // same surface traversed as u -> 2u + 0.1
    const RuledSurfaceSpec b{
        make_expr_curve("2*u + 0.1", "0", "(2*u + 0.1)*(2*u + 0.1)", "u", 0.05, 0.65),
        make_expr_curve("0", "cos(2*u + 0.1)", "sin(2*u + 0.1)", "u", 0.05, 0.65)};
    for (double u : {0.1, 0.3, 0.6}) {
        const LorentzVec3 pa = striction_point(a, 2.0 * u + 0.1);
        const LorentzVec3 pb = striction_point(b, u);
        CHECK(euclidean_norm(pa - pb) < 1e-9);
    }
}

TEST_CASE("striction is invariant under base reparametrization") {
    // same surface, base curve traversed at a different rate: striction
    // points at matching parameter values coincide
    const RuledSurfaceSpec a{make_expr_curve("u", "0", "u*u", "u", 0.2, 1.4),
                             make_expr_curve("0", "cos(u)", "sin(u)", "u", 0.2, 1.4)};
    for (double u : {0.3, 0.7, 1.2}) {
        const LorentzVec3 p1 = striction_point(a, u);
        // base regauged by lambda(u) q(u)
        const RuledSurfaceSpec b{
            make_expr_curve("u", "0 + 0.7*sin(u)*cos(u)", "u*u + 0.7*sin(u)*sin(u)",
                            "u", 0.2, 1.4),
            a.director};
        const LorentzVec3 p2 = striction_point(b, u);
        CHECK(euclidean_norm(p1 - p2) < 1e-9);
    }
}
