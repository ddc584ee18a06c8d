#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slantsurf/curve.hpp"
#include "slantsurf/helix.hpp"
#include "slantsurf/synthesis.hpp"

using namespace slantsurf;

namespace {

// striction line of a synthesized surface as a unit-speed curve
CurveSpec striction_of(const SynthesizedSurface& surf) {
    const FrameSeries& s = surf.series;
    const ClassSigns cs = class_signs(surf.profile.cls);
    std::vector<LorentzVec3> dc(s.s.size()), ddc(s.s.size());
    for (std::size_t i = 0; i < s.s.size(); ++i) {
        dc[i] = surf.coeffs.alpha * s.frames[i].q + surf.coeffs.gamma * s.frames[i].a;
        const double k2eff = cs.timelike_surface ? cs.eps_q * s.k2[i] : s.k2[i];
        ddc[i] = (surf.coeffs.alpha * s.k1[i] + surf.coeffs.gamma * k2eff) * s.frames[i].h;
    }
    return make_quintic_hermite_curve(s.s, surf.striction, dc, ddc);
}

}  // namespace

TEST_CASE("planar circle is a degenerate general helix and a slant helix") {
    const CurveSpec circle =
        arclength_reparam(make_expr_curve("0", "cos(u)", "sin(u)", "u", 0.0, 6.0));
    const HelixReport gh = general_helix_test(circle, 256, 1e-6);
    CHECK(gh.fit.verdict);
    CHECK(gh.torsion_vanishing);
    CHECK(std::fabs(gh.fit.mean_inner) < 1e-8);  // <t, axis> = 0
    CHECK(gh.fit.axis_character == Causal::Timelike);
    CHECK(std::fabs(std::fabs(gh.fit.axis.x1) - 1.0) < 1e-8);

    const HelixReport sh = slant_helix_test(circle, 256, 1e-6);
    CHECK(sh.fit.verdict);
}

TEST_CASE("constant-curvature helix passes, variable ratio fails") {
    // synthesize a developable surface from a constant profile: its striction
    // line has constant curvature ratio
    CurvatureProfile p;
    p.k1 = [](const Jet&) { return Jet::constant(1.0); };
    p.k2 = [](const Jet&) { return Jet::constant(2.0); };
    p.cls = FrameClass::NMinus;
    p.s_min = 0.0;
    p.s_max = 3.0;
    const SynthesizedSurface surf = synthesize(p, ReconstructionMode::Developable, 1e-3);
    const CurveSpec c = striction_of(surf);
    const HelixReport gh = general_helix_test(c, 256, 1e-6);
    CHECK(gh.fit.verdict);
    CHECK(gh.fit.residual < 1e-8);
    CHECK(gh.ratio_applicable);
    CHECK(gh.ratio_constant);

    // varying ratio: not a general helix
    CurvatureProfile bad;
    bad.k1 = [](const Jet&) { return Jet::constant(1.0); };
    bad.k2 = [](const Jet& s) { return Jet::constant(1.0) + s; };
    bad.cls = FrameClass::NMinus;
    bad.s_min = 0.0;
    bad.s_max = 3.0;
    const SynthesizedSurface sbad = synthesize(bad, ReconstructionMode::Developable, 1e-3);
    const HelixReport ghb = general_helix_test(striction_of(sbad), 256, 1e-6);
    CHECK_FALSE(ghb.fit.verdict);
    CHECK(ghb.fit.residual > 1e-3);
}

TEST_CASE("every general helix is a degenerate slant helix") {
    // differentiating <t,u> = const gives kappa <n,u> = 0, so the helix
    // axis always keeps <n,u> = 0: the slant-helix verdict must hold with
    // the same axis and constant 0
    CurvatureProfile p;
    p.k1 = [](const Jet&) { return Jet::constant(1.0); };
    p.k2 = [](const Jet&) { return Jet::constant(2.0); };
    p.cls = FrameClass::NTimes;
    p.s_min = 0.0;
    p.s_max = 2.2;
    const SynthesizedSurface surf = synthesize(p, ReconstructionMode::Developable, 1e-3);
    const CurveSpec c = striction_of(surf);
    CHECK(general_helix_test(c, 256, 1e-5).fit.verdict);
    const HelixReport sh = slant_helix_test(c, 256, 1e-5);
    CHECK(sh.fit.verdict);
    CHECK(std::fabs(sh.fit.mean_inner) < 1e-6);
}

TEST_CASE("a curve that is neither a general nor a slant helix") {
    CurvatureProfile p;
    p.k1 = [](const Jet&) { return Jet::constant(1.0); };
    p.k2 = [](const Jet& s) { return Jet::constant(1.0) + s * s; };
    p.cls = FrameClass::NMinus;
    p.s_min = 0.3;
    p.s_max = 2.3;
    const SynthesizedSurface surf = synthesize(p, ReconstructionMode::Developable, 1e-3);
    const CurveSpec c = striction_of(surf);
    const HelixReport gh = general_helix_test(c, 256, 1e-5);
    CHECK_FALSE(gh.fit.verdict);
    CHECK(gh.fit.residual > 1e-3);
    const HelixReport sh = slant_helix_test(c, 256, 1e-5);
    CHECK_FALSE(sh.fit.verdict);
    CHECK(sh.fit.residual > 1e-3);
}

TEST_CASE("normal with a constant hyperbolic angle against a timelike axis") {
    HSlantProfile hp =
        h_slant_profile(1.0, Causal::Timelike, FrameClass::NMinus, 1.5, 4.0);
    const SynthesizedSurface surf =
        synthesize(hp.profile, ReconstructionMode::GeodesicStriction, 1e-3);
    const CurveSpec c = striction_of(surf);
    const HelixReport sh = slant_helix_test(c, 256, 1e-5);
    CHECK(sh.fit.verdict);
    CHECK(sh.fit.axis_character == Causal::Timelike);
    CHECK(std::fabs(std::fabs(sh.fit.mean_inner) - std::sinh(1.0)) < 1e-5);
}

TEST_CASE("axis fit is invariant under rigid motions") {
    CurvatureProfile p;
    p.k1 = [](const Jet& s) { return Jet::constant(1.0) + 0.2 * sin(s); };
    p.k2 = [](const Jet& s) { return Jet::constant(1.6) + 0.3 * cos(s); };
    p.cls = FrameClass::NMinus;
    p.s_min = 0.0;
    p.s_max = 3.0;
    const SynthesizedSurface surf = synthesize(p, ReconstructionMode::Developable, 1e-3);
    const CurveSpec c = striction_of(surf);

    LorentzTransform t = LorentzTransform::compose(
        LorentzTransform::rotation(0.9),
        LorentzTransform::compose(LorentzTransform::boost(0.4),
                                  LorentzTransform::rotation(-1.7)));
    t.translation = {0.3, -0.8, 1.1};
    const CurveSpec moved = transform_curve(c, t);

    const HelixReport r1 = general_helix_test(c, 200, 1e-6);
    const HelixReport r2 = general_helix_test(moved, 200, 1e-6);
    CHECK(r1.fit.verdict == r2.fit.verdict);
    CHECK(std::fabs(r1.fit.residual - r2.fit.residual) < 1e-9);
}
