#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slantsurf/error.hpp"
#include "slantsurf/kernels.hpp"
#include "slantsurf/ruled.hpp"
#include "slantsurf/synthesis.hpp"

using namespace slantsurf;

namespace {

CurvatureProfile constant_profile(double k1, double k2, FrameClass cls, double s0,
                                  double s1) {
    CurvatureProfile p;
    p.k1 = [k1](const Jet&) { return Jet::constant(k1); };
    p.k2 = [k2](const Jet&) { return Jet::constant(k2); };
    p.cls = cls;
    p.s_min = s0;
    p.s_max = s1;
    return p;
}

// Closed-form solution of the constant-coefficient frame system:
// M^3 = D M with D = eps(k2^2 - k1^2) (timelike) or k1^2 + k2^2 (spacelike),
// so exp(sM) = I + g1(s) M + g2(s) M^2.
struct ConstantOracle {
    double m[3][3] = {};
    double D = 0.0;

    ConstantOracle(double k1, double k2, FrameClass cls) {
        const ClassSigns cs = class_signs(cls);
        if (cs.timelike_surface) {
            m[0][1] = k1;
            m[1][0] = -cs.eps_q * k1;
            m[1][2] = k2;
            m[2][1] = cs.eps_q * k2;
            D = cs.eps_q * (k2 * k2 - k1 * k1);
        } else {
            m[0][1] = k1;
            m[1][0] = k1;
            m[1][2] = k2;
            m[2][1] = k2;
            D = k1 * k1 + k2 * k2;
        }
    }

    // rows of exp(s M) applied to the initial frame rows
    FrameTriple at(double s, const FrameTriple& init) const {
        double g1, g2;
        if (D > 0.0) {
            const double w = std::sqrt(D);
            g1 = std::sinh(w * s) / w;
            g2 = (std::cosh(w * s) - 1.0) / D;
        } else if (D < 0.0) {
            const double w = std::sqrt(-D);
            g1 = std::sin(w * s) / w;
            g2 = (1.0 - std::cos(w * s)) / (-D);
        } else {
            g1 = s;
            g2 = 0.5 * s * s;
        }
        double m2[3][3] = {};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) m2[i][j] += m[i][k] * m[k][j];
        double e[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                e[i][j] = (i == j ? 1.0 : 0.0) + g1 * m[i][j] + g2 * m2[i][j];
        const LorentzVec3 rows[3] = {init.q, init.h, init.a};
        LorentzVec3 out[3];
        for (int i = 0; i < 3; ++i)
            out[i] = e[i][0] * rows[0] + e[i][1] * rows[1] + e[i][2] * rows[2];
        return {out[0], out[1], out[2]};
    }
};

}  // namespace

TEST_CASE("default initial frames satisfy the class relations") {
    for (FrameClass cls : {FrameClass::NMinus, FrameClass::NPlus, FrameClass::NTimes}) {
        const FrameTriple f = default_initial_frame(cls);
        const ClassSigns cs = class_signs(cls);
        CHECK(gram_residual(f.q, f.h, f.a, cs.eps_q, cs.eps_h) == 0.0);
        const LorentzVec3 qh = lorentz_cross(f.q, f.h);
        const LorentzVec3 expect = cs.timelike_surface ? cs.eps_q * f.a : -1.0 * f.a;
        CHECK(euclidean_norm(qh - expect) < 1e-15);
    }
}

TEST_CASE("zero-length interval returns the initial frame") {
    CurvatureProfile p = constant_profile(1.0, 2.0, FrameClass::NMinus, 1.0, 1.0);
    const FrameTriple init = default_initial_frame(p.cls);
    const FrameSeries series = integrate_frame(p, init, 1e-3);
    REQUIRE(series.s.size() == 1);
    CHECK(euclidean_norm(series.frames[0].q - init.q) == 0.0);
    CHECK(euclidean_norm(series.frames[0].h - init.h) == 0.0);
    CHECK(euclidean_norm(series.frames[0].a - init.a) == 0.0);
}

TEST_CASE("integration matches the constant-coefficient closed form") {
    // N_minus with k2 > k1 stays oscillatory: the full turn at absolute
    // accuracy. The growing classes are compared on a shorter interval and
    // relatively, inside the range doubles can resolve products of
    // hyperbolically boosted components.
    for (FrameClass cls : {FrameClass::NMinus, FrameClass::NPlus, FrameClass::NTimes}) {
        const double k1 = 1.0, k2 = 2.0;
        const double s_end = cls == FrameClass::NMinus ? 6.283185307179586 : 2.0;
        CurvatureProfile p = constant_profile(k1, k2, cls, 0.0, s_end);
        const FrameTriple init = default_initial_frame(cls);
        const FrameSeries series = integrate_frame(p, init, 1e-3);
        const ConstantOracle oracle(k1, k2, cls);

        double worst = 0.0, scale = 1.0;
        for (std::size_t i = 0; i < series.s.size(); i += 250) {
            const FrameTriple expect = oracle.at(series.s[i], init);
            worst = std::max(worst, euclidean_norm(series.frames[i].q - expect.q));
            worst = std::max(worst, euclidean_norm(series.frames[i].h - expect.h));
            worst = std::max(worst, euclidean_norm(series.frames[i].a - expect.a));
            scale = std::max({scale, euclidean_norm(expect.q), euclidean_norm(expect.h),
                              euclidean_norm(expect.a)});
        }
        CHECK(worst / scale < 1e-8);
        if (cls == FrameClass::NMinus) CHECK(worst < 1e-8);
    }
}

TEST_CASE("near-degenerate k2 still integrates cleanly") {
    CurvatureProfile p = constant_profile(1.0, 1e-9, FrameClass::NMinus, 0.0, 2.0);
    const FrameSeries series = integrate_frame(p, 1e-3);
    const ClassSigns cs = class_signs(p.cls);
    for (std::size_t i = 0; i < series.frames.size(); i += 200) {
        const FrameTriple& f = series.frames[i];
        CHECK(gram_residual(f.q, f.h, f.a, cs.eps_q, cs.eps_h) < 1e-8);
    }
}

TEST_CASE("conservation of the Gram matrix along the integration") {
    CurvatureProfile p;
    p.k1 = [](const Jet& s) { return Jet::constant(0.8) + 0.2 * sin(s); };
    p.k2 = [](const Jet& s) { return Jet::constant(-0.6) + 0.1 * cos(2.0 * s); };
    p.cls = FrameClass::NTimes;
    p.s_min = 0.0;
    p.s_max = 5.0;
    const FrameSeries series = integrate_frame(p, 1e-3);
    const ClassSigns cs = class_signs(p.cls);
    for (std::size_t i = 0; i < series.frames.size(); i += 100) {
        const FrameTriple& f = series.frames[i];
        CHECK(std::fabs(lorentz_dot(f.q, f.q) - cs.eps_q) < 1e-8);
        CHECK(std::fabs(lorentz_dot(f.h, f.h) - cs.eps_h) < 1e-8);
        CHECK(std::fabs(lorentz_dot(f.a, f.a) - cs.eps_a) < 1e-8);
        CHECK(std::fabs(lorentz_dot(f.q, f.h)) < 1e-8);
        CHECK(std::fabs(lorentz_dot(f.q, f.a)) < 1e-8);
        CHECK(std::fabs(lorentz_dot(f.h, f.a)) < 1e-8);
    }
}

TEST_CASE("build_surface modes") {
    CurvatureProfile p = constant_profile(1.0, 2.0, FrameClass::NMinus, 0.0, 2.0);
    const FrameSeries series = integrate_frame(p, 1e-3);

    const SynthesizedSurface dev =
        build_surface(p, series, ReconstructionMode::Developable);
    CHECK(is_developable(dev.as_ruled_spec(), 1e-6));

    const SynthesizedSurface geo =
        build_surface(p, series, ReconstructionMode::GeodesicStriction);
    // striction condition <c', q'> = 0 at the nodes
    for (std::size_t i = 0; i < series.s.size(); i += 300) {
        const LorentzVec3 cp = geo.coeffs.alpha * series.frames[i].q +
                               geo.coeffs.gamma * series.frames[i].a;
        const LorentzVec3 qp = series.k1[i] * series.frames[i].h;
        CHECK(std::fabs(lorentz_dot(cp, qp)) < 1e-12);
    }

    // custom: beta must vanish, the (alpha, gamma) combination must be unit
    ModeCoeffs bad{1.0, 0.5, 0.0};
    CHECK_THROWS_AS(build_surface(p, series, ReconstructionMode::Custom, bad), Error);
    ModeCoeffs nonunit{2.0, 0.0, 1.0};
    CHECK_THROWS_AS(build_surface(p, series, ReconstructionMode::Custom, nonunit), Error);
    // eps_q alpha^2 + eps_a gamma^2 = -alpha^2 + gamma^2 = 1 on N_minus
    ModeCoeffs unit{1.0, 0.0, std::sqrt(2.0)};
    const SynthesizedSurface cus =
        build_surface(p, series, ReconstructionMode::Custom, unit);
    CHECK(cus.striction.size() == series.s.size());
}

TEST_CASE("round trip: synthesized invariants are recovered by analysis") {
    CurvatureProfile p;
    p.k1 = [](const Jet& s) { return Jet::constant(1.1) + 0.25 * sin(s); };
    p.k2 = [](const Jet& s) { return Jet::constant(1.9) + 0.2 * cos(s); };
    p.cls = FrameClass::NMinus;
    p.s_min = 0.3;
    p.s_max = 2.3;
    const SynthesizedSurface surf = synthesize(p, ReconstructionMode::Developable, 1e-3);
    AnalysisGrid grid;
    grid.samples = 128;
    const auto rec = invariants(surf.as_ruled_spec(), grid);
    double worst = 0.0;
    for (const FrameSample& f : rec) {
        const double sref = std::min(p.s_min + f.s, p.s_max);
        worst = std::max(worst, std::fabs(f.k1 - p.k1_jet(sref).value()));
        worst = std::max(worst, std::fabs(f.k2 - p.k2_jet(sref).value()));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("h-slant profile: frozen closed-form values") {
    // k2(2) = 2 / sqrt(|4 - coth(1)^2|), coth from the standard library
    const double coth1 = std::cosh(1.0) / std::sinh(1.0);
    const double expect = 2.0 / std::sqrt(std::fabs(4.0 - coth1 * coth1));
    HSlantProfile hp = h_slant_profile(1.0, Causal::Timelike, FrameClass::NMinus, 1.5, 4.0);
    CHECK(hp.profile.k2_jet(2.0).value() == doctest::Approx(expect).epsilon(1e-12));
    CHECK(hp.profile.k2_jet(2.0).value() == doctest::Approx(1.32566).epsilon(1e-3));
    CHECK(hp.expected_inner == doctest::Approx(std::sinh(1.0)));

    // interval straddling the radicand zero is rejected
    CHECK_THROWS_AS(h_slant_profile(1.0, Causal::Timelike, FrameClass::NMinus, 1.0, 4.0),
                    Error);
    // spacelike class must stay inside |s| < eta
    CHECK_THROWS_AS(h_slant_profile(1.0, Causal::Timelike, FrameClass::NTimes, 0.2, 1.2),
                    Error);
}

TEST_CASE("h-slant profile: the assembled axis is constant and unit") {
    HSlantProfile hp = h_slant_profile(1.0, Causal::Timelike, FrameClass::NMinus, 1.5, 4.0);
    const SynthesizedSurface surf =
        synthesize(hp.profile, ReconstructionMode::GeodesicStriction, 1e-3);
    const auto frames = surf.frames(400);
    select_axis_branch(hp, frames);

    const LorentzVec3 u0 = hp.axis_at(frames.front());
    CHECK(lorentz_dot(u0, u0) == doctest::Approx(-1.0).epsilon(1e-8));  // unit timelike
    std::vector<double> inner(frames.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        inner[i] = lorentz_dot(frames[i].h, u0);
        worst = std::max(worst, euclidean_norm(hp.axis_at(frames[i]) - u0));
    }
    CHECK(worst < 1e-6);
    const auto mv = kernels::mean_var(inner);
    CHECK(mv.stddev() < 1e-5);
    CHECK(std::fabs(mv.mean) == doctest::Approx(std::sinh(1.0)).epsilon(1e-6));
}

TEST_CASE("q-slant profile family") {
    const CurvatureProfile p =
        q_slant_profile(0.5, [](const Jet&) { return Jet::constant(2.0); },
                        FrameClass::NMinus, 0.0, 1.0);
    CHECK(p.k1_jet(0.5).value() == doctest::Approx(1.0));
    CHECK(p.k2_jet(0.5).value() == doctest::Approx(2.0));
    CHECK_THROWS_AS(q_slant_profile(0.0, [](const Jet&) { return Jet::constant(2.0); },
                                    FrameClass::NMinus, 0.0, 1.0),
                    Error);
    // varying scale keeps the ratio constant
    const CurvatureProfile v = q_slant_profile(
        0.5, [](const Jet& s) { return Jet::constant(1.0) + s * s; },
        FrameClass::NPlus, 0.0, 1.5);
    CHECK(v.k1_jet(1.0).value() / v.k2_jet(1.0).value() == doctest::Approx(0.5));
}

TEST_CASE("sampled profiles reproduce the analytic ones at spline accuracy") {
    // sample an analytic pair, rebuild through the table path, synthesize
    // both and compare the emitted invariants
    const int n = 400;
    std::vector<double> ss(n), k1s(n), k2s(n);
    auto k1f = [](double s) { return 1.1 + 0.2 * std::sin(s); };
    auto k2f = [](double s) { return 1.8 + 0.25 * std::cos(0.7 * s); };
    for (int i = 0; i < n; ++i) {
        ss[i] = 0.3 + 2.0 * i / (n - 1);
        k1s[i] = k1f(ss[i]);
        k2s[i] = k2f(ss[i]);
    }
    const CurvatureProfile tab = make_sampled_profile(ss, k1s, k2s, FrameClass::NMinus);
    CHECK(tab.k1_jet(1.0).value() == doctest::Approx(k1f(1.0)).epsilon(1e-8));
    CHECK(tab.k2_jet(1.0).deriv(1) ==
          doctest::Approx(-0.25 * 0.7 * std::sin(0.7)).epsilon(1e-4));

    const SynthesizedSurface surf = synthesize(tab, ReconstructionMode::Developable, 1e-3);
    const auto frames = surf.frames(64);
    for (const FrameSample& f : frames)
        CHECK(f.k1 / f.k2 == doctest::Approx(k1f(f.s) / k2f(f.s)).epsilon(1e-6));
}

TEST_CASE("gram drift guard") {
    CurvatureProfile p = constant_profile(1.0, 2.0, FrameClass::NMinus, 0.0, 1.0);
    CHECK_THROWS_AS(integrate_frame(p, 0.5), Error);  // absurd step trips the guard
}
