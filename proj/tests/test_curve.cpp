#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "slantsurf/curve.hpp"
#include "slantsurf/error.hpp"

using namespace slantsurf;

TEST_CASE("evaluate_jet on simple curves") {
    const CurveSpec line = make_expr_curve("u", "0", "0", "u", -1.0, 4.0);
    const auto jl = evaluate_jet(line, 2.0, 2);
    CHECK(jl[0].x1 == doctest::Approx(2.0));
    CHECK(jl[1].x1 == doctest::Approx(1.0));
    CHECK(euclidean_norm(jl[2]) == doctest::Approx(0.0));

    const CurveSpec circle = make_expr_curve("0", "cos(u)", "sin(u)", "u", -1.0, 7.0);
    const auto jc = evaluate_jet(circle, 0.0, 1);
    CHECK(jc[0].x2 == doctest::Approx(1.0));
    CHECK(jc[1].x3 == doctest::Approx(1.0));

    CHECK_THROWS_AS(evaluate_jet(line, 9.0, 1), Error);
}

TEST_CASE("arc-length reparametrization") {
    // (2u, 0, 0): timelike line, speed 2
    const CurveSpec line = make_expr_curve("2*u", "0", "0", "u", 0.0, 3.0);
    const CurveSpec unit = arclength_reparam(line);
    CHECK(unit.u_max() == doctest::Approx(6.0).epsilon(1e-10));
    for (double s : {0.5, 2.2, 5.7}) {
        const LorentzVec3 d = unit.jet(s).deriv(1);
        CHECK(std::fabs(lorentz_dot(d, d)) == doctest::Approx(1.0).epsilon(1e-10));
    }

    // circle already unit speed
    const CurveSpec circle = make_expr_curve("0", "cos(u)", "sin(u)", "u", 0.0, 6.0);
    const CurveSpec cunit = arclength_reparam(circle);
    CHECK(cunit.u_max() == doctest::Approx(6.0).epsilon(1e-10));
    const LorentzVec3 p = cunit.jet(1.0).value();
    CHECK(p.x2 == doctest::Approx(std::cos(1.0)).epsilon(1e-9));

    // null tangent
    const CurveSpec nullline = make_expr_curve("u", "u", "0", "u", 0.0, 1.0);
    CHECK_THROWS_AS(arclength_reparam(nullline), Error);
}

TEST_CASE("unit-speed jets carry correct higher derivatives") {
    // c(u) = (0, cos 3u, sin 3u): arc length s = 3u
    const CurveSpec c = make_expr_curve("0", "cos(3*u)", "sin(3*u)", "u", 0.0, 2.0);
    const CurveSpec unit = arclength_reparam(c);
    const double s = 2.0;
    const JetVec3 j = unit.jet(s);
    CHECK(j.deriv(0).x2 == doctest::Approx(std::cos(s)).epsilon(1e-9));
    CHECK(j.deriv(1).x2 == doctest::Approx(-std::sin(s)).epsilon(1e-9));
    CHECK(j.deriv(2).x2 == doctest::Approx(-std::cos(s)).epsilon(1e-8));
    CHECK(j.deriv(3).x2 == doctest::Approx(std::sin(s)).epsilon(1e-7));
}

TEST_CASE("quintic hermite reproduces a smooth curve and its derivatives") {
    auto f = [](double u) {
        const Jet ju = Jet::variable(u);
        return JetVec3{sin(ju), cosh(Jet::constant(0.5) * ju), ju * ju};
    };
    const int n = 200;
    std::vector<double> us(n);
    std::vector<LorentzVec3> p(n), dp(n), ddp(n);
    for (int i = 0; i < n; ++i) {
        us[i] = 2.0 * i / (n - 1);
        const JetVec3 j = f(us[i]);
        p[i] = j.deriv(0);
        dp[i] = j.deriv(1);
        ddp[i] = j.deriv(2);
    }
    const CurveSpec h = make_quintic_hermite_curve(us, p, dp, ddp);
    for (double u : {0.013, 0.531, 1.007, 1.993}) {
        const JetVec3 expect = f(u);
        const JetVec3 got = h.jet(u);
        for (int k = 0; k <= 2; ++k)
            CHECK(euclidean_norm(got.deriv(k) - expect.deriv(k)) < 1e-9);
        CHECK(euclidean_norm(got.deriv(3) - expect.deriv(3)) < 1e-5);
    }
}

TEST_CASE("natural cubic spline interpolates samples") {
    const int n = 60;
    std::vector<double> us(n);
    std::vector<LorentzVec3> p(n);
    for (int i = 0; i < n; ++i) {
        us[i] = 3.0 * i / (n - 1);
        p[i] = {std::sin(us[i]), std::cos(us[i]), us[i]};
    }
    const CurveSpec sp = make_spline_curve(us, p);
    CHECK(sp.max_order() == 3);
    for (double u : {0.4, 1.5, 2.6}) {
        const LorentzVec3 v = sp.jet(u).value();
        CHECK(v.x1 == doctest::Approx(std::sin(u)).epsilon(1e-5));
        CHECK(sp.jet(u).deriv(1).x1 == doctest::Approx(std::cos(u)).epsilon(1e-3));
    }
}

TEST_CASE("curve Frenet apparatus") {
    // straight line: vanishing curvature
    const CurveSpec line = arclength_reparam(make_expr_curve("u", "0", "0", "u", 0.0, 2.0));
    CHECK_THROWS_AS(curve_frenet(line, 1.0), Error);

    // spacelike circle: kappa = 1, tau = 0
    const CurveSpec circle =
        arclength_reparam(make_expr_curve("0", "cos(u)", "sin(u)", "u", 0.0, 6.0));
    const CurveFrenetSample fr = curve_frenet(circle, 2.0);
    CHECK(fr.kappa == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fr.tau == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(gram_residual(fr.t, fr.n, fr.b, fr.eps_t, fr.eps_n) < 1e-8);
}

TEST_CASE("curve Frenet against a finite-difference oracle on a timelike helix") {
    // timelike helix: c(s) = (a sinh(w s), a cosh(w s), b s) with
    // a w^2 normalization; pick a=1, adjust to unit speed numerically
    const CurveSpec raw =
        make_expr_curve("1.2*sinh(u)", "1.2*cosh(u)", "0.8*u", "u", 0.0, 2.0);
    const CurveSpec unit = arclength_reparam(raw);

    auto pos = [&](double s) { return unit.jet(s).value(); };
    const double h = 1e-3;
    for (double s : {0.6, 1.1, 1.6}) {
        const CurveFrenetSample fr = curve_frenet(unit, s);
        // FD second derivative for curvature
        LorentzVec3 d2 = (1.0 / (12 * h * h)) *
                         (-1.0 * pos(s - 2 * h) + 16.0 * pos(s - h) - 30.0 * pos(s) +
                          16.0 * pos(s + h) - 1.0 * pos(s + 2 * h));
        const double kappa_fd = std::sqrt(std::fabs(lorentz_dot(d2, d2)));
        CHECK(fr.kappa == doctest::Approx(kappa_fd).epsilon(1e-6));
        CHECK(std::fabs(std::fabs(lorentz_dot(fr.t, fr.t)) - 1.0) < 1e-9);
        CHECK(gram_residual(fr.t, fr.n, fr.b, fr.eps_t, fr.eps_n) < 1e-8);
    }

    // constant curvature/torsion along the helix
    const CurveFrenetSample f1 = curve_frenet(unit, 0.5);
    const CurveFrenetSample f2 = curve_frenet(unit, 1.5);
    CHECK(f1.kappa == doctest::Approx(f2.kappa).epsilon(1e-8));
    CHECK(f1.tau == doctest::Approx(f2.tau).epsilon(1e-6));
}

TEST_CASE("lorentz transforms preserve the metric") {
    std::mt19937_64 eng(3);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(eng() >> 11) * 0x1.0p-53);
    };
    for (int i = 0; i < 50; ++i) {
        const LorentzTransform t = LorentzTransform::compose(
            LorentzTransform::rotation(uni(0, 6.28)),
            LorentzTransform::compose(LorentzTransform::boost(uni(-1, 1)),
                                      LorentzTransform::rotation(uni(0, 6.28))));
        const LorentzVec3 v{uni(-2, 2), uni(-2, 2), uni(-2, 2)};
        const LorentzVec3 w{uni(-2, 2), uni(-2, 2), uni(-2, 2)};
        CHECK(lorentz_dot(t.apply_linear(v), t.apply_linear(w)) ==
              doctest::Approx(lorentz_dot(v, w)).epsilon(1e-12));
    }
}
