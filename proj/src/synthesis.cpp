#include "slantsurf/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slantsurf/error.hpp"

namespace slantsurf {

void CurvatureProfile::validate(int probes) const {
    if (s_max < s_min)
        throw Error(Errc::InvalidArgument, "profile interval is reversed");
    if (s_max == s_min) probes = 1;
    for (int i = 0; i < probes; ++i) {
        const double s = probes == 1 ? s_min : s_min + (s_max - s_min) * i / (probes - 1);
        const double v1 = k1_jet(s).value();
        const double v2 = k2_jet(s).value();
        if (std::fabs(v1) < 1e-12 || std::fabs(v2) < 1e-12)
            throw Error(Errc::ZeroScale,
                        "invariant vanishes at s=" + std::to_string(s) + " (k1=" +
                            std::to_string(v1) + ", k2=" + std::to_string(v2) + ")");
    }
}

FrameTriple default_initial_frame(FrameClass cls) {
    switch (cls) {
        case FrameClass::NMinus:
            return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        case FrameClass::NPlus:
            return {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
        case FrameClass::NTimes:
            return {{0, 1, 0}, {1, 0, 0}, {0, 0, -1}};
    }
    return {};
}

namespace {

struct State {
    LorentzVec3 q, h, a;

    State operator+(const State& o) const { return {q + o.q, h + o.h, a + o.a}; }
    State operator*(double f) const { return {f * q, f * h, f * a}; }
};

State rhs(const State& y, double k1, double k2, const ClassSigns& cs) {
    if (cs.timelike_surface)
        return {k1 * y.h,
                (-cs.eps_q * k1) * y.q + k2 * y.a,
                (cs.eps_q * k2) * y.h};
    return {k1 * y.h, k1 * y.q + k2 * y.a, k2 * y.h};
}

LorentzVec3 class_rebuild_a(const LorentzVec3& q, const LorentzVec3& h,
                            const ClassSigns& cs) {
    // q x h = eps a (timelike) or -a (spacelike)
    const LorentzVec3 c = lorentz_cross(q, h);
    return cs.timelike_surface ? cs.eps_q * c : -1.0 * c;
}

void check_initial(const FrameTriple& f, const ClassSigns& cs) {
    if (gram_residual(f.q, f.h, f.a, cs.eps_q, cs.eps_h) > 1e-10)
        throw Error(Errc::InvalidArgument, "initial frame fails the Gram check");
    const LorentzVec3 a_expected = class_rebuild_a(f.q, f.h, cs);
    if (euclidean_norm(f.a - a_expected) > 1e-10)
        throw Error(Errc::InvalidArgument,
                    "initial frame violates the class's product relations");
}

}  // namespace

FrameSeries integrate_frame(const CurvatureProfile& profile, const FrameTriple& initial,
                            double step) {
    profile.validate();
    const ClassSigns cs = class_signs(profile.cls);
    check_initial(initial, cs);
    if (!(step > 0.0))
        throw Error(Errc::InvalidArgument, "step must be positive");

    const double span = profile.s_max - profile.s_min;
    const int n = span == 0.0 ? 0 : std::max(1, static_cast<int>(std::ceil(span / step)));
    const double h = n == 0 ? 0.0 : span / n;

    FrameSeries series;
    series.cls = profile.cls;
    series.s.reserve(static_cast<std::size_t>(n) + 1);
    series.frames.reserve(static_cast<std::size_t>(n) + 1);
    series.k1.reserve(static_cast<std::size_t>(n) + 1);
    series.k2.reserve(static_cast<std::size_t>(n) + 1);

    auto record = [&](double s, const State& y) {
        series.s.push_back(s);
        series.frames.push_back({y.q, y.h, y.a});
        series.k1.push_back(profile.k1_jet(s).value());
        series.k2.push_back(profile.k2_jet(s).value());
    };

    State y{initial.q, initial.h, initial.a};
    record(profile.s_min, y);

    for (int i = 0; i < n; ++i) {
        const double s0 = profile.s_min + h * i;
        auto f = [&](double s, const State& st) {
            return rhs(st, profile.k1_jet(s).value(), profile.k2_jet(s).value(), cs);
        };
        const State d1 = f(s0, y);
        const State d2 = f(s0 + 0.5 * h, y + d1 * (0.5 * h));
        const State d3 = f(s0 + 0.5 * h, y + d2 * (0.5 * h));
        const State d4 = f(s0 + h, y + d3 * h);
        y = y + (d1 + d2 * 2.0 + d3 * 2.0 + d4) * (h / 6.0);

        const double drift = gram_residual(y.q, y.h, y.a, cs.eps_q, cs.eps_h);
        series.max_gram_residual = std::max(series.max_gram_residual, drift);
        const double mag = std::max({1.0, euclidean_norm(y.q), euclidean_norm(y.h),
                                     euclidean_norm(y.a)});
        if (drift > 1e-6 * mag * mag)
            throw Error(Errc::GramDrift, "Gram residual " + std::to_string(drift) +
                                             " at s=" + std::to_string(s0 + h) +
                                             "; reduce the step");
        // re-orthonormalize: unit q, h orthogonal to q, a from the product
        y.q = normalize(y.q);
        y.h = y.h - (cs.eps_q * lorentz_dot(y.h, y.q)) * y.q;
        y.h = normalize(y.h);
        y.a = class_rebuild_a(y.q, y.h, cs);

        record(i + 1 == n ? profile.s_max : profile.s_min + h * (i + 1), y);
    }
    return series;
}

FrameSeries integrate_frame(const CurvatureProfile& profile, double step) {
    return integrate_frame(profile, default_initial_frame(profile.cls), step);
}

namespace {

ModeCoeffs mode_coeffs(ReconstructionMode mode, const std::optional<ModeCoeffs>& custom,
                       const ClassSigns& cs) {
    ModeCoeffs mc;
    switch (mode) {
        case ReconstructionMode::Developable:
            mc = {1.0, 0.0, 0.0};
            break;
        case ReconstructionMode::GeodesicStriction:
            mc = {0.0, 0.0, 1.0};
            break;
        case ReconstructionMode::Custom:
            if (!custom)
                throw Error(Errc::InvalidMode, "custom mode needs coefficients");
            mc = *custom;
            break;
    }
    if (mc.beta != 0.0)
        throw Error(Errc::InvalidMode,
                    "beta must be 0: a striction-line tangent has no h-component");
    const double speed2 = cs.eps_q * mc.alpha * mc.alpha + cs.eps_a * mc.gamma * mc.gamma;
    if (std::fabs(std::fabs(speed2) - 1.0) > 1e-9)
        throw Error(Errc::InvalidMode,
                    "|eps_q alpha^2 + eps_a gamma^2| must be 1 so s stays the "
                    "striction arc length (got " +
                        std::to_string(speed2) + ")");
    return mc;
}

}  // namespace

SynthesizedSurface build_surface(const CurvatureProfile& profile, const FrameSeries& series,
                                 ReconstructionMode mode, std::optional<ModeCoeffs> custom) {
    const ClassSigns cs = class_signs(profile.cls);
    const ModeCoeffs mc = mode_coeffs(mode, custom, cs);
    if (series.s.size() < 2)
        throw Error(Errc::InvalidArgument, "frame series too short");

    SynthesizedSurface out;
    out.profile = profile;
    out.series = series;
    out.mode = mode;
    out.coeffs = mc;
    out.striction.resize(series.s.size());

    // quadrature of c' = alpha q + gamma a with the known derivative
    // c'' = (alpha k1 + gamma k2 (eps_q on timelike classes)) h:
    // corrected trapezoid, O(step^4) globally
    auto cp = [&](std::size_t i) {
        return mc.alpha * series.frames[i].q + mc.gamma * series.frames[i].a;
    };
    auto cpp = [&](std::size_t i) {
        const double k2eff = cs.timelike_surface ? cs.eps_q * series.k2[i] : series.k2[i];
        return (mc.alpha * series.k1[i] + mc.gamma * k2eff) * series.frames[i].h;
    };
    out.striction[0] = {0, 0, 0};
    for (std::size_t i = 0; i + 1 < series.s.size(); ++i) {
        const double hstep = series.s[i + 1] - series.s[i];
        out.striction[i + 1] =
            out.striction[i] + 0.5 * hstep * (cp(i) + cp(i + 1)) +
            (hstep * hstep / 12.0) * (cpp(i) - cpp(i + 1));
    }
    return out;
}

SynthesizedSurface synthesize(const CurvatureProfile& profile, ReconstructionMode mode,
                              double step, std::optional<ModeCoeffs> custom) {
    return build_surface(profile, integrate_frame(profile, step), mode, custom);
}

std::vector<FrameSample> SynthesizedSurface::frames(int count) const {
    const std::size_t n = series.s.size();
    if (n == 0) return {};
    count = std::max(2, count);
    const ClassSigns cs = class_signs(profile.cls);

    std::vector<FrameSample> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const std::size_t idx =
            static_cast<std::size_t>(std::llround(static_cast<double>(i) *
                                                  static_cast<double>(n - 1) /
                                                  (count - 1)));
        FrameSample fs;
        fs.s = series.s[idx];
        fs.c = striction.empty() ? LorentzVec3{} : striction[idx];
        fs.q = series.frames[idx].q;
        fs.h = series.frames[idx].h;
        fs.a = series.frames[idx].a;
        fs.eps_q = cs.eps_q;
        fs.eps_h = cs.eps_h;
        const Jet k1j = profile.k1_jet(fs.s);
        const Jet k2j = profile.k2_jet(fs.s);
        fs.k1 = k1j.value();
        fs.k1_s = k1j.deriv(1);
        fs.k1_ss = k1j.deriv(2);
        fs.k2 = k2j.value();
        fs.k2_s = k2j.deriv(1);
        fs.k2_ss = k2j.deriv(2);
        // drall of the emitted surface from the actual vectors
        const LorentzVec3 cprime = coeffs.alpha * fs.q + coeffs.gamma * fs.a;
        const LorentzVec3 qprime = fs.k1 * fs.h;
        const double denom = lorentz_dot(qprime, qprime);
        if (std::fabs(denom) > 1e-14) {
            const double det = cprime.x1 * (fs.q.x2 * qprime.x3 - fs.q.x3 * qprime.x2) -
                               cprime.x2 * (fs.q.x1 * qprime.x3 - fs.q.x3 * qprime.x1) +
                               cprime.x3 * (fs.q.x1 * qprime.x2 - fs.q.x2 * qprime.x1);
            fs.drall = det / denom;
        }
        fs.frame_residual = gram_residual(fs.q, fs.h, fs.a, fs.eps_q, fs.eps_h);
        out.push_back(fs);
    }
    return out;
}

RuledSurfaceSpec SynthesizedSurface::as_ruled_spec() const {
    const std::size_t n = series.s.size();
    if (n < 2 || striction.size() != n)
        throw Error(Errc::InvalidArgument, "surface has no reconstructed striction curve");
    const ClassSigns cs = class_signs(profile.cls);

    // Knot spacing balances interpolation error against amplified nodal
    // noise: piecewise-polynomial coefficients divide nodal errors (~1e-13
    // from the integrator) by powers of the spacing, so denser is not
    // better once high-order derivatives are consumed downstream.
    const double span = series.s.back() - series.s.front();
    const double avg = span / static_cast<double>(n - 1);
    const std::size_t stride =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(0.01 / avg)));

    std::vector<double> knots;
    std::vector<LorentzVec3> c, dc, ddc, q, dq, ddq;
    for (std::size_t i = 0; i < n; i += stride) {
        const std::size_t j = std::min(i, n - 1);
        const FrameTriple& f = series.frames[j];
        const double k1 = series.k1[j], k2 = series.k2[j];
        const Jet k1j = profile.k1_jet(series.s[j]);
        const double k1p = k1j.deriv(1);
        const double k2eff = cs.timelike_surface ? cs.eps_q * k2 : k2;

        knots.push_back(series.s[j]);
        c.push_back(striction[j]);
        dc.push_back(coeffs.alpha * f.q + coeffs.gamma * f.a);
        ddc.push_back((coeffs.alpha * k1 + coeffs.gamma * k2eff) * f.h);

        q.push_back(f.q);
        dq.push_back(k1 * f.h);
        // q'' = k1' h + k1 h'
        const LorentzVec3 hp = cs.timelike_surface
                                   ? (-cs.eps_q * k1) * f.q + k2 * f.a
                                   : k1 * f.q + k2 * f.a;
        ddq.push_back(k1p * f.h + k1 * hp);
    }
    if (knots.back() != series.s.back()) {
        const std::size_t j = n - 1;
        const FrameTriple& f = series.frames[j];
        const double k1 = series.k1[j], k2 = series.k2[j];
        const Jet k1j = profile.k1_jet(series.s[j]);
        const double k2eff = cs.timelike_surface ? cs.eps_q * k2 : k2;
        knots.push_back(series.s[j]);
        c.push_back(striction[j]);
        dc.push_back(coeffs.alpha * f.q + coeffs.gamma * f.a);
        ddc.push_back((coeffs.alpha * k1 + coeffs.gamma * k2eff) * f.h);
        q.push_back(f.q);
        dq.push_back(k1 * f.h);
        const LorentzVec3 hp = cs.timelike_surface
                                   ? (-cs.eps_q * k1) * f.q + k2 * f.a
                                   : k1 * f.q + k2 * f.a;
        ddq.push_back(k1j.deriv(1) * f.h + k1 * hp);
    }
    return {make_quintic_hermite_curve(knots, c, dc, ddc),
            make_quintic_hermite_curve(knots, q, dq, ddq)};
}

LorentzVec3 HSlantProfile::axis_at(const FrameSample& fs) const {
    const ClassSigns cs = fs.signs();
    const double s = fs.s;
    if (cs.timelike_surface) {
        const double mu = axis_character == Causal::Timelike ? 1.0 / std::tanh(theta)
                                                             : std::tanh(theta);
        const double scale = axis_character == Causal::Timelike ? std::sinh(theta)
                                                                : std::cosh(theta);
        const double rad = std::sqrt(std::fabs(s * s + cs.eps_q * mu * mu));
        return scale * (cs.eps_q * s * fs.q + fs.h + branch_sign * rad * fs.a);
    }
    const double eta = axis_character == Causal::Timelike ? std::tanh(theta)
                                                          : 1.0 / std::tanh(theta);
    const double scale = axis_character == Causal::Timelike ? std::cosh(theta)
                                                            : std::sinh(theta);
    const double rad = std::sqrt(std::fabs(eta * eta - s * s));
    return scale * (s * fs.q - fs.h + branch_sign * rad * fs.a);
}

HSlantProfile h_slant_profile(double theta, Causal axis_character, FrameClass cls,
                              double s_min, double s_max) {
    if (theta == 0.0)
        throw Error(Errc::InvalidArgument, "theta must be nonzero");
    if (axis_character == Causal::Null)
        throw Error(Errc::InvalidArgument, "axis must be non-null");
    if (!(s_max > s_min))
        throw Error(Errc::InvalidArgument, "empty s-interval");

    const ClassSigns cs = class_signs(cls);
    HSlantProfile out;
    out.theta = theta;
    out.axis_character = axis_character;

    if (cs.timelike_surface) {
        const double mu = axis_character == Causal::Timelike ? 1.0 / std::tanh(theta)
                                                             : std::tanh(theta);
        // radicand s^2 + eps mu^2; for eps = -1 only |s| > mu carries the
        // constant axis, for eps = +1 every interval avoiding s = 0 works
        if (cs.eps_q < 0.0) {
            const bool above = s_min > mu || s_max < -mu;
            if (!above)
                throw Error(Errc::SingularInterval,
                            "interval must stay on one side of |s| = " + std::to_string(mu));
        }
        if (s_min <= 0.0 && s_max >= 0.0)
            throw Error(Errc::SingularInterval, "interval must avoid s = 0 (k2 vanishes)");
        const double eps = cs.eps_q;
        out.profile.k1 = [](const Jet&) { return Jet::constant(1.0); };
        out.profile.k2 = [eps, mu](const Jet& s) {
            return s / sqrt(abs(s * s + Jet::constant(eps * mu * mu)));
        };
        out.expected_inner = axis_character == Causal::Timelike ? std::sinh(theta)
                                                                : std::cosh(theta);
    } else {
        const double eta = axis_character == Causal::Timelike ? std::tanh(theta)
                                                              : 1.0 / std::tanh(theta);
        if (!(std::fabs(s_min) < eta && std::fabs(s_max) < eta))
            throw Error(Errc::SingularInterval,
                        "interval must stay inside |s| < " + std::to_string(eta));
        if (s_min <= 0.0 && s_max >= 0.0)
            throw Error(Errc::SingularInterval, "interval must avoid s = 0 (k2 vanishes)");
        out.profile.k1 = [](const Jet&) { return Jet::constant(1.0); };
        out.profile.k2 = [eta](const Jet& s) {
            return s / sqrt(abs(Jet::constant(eta * eta) - s * s));
        };
        out.expected_inner = axis_character == Causal::Timelike ? std::cosh(theta)
                                                                : std::sinh(theta);
    }
    out.profile.cls = cls;
    out.profile.s_min = s_min;
    out.profile.s_max = s_max;
    out.profile.validate();
    return out;
}

CurvatureProfile make_sampled_profile(const std::vector<double>& s,
                                      const std::vector<double>& k1,
                                      const std::vector<double>& k2, FrameClass cls) {
    if (s.size() != k1.size() || s.size() != k2.size())
        throw Error(Errc::InvalidArgument, "sample arrays must have matching lengths");
    std::vector<LorentzVec3> packed(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) packed[i] = {k1[i], k2[i], 0.0};
    // carried by the shared spline machinery: x1 = k1(s), x2 = k2(s)
    const CurveSpec carrier = make_spline_curve(s, packed);
    CurvatureProfile p;
    p.k1 = [carrier](const Jet& sj) {
        return jet_reparam(carrier.jet(sj.value()).x1, sj);
    };
    p.k2 = [carrier](const Jet& sj) {
        return jet_reparam(carrier.jet(sj.value()).x2, sj);
    };
    p.cls = cls;
    p.s_min = s.front();
    p.s_max = s.back();
    p.validate();
    return p;
}

void select_axis_branch(HSlantProfile& p, std::span<const FrameSample> frames) {
    if (frames.size() < 2) return;
    double best = std::numeric_limits<double>::infinity();
    double best_sign = p.branch_sign;
    const std::size_t probes = std::min<std::size_t>(frames.size(), 8);
    for (double sign : {-1.0, 1.0}) {
        p.branch_sign = sign;
        const LorentzVec3 u0 = p.axis_at(frames[0]);
        double worst = 0.0;
        for (std::size_t i = 1; i < probes; ++i)
            worst = std::max(worst, euclidean_norm(p.axis_at(frames[i]) - u0));
        if (worst < best) {
            best = worst;
            best_sign = sign;
        }
    }
    p.branch_sign = best_sign;
}

CurvatureProfile q_slant_profile(double ratio, std::function<Jet(const Jet&)> scale,
                                 FrameClass cls, double s_min, double s_max) {
    if (ratio == 0.0)
        throw Error(Errc::ZeroScale, "ratio must be nonzero (invariants are nonzero)");
    CurvatureProfile p;
    p.k1 = [ratio, scale](const Jet& s) { return ratio * scale(s); };
    p.k2 = scale;
    p.cls = cls;
    p.s_min = s_min;
    p.s_max = s_max;
    p.validate();
    return p;
}

}  // namespace slantsurf
