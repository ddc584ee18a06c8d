#include "slantsurf/slant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slantsurf/error.hpp"
#include "slantsurf/kernels.hpp"

namespace slantsurf {

namespace {

void require_uniform_signs(std::span<const FrameSample> frames) {
    if (frames.size() < 3)
        throw Error(Errc::InvalidArgument, "detector needs at least 3 frame samples");
    for (const FrameSample& f : frames)
        if (f.eps_q != frames[0].eps_q || f.eps_h != frames[0].eps_h)
            throw Error(Errc::InvalidArgument,
                        "frame samples mix causal signatures; analyze the surface "
                        "piecewise");
}

void require_nonzero(std::span<const FrameSample> frames, bool k1_needed,
                     bool k2_needed, double tol) {
    for (const FrameSample& f : frames) {
        if (k1_needed && std::fabs(f.k1) < tol)
            throw Error(Errc::ZeroCurvature,
                        "k1 below tolerance at s=" + std::to_string(f.s));
        if (k2_needed && std::fabs(f.k2) < tol)
            throw Error(Errc::ZeroCurvature,
                        "k2 below tolerance at s=" + std::to_string(f.s));
    }
}

struct AxisSeries {
    std::vector<LorentzVec3> axes;   // per-sample reconstruction, normalized
    bool degenerate = false;
};

// Statistics an axis series induces on a detector result.
void fill_axis_fields(DetectorResult& r, const AxisSeries& series,
                      std::span<const FrameSample> frames) {
    if (series.degenerate || series.axes.empty()) {
        r.degenerate_axis = true;
        return;
    }
    r.axis = series.axes.front();
    r.axis_character = causal_character(r.axis).tag;
    r.axis_valid = true;

    double worst = 0.0;
    for (const LorentzVec3& u : series.axes)
        worst = std::max(worst, euclidean_norm(u - r.axis));
    r.axis_constancy = worst;

    const std::size_t n = frames.size();
    std::vector<double> iq(n), ih(n), ia(n);
    for (std::size_t i = 0; i < n; ++i) {
        iq[i] = lorentz_dot(frames[i].q, r.axis);
        ih[i] = lorentz_dot(frames[i].h, r.axis);
        ia[i] = lorentz_dot(frames[i].a, r.axis);
    }
    r.c_q = kernels::mean_var(iq).mean;
    r.c_h = kernels::mean_var(ih).mean;
    r.c_a = kernels::mean_var(ia).mean;
}

}  // namespace

DetectorResult q_slant_ratio_test(std::span<const FrameSample> frames, double tol) {
    require_uniform_signs(frames);
    require_nonzero(frames, false, true, tol);

    DetectorResult r;
    const std::size_t n = frames.size();
    r.series.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.series[i] = frames[i].k1 / frames[i].k2;

    const auto mv = kernels::mean_var(r.series);
    r.residual = mv.stddev();
    r.verdict = r.residual < tol;

    if (r.verdict) {
        AxisSeries series;
        const double eps = frames[0].eps_q;
        const bool timelike = frames[0].eps_h > 0.0;
        r.axis_coeff_ratio = (timelike ? -eps : -1.0) * mv.mean;
        for (const FrameSample& f : frames) {
            const double ratio = f.k1 / f.k2;
            const double rho = timelike ? -eps * ratio : -ratio;
            const LorentzVec3 raw = f.q + rho * f.a;
            const double m = lorentz_dot(raw, raw);
            if (std::fabs(m) < 1e-9 * (1.0 + rho * rho)) {
                series.degenerate = true;
                break;
            }
            series.axes.push_back((1.0 / std::sqrt(std::fabs(m))) * raw);
        }
        fill_axis_fields(r, series, frames);
        if (r.axis_valid) {
            std::vector<double> inner(n);
            for (std::size_t i = 0; i < n; ++i)
                inner[i] = lorentz_dot(frames[i].q, r.axis);
            r.inner_stddev = kernels::mean_var(inner).stddev();
        }
    }
    return r;
}

namespace {

// q', q'', q''' (or a', a'', a''') in frame coordinates via the frame system.
struct DerivativeChain {
    FrameCoeffs d1, d2, d3;
};

DerivativeChain chain_of(const FrameSample& f, bool of_ruling) {
    const ClassSigns cs = f.signs();
    const Jet k1 = f.k1_jet();
    const Jet k2 = f.k2_jet();
    FrameCoeffs base;
    if (of_ruling)
        base = {Jet::constant(1.0), Jet::constant(0.0), Jet::constant(0.0)};
    else
        base = {Jet::constant(0.0), Jet::constant(0.0), Jet::constant(1.0)};
    DerivativeChain ch;
    ch.d1 = frame_derive(base, k1, k2, cs);
    ch.d2 = frame_derive(ch.d1, k1, k2, cs);
    ch.d3 = frame_derive(ch.d2, k1, k2, cs);
    return ch;
}

double ratio_derivative(const FrameSample& f) {
    // (k1/k2)' = (k1' k2 - k1 k2') / k2^2
    return (f.k1_s * f.k2 - f.k1 * f.k2_s) / (f.k2 * f.k2);
}

DetectorResult det_test_impl(std::span<const FrameSample> frames, double tol,
                             bool of_ruling) {
    require_uniform_signs(frames);
    require_nonzero(frames, of_ruling, true, tol);

    DetectorResult r;
    const std::size_t n = frames.size();
    r.series.resize(n);
    double worst_disc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const FrameSample& f = frames[i];
        const DerivativeChain ch = chain_of(f, of_ruling);
        const double direct = frame_det(ch.d1, ch.d2, ch.d3);

        const bool timelike = f.eps_h > 0.0;
        double closed;
        if (of_ruling) {
            const double k13 = f.k1 * f.k1 * f.k1;
            const double k22 = f.k2 * f.k2;
            closed = (timelike ? -f.eps_q : 1.0) * k13 * k22 * ratio_derivative(f);
        } else {
            const double k25 = std::pow(f.k2, 5);
            closed = (timelike ? -1.0 : 1.0) * k25 * ratio_derivative(f);
        }
        worst_disc = std::max(worst_disc,
                              std::fabs(direct - closed) / std::max(1.0, std::fabs(closed)));
        r.series[i] = direct;
    }
    r.closed_form_discrepancy = worst_disc;
    r.residual = kernels::max_abs(r.series);
    r.verdict = r.residual < tol;
    return r;
}

}  // namespace

DetectorResult det_q_test(std::span<const FrameSample> frames, double tol) {
    return det_test_impl(frames, tol, true);
}

DetectorResult det_a_test(std::span<const FrameSample> frames, double tol) {
    return det_test_impl(frames, tol, false);
}

DetectorResult ode_q_test(std::span<const FrameSample> frames, double tol) {
    require_uniform_signs(frames);
    require_nonzero(frames, true, false, tol);

    DetectorResult r;
    const std::size_t n = frames.size();
    r.series.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const FrameSample& f = frames[i];
        const ClassSigns cs = f.signs();
        const Jet k1 = f.k1_jet();
        const Jet k2 = f.k2_jet();

        const FrameCoeffs q{Jet::constant(1.0), Jet::constant(0.0), Jet::constant(0.0)};
        const FrameCoeffs q1 = frame_derive(q, k1, k2, cs);
        const FrameCoeffs q2 = frame_derive(q1, k1, k2, cs);
        const FrameCoeffs q3 = frame_derive(q2, k1, k2, cs);
        const FrameCoeffs h{Jet::constant(0.0), Jet::constant(1.0), Jet::constant(0.0)};
        const FrameCoeffs h1 = frame_derive(h, k1, k2, cs);

        double m;
        if (cs.timelike_surface)
            m = -f.k1_ss / f.k1 + cs.eps_q * (f.k1 * f.k1 - f.k2 * f.k2);
        else
            m = -(f.k1_ss / f.k1 + f.k1 * f.k1 + f.k2 * f.k2);

        const double rq = q3.q.value() + m * q1.q.value() - 3.0 * f.k1_s * h1.q.value();
        const double rh = q3.h.value() + m * q1.h.value() - 3.0 * f.k1_s * h1.h.value();
        const double ra = q3.a.value() + m * q1.a.value() - 3.0 * f.k1_s * h1.a.value();
        r.series[i] = std::sqrt(rq * rq + rh * rh + ra * ra);
    }
    r.residual = kernels::max_abs(r.series);
    r.verdict = r.residual < tol;
    return r;
}

DetectorResult h_slant_test(std::span<const FrameSample> frames, double tol) {
    require_uniform_signs(frames);
    require_nonzero(frames, true, true, tol);

    DetectorResult r;
    const std::size_t n = frames.size();
    const bool timelike = frames[0].eps_h > 0.0;
    const double eps = frames[0].eps_q;

    r.series.resize(n);
    bool guarded = false;
    for (std::size_t i = 0; i < n; ++i) {
        const FrameSample& f = frames[i];
        // (k2/k1)' = (k2' k1 - k2 k1') / k1^2, so k1^2 (k2/k1)' is just
        // the numerator
        const double num = f.k2_s * f.k1 - f.k2 * f.k1_s;
        double base;
        if (timelike) {
            base = eps * (f.k2 * f.k2 - f.k1 * f.k1);
            if (std::fabs(base) < tol) {
                r.indeterminate = true;
                r.residual = std::numeric_limits<double>::quiet_NaN();
                return r;  // SingularDenominator regime: no verdict
            }
            if (base < 0.0) guarded = true;
        } else {
            base = f.k1 * f.k1 + f.k2 * f.k2;
        }
        r.series[i] = num / std::pow(std::fabs(base), 1.5);
    }
    r.guarded_radical = guarded;

    const auto mv = kernels::mean_var(r.series);
    r.residual = mv.stddev();
    r.verdict = r.residual < tol;

    if (r.verdict) {
        const double d = mv.mean;
        AxisSeries best_series;
        double best_constancy = std::numeric_limits<double>::infinity();
        for (double dsign : {1.0, -1.0}) {
            AxisSeries series;
            for (const FrameSample& f : frames) {
                const double base = timelike ? eps * (f.k2 * f.k2 - f.k1 * f.k1)
                                             : f.k1 * f.k1 + f.k2 * f.k2;
                const double w = std::sqrt(std::fabs(base));
                const LorentzVec3 raw = (f.k2 / w) * f.q - (dsign * d) * f.h -
                                        (eps * f.k1 / w) * f.a;
                const double msq = lorentz_dot(raw, raw);
                if (std::fabs(msq) < 1e-9) {
                    series.degenerate = true;
                    break;
                }
                series.axes.push_back((1.0 / std::sqrt(std::fabs(msq))) * raw);
            }
            if (series.degenerate) {
                best_series = series;
                break;
            }
            double worst = 0.0;
            for (const LorentzVec3& u : series.axes)
                worst = std::max(worst, euclidean_norm(u - series.axes.front()));
            if (worst < best_constancy) {
                best_constancy = worst;
                best_series = series;
            }
        }
        fill_axis_fields(r, best_series, frames);
        if (r.axis_valid) {
            std::vector<double> inner(n);
            for (std::size_t i = 0; i < n; ++i)
                inner[i] = lorentz_dot(frames[i].h, r.axis);
            r.inner_stddev = kernels::mean_var(inner).stddev();
        }
    }
    return r;
}

DetectorResult a_slant_test(std::span<const FrameSample> frames, double tol) {
    DetectorResult r = q_slant_ratio_test(frames, tol);
    if (r.axis_valid) {
        const std::size_t n = frames.size();
        std::vector<double> inner(n);
        for (std::size_t i = 0; i < n; ++i)
            inner[i] = lorentz_dot(frames[i].a, r.axis);
        r.inner_stddev = kernels::mean_var(inner).stddev();
    }
    return r;
}

namespace {

CurveSpec striction_as_unit_curve(const RuledSurfaceSpec& s, const Tolerances& tol) {
    try {
        return arclength_reparam(striction_curve(s, tol), 1e-10);
    } catch (const Error& e) {
        if (e.code() == Errc::NullVelocity)
            throw Error(Errc::NullStriction, e.what());
        throw;
    }
}

}  // namespace

EquivReport developable_helix_equiv(const RuledSurfaceSpec& s, double tol,
                                    const AnalysisGrid& grid) {
    const DevelopabilityReport dev = developability(s, std::max(tol, 1e-8));
    if (!dev.developable)
        throw Error(Errc::NotDevelopable,
                    "max |drall| = " + std::to_string(dev.max_abs_drall));
    if (dev.cylindrical)
        throw Error(Errc::CylindricalRuling, "cylindrical surface has no frame");

    EquivReport rep;
    rep.developable_path = true;

    const std::vector<FrameSample> frames = invariants(s, grid);
    // re-analyzed invariants ride on sampled carriers; their derivative
    // series run at the sampled-pipeline tolerance
    rep.surface = q_slant_ratio_test(frames, std::max(tol, 1e-3));

    CurveSpec unit = striction_as_unit_curve(s, grid.tol);
    // premise: the striction tangent shares the ruling's causal character
    const LorentzVec3 t0 = unit.jet(0.5 * unit.u_max()).deriv(1);
    const bool t_timelike = lorentz_dot(t0, t0) < 0.0;
    const bool q_timelike = frames[frames.size() / 2].eps_q < 0.0;
    if (t_timelike != q_timelike)
        throw Error(Errc::HypothesisViolated,
                    "striction tangent and ruling have different causal characters");

    rep.curve = general_helix_test(unit, static_cast<int>(frames.size()), tol);
    rep.agree = rep.surface.verdict == rep.curve.fit.verdict;
    return rep;
}

EquivReport geodesic_slanthelix_equiv(const RuledSurfaceSpec& s, double tol,
                                      const AnalysisGrid& grid) {
    EquivReport rep;
    const std::vector<FrameSample> frames = invariants(s, grid);
    CurveSpec unit = striction_as_unit_curve(s, grid.tol);

    // geodesic premise: the curve principal normal aligns with +-h,
    // both evaluated at the frame sample's own arc length
    double worst_align = 0.0;
    bool geodesic = true;
    const int probes = 16;
    for (int i = 0; i <= probes && geodesic; ++i) {
        const std::size_t idx = std::min(
            frames.size() - 1,
            static_cast<std::size_t>(i) * (frames.size() - 1) / probes);
        const FrameSample& fs = frames[idx];
        try {
            const CurveFrenetSample fr =
                curve_frenet(unit, std::min(fs.s, unit.u_max()));
            worst_align = std::max(worst_align,
                                   std::min(euclidean_norm(fr.n - fs.h),
                                            euclidean_norm(fr.n + fs.h)));
            if (worst_align > 1e-5) geodesic = false;
        } catch (const Error&) {
            geodesic = false;
        }
    }
    rep.hypothesis_residual = worst_align;
    rep.geodesic_path = geodesic;

    if (!geodesic) {
        const DevelopabilityReport dev = developability(s, std::max(tol, 1e-8));
        if (!dev.developable || dev.cylindrical)
            throw Error(Errc::HypothesisViolated,
                        "striction line is not a geodesic (alignment residual " +
                            std::to_string(worst_align) +
                            ") and the surface is not developable");
        rep.developable_path = true;
    }

    rep.surface = h_slant_test(frames, std::max(tol, 1e-3));
    rep.curve = slant_helix_test(unit, static_cast<int>(frames.size()), tol);
    rep.agree = rep.surface.verdict == rep.curve.fit.verdict;
    return rep;
}

}  // namespace slantsurf
