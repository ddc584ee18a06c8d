#include "slantsurf/ruled.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slantsurf/error.hpp"

namespace slantsurf {

const char* surface_class_name(SurfaceClassTag t) {
    switch (t) {
        case SurfaceClassTag::NMinus:     return "N_minus";
        case SurfaceClassTag::NPlus:      return "N_plus";
        case SurfaceClassTag::NTimes:     return "N_times";
        case SurfaceClassTag::Degenerate: return "Degenerate";
    }
    return "?";
}

RuledSurfaceSpec transform_surface(const RuledSurfaceSpec& s, const LorentzTransform& t) {
    LorentzTransform linear = t;
    linear.translation = {};
    return {transform_curve(s.base, t), transform_curve(s.director, linear)};
}

namespace {

double det3(const LorentzVec3& a, const LorentzVec3& b, const LorentzVec3& c) {
    return a.x1 * (b.x2 * c.x3 - b.x3 * c.x2) - a.x2 * (b.x1 * c.x3 - b.x3 * c.x1) +
           a.x3 * (b.x1 * c.x2 - b.x2 * c.x1);
}

JetVec3 unit_director_jet(const RuledSurfaceSpec& s, double u, double causal_tol) {
    const JetVec3 raw = s.director.jet(u);
    Jet m = lorentz_dot(raw, raw);
    if (std::fabs(m.value()) <= causal_tol)
        throw Error(Errc::NearNull, "director is (near-)null at u=" + std::to_string(u));
    // an already-unit director (sampled carriers wiggle at machine level
    // between nodes) must not be renormalized: differentiating the noisy
    // normalization factor would inject large high-order derivatives
    if (std::fabs(std::fabs(m.value()) - 1.0) < 1e-10) return raw;
    return lorentz_normalize(raw, causal_tol);
}

struct RawFrame {
    JetVec3 q, h, a;   // jets in the curve parameter
    double eps_q, eps_h, eps_a;
    bool timelike_surface;
};

// Frame from the unit director jet alone (base curve not involved).
// The per-class product relations fix h up to a joint (a,h) flip; the flip
// is chosen so that <dq, h> eps_h >= 0.
RawFrame frame_from_director(const JetVec3& q, double u, const Tolerances& tol) {
    const JetVec3 dq = q.differentiate();
    const double dq2 = lorentz_dot(dq.value(), dq.value());
    if (euclidean_norm(dq.value()) * euclidean_norm(dq.value()) < tol.cylindrical)
        throw Error(Errc::CylindricalRuling,
                    "director derivative vanishes at u=" + std::to_string(u));
    if (std::fabs(dq2) <= tol.causal * euclidean_norm(dq.value()) * euclidean_norm(dq.value()))
        throw Error(Errc::NearNull, "central normal direction is near null at u=" +
                                        std::to_string(u));

    RawFrame f;
    f.q = q;
    f.a = lorentz_normalize(lorentz_cross(dq, q), tol.causal);
    f.eps_q = lorentz_dot(q.value(), q.value()) < 0.0 ? -1.0 : 1.0;
    f.eps_a = lorentz_dot(f.a.value(), f.a.value()) < 0.0 ? -1.0 : 1.0;
    f.eps_h = -f.eps_q * f.eps_a;
    f.timelike_surface = f.eps_h > 0.0;

    f.h = f.timelike_surface ? lorentz_cross(f.q, f.a) : lorentz_cross(f.a, f.q);
    if (f.eps_h * lorentz_dot(dq.value(), f.h.value()) < 0.0) {
        f.h = -1.0 * f.h;
        f.a = -1.0 * f.a;
    }
    return f;
}

}  // namespace

double distribution_parameter(const RuledSurfaceSpec& s, double u, const Tolerances& tol) {
    const JetVec3 q = unit_director_jet(s, u, tol.causal);
    const LorentzVec3 dq = q.deriv(1);
    const double denom = lorentz_dot(dq, dq);
    if (euclidean_norm(dq) * euclidean_norm(dq) < tol.cylindrical ||
        std::fabs(denom) < tol.cylindrical)
        throw Error(Errc::CylindricalRuling,
                    "<dq,dq> below tolerance at u=" + std::to_string(u));
    const LorentzVec3 dk = s.base.jet(u).deriv(1);
    return det3(dk, q.value(), dq) / denom;
}

LorentzVec3 striction_point(const RuledSurfaceSpec& s, double u, const Tolerances& tol) {
    const JetVec3 q = unit_director_jet(s, u, tol.causal);
    const LorentzVec3 dq = q.deriv(1);
    const double denom = lorentz_dot(dq, dq);
    if (euclidean_norm(dq) * euclidean_norm(dq) < tol.cylindrical ||
        std::fabs(denom) < tol.cylindrical)
        throw Error(Errc::CylindricalRuling,
                    "<dq,dq> below tolerance at u=" + std::to_string(u));
    const JetVec3 kj = s.base.jet(u);
    const double num = lorentz_dot(dq, kj.deriv(1));
    if (num == 0.0) return kj.value();  // base curve is the striction curve
    return kj.value() - (num / denom) * q.value();
}

namespace {

class StrictionCurve final : public Curve {
public:
    StrictionCurve(RuledSurfaceSpec s, Tolerances tol) : s_(std::move(s)), tol_(tol) {}

    JetVec3 jet(double u) const override {
        const JetVec3 q = unit_director_jet(s_, u, tol_.causal);
        const JetVec3 dq = q.differentiate();
        const JetVec3 kj = s_.base.jet(u);
        const JetVec3 dk = kj.differentiate();
        const Jet num = lorentz_dot(dq, dk);
        // base curves that already are the striction line leave a pure-noise
        // numerator whose jet derivatives would blow up; treat it as zero
        // (this also rides over isolated stationary rulings)
        const double scale = euclidean_norm(dq.value()) * euclidean_norm(dk.value());
        if (std::fabs(num.value()) < 1e-8 * std::max(1.0, scale)) return kj;
        const Jet denom = lorentz_dot(dq, dq);
        if (std::fabs(denom.value()) < tol_.cylindrical)
            throw Error(Errc::CylindricalRuling,
                        "<dq,dq> below tolerance at u=" + std::to_string(u));
        return kj - (num / denom) * q;
    }
    double u_min() const override { return s_.u_min(); }
    double u_max() const override { return s_.u_max(); }
    int max_order() const override { return 3; }  // one order spent on dq

private:
    RuledSurfaceSpec s_;
    Tolerances tol_;
};

}  // namespace

CurveSpec striction_curve(const RuledSurfaceSpec& s, const Tolerances& tol) {
    return {std::make_shared<StrictionCurve>(s, tol)};
}

FrameSample frenet_frame(const RuledSurfaceSpec& s, double u, const Tolerances& tol) {
    const JetVec3 q = unit_director_jet(s, u, tol.causal);
    const RawFrame f = frame_from_director(q, u, tol);

    FrameSample out;
    out.s = u;  // raw parameter here; invariants() reports arc length
    out.c = striction_point(s, u, tol);
    out.q = f.q.value();
    out.h = f.h.value();
    out.a = f.a.value();
    out.eps_q = f.eps_q;
    out.eps_h = f.eps_h;
    out.drall = distribution_parameter(s, u, tol);
    return out;
}

SurfaceClass classify(const RuledSurfaceSpec& s, int grid, const Tolerances& tol) {
    bool have = false;
    double eq = 0.0, eh = 0.0;
    for (int i = 0; i <= grid; ++i) {
        const double u = s.u_min() + (s.u_max() - s.u_min()) * i / grid;
        RawFrame f;
        try {
            f = frame_from_director(unit_director_jet(s, u, tol.causal), u, tol);
        } catch (const Error& e) {
            return {SurfaceClassTag::Degenerate,
                    std::string(e.what()) + " (u=" + std::to_string(u) + ")"};
        }
        if (!have) {
            eq = f.eps_q;
            eh = f.eps_h;
            have = true;
        } else if (eq != f.eps_q || eh != f.eps_h) {
            return {SurfaceClassTag::Degenerate,
                    "causal signature changes across the grid near u=" + std::to_string(u)};
        }
    }
    if (!have) return {SurfaceClassTag::Degenerate, "empty grid"};
    if (eh > 0.0)
        return {eq < 0.0 ? SurfaceClassTag::NMinus : SurfaceClassTag::NPlus, {}};
    return {SurfaceClassTag::NTimes, {}};
}

DevelopabilityReport developability(const RuledSurfaceSpec& s, double tol, int grid) {
    DevelopabilityReport rep;
    int cylindrical = 0, total = 0;
    double max_drall = 0.0;
    Tolerances t;
    for (int i = 0; i <= grid; ++i) {
        const double u = s.u_min() + (s.u_max() - s.u_min()) * i / grid;
        ++total;
        try {
            max_drall = std::max(max_drall, std::fabs(distribution_parameter(s, u, t)));
        } catch (const Error& e) {
            if (e.code() == Errc::CylindricalRuling) {
                ++cylindrical;
                continue;
            }
            throw;
        }
    }
    rep.max_abs_drall = max_drall;
    rep.cylindrical = cylindrical == total;
    rep.developable = rep.cylindrical || max_drall < tol;

    if (!rep.cylindrical && rep.developable) {
        // cross-check: the striction tangent should be parallel to the ruling
        // when it is non-null and shares the ruling's causal character
        try {
            CurveSpec c = striction_curve(s, t);
            double worst = 0.0;
            bool applicable = true;
            for (int i = 0; i <= 16; ++i) {
                const double u = s.u_min() + (s.u_max() - s.u_min()) * i / 16;
                const LorentzVec3 cp = c.jet(u).deriv(1);
                const LorentzVec3 q = unit_director_jet(s, u, t.causal).value();
                const double m = lorentz_dot(cp, cp);
                if (std::fabs(m) < 1e-12 ||
                    (m < 0.0) != (lorentz_dot(q, q) < 0.0)) {
                    applicable = false;
                    break;
                }
                const LorentzVec3 tvec = (1.0 / std::sqrt(std::fabs(m))) * cp;
                worst = std::max(worst, std::min(euclidean_norm(tvec - q),
                                                 euclidean_norm(tvec + q)));
            }
            rep.tangent_check_applicable = applicable;
            if (applicable) {
                rep.tangent_residual = worst;
                rep.tangent_matches_ruling = worst < 1e-5;
            }
        } catch (const Error&) {
            rep.tangent_check_applicable = false;
        }
    }
    return rep;
}

std::vector<FrameSample> invariants(const RuledSurfaceSpec& s, const AnalysisGrid& grid) {
    const Tolerances& tol = grid.tol;
    CurveSpec striction = striction_curve(s, tol);

    // cumulative arc length of the striction curve over a dense grid
    const int cells = 2048;
    std::vector<double> us(cells + 1), ss(cells + 1);
    const double lo = striction.u_min(), hi = striction.u_max();
    const double h = (hi - lo) / cells;
    auto speed = [&](double u) {
        const LorentzVec3 d = striction.jet(u).deriv(1);
        return std::sqrt(std::fabs(lorentz_dot(d, d)));
    };
    ss[0] = 0.0;
    for (int i = 0; i <= cells; ++i) us[i] = lo + h * i;
    for (int i = 0; i < cells; ++i) {
        const double s0 = speed(us[i]), sm = speed(us[i] + 0.5 * h), s1 = speed(us[i + 1]);
        if (s0 < 1e-10 || sm < 1e-10 || s1 < 1e-10)
            throw Error(Errc::NullStriction, "striction curve speed below tolerance near u=" +
                                                 std::to_string(us[i]));
        ss[i + 1] = ss[i] + h / 6.0 * (s0 + 4.0 * sm + s1);
    }
    const double length = ss.back();
    auto u_of_s = [&](double sv) {
        sv = std::clamp(sv, 0.0, ss.back());
        auto it = std::upper_bound(ss.begin(), ss.end(), sv);
        std::size_t i = static_cast<std::size_t>(it - ss.begin());
        if (i > 0) --i;
        i = std::min(i, ss.size() - 2);
        double u = us[i] + (us[i + 1] - us[i]) * (sv - ss[i]) /
                               std::max(ss[i + 1] - ss[i], 1e-300);
        for (int k = 0; k < 40; ++k) {
            // Newton on the cumulative arc length, local Simpson correction
            const double mid = 0.5 * (us[i] + u);
            const double si = ss[i] + (u - us[i]) / 6.0 *
                                          (speed(us[i]) + 4.0 * speed(mid) + speed(u));
            const double du = (si - sv) / std::max(speed(u), 1e-300);
            u -= du;
            u = std::clamp(u, us[i], us[i + 1]);
            if (std::fabs(du) < 1e-14 * std::max(1.0, std::fabs(u))) break;
        }
        return u;
    };

    auto sample_at = [&](double sv) {
        FrameSample fs;
        const double u = u_of_s(sv);

        const JetVec3 qu = unit_director_jet(s, u, tol.causal);       // order 4 in u
        const RawFrame rf = frame_from_director(qu, u, tol);          // a,h order 3 in u

        // inverse-function jet u(s) to order 3 from the striction speed
        const JetVec3 cj = striction.jet(u);
        const JetVec3 cdu = cj.differentiate();
        Jet sp2 = lorentz_dot(cdu, cdu);
        const double eps_c = sp2.value() < 0.0 ? -1.0 : 1.0;
        if (sp2.value() < 0.0) sp2 = -sp2;
        if (sp2.value() < 1e-14)
            throw Error(Errc::NullStriction,
                        "striction velocity near null at u=" + std::to_string(u));
        const Jet sigma = sqrt(sp2);
        const double g = sigma.value(), g1 = sigma.deriv(1), g2 = sigma.deriv(2);
        Jet uj;
        uj.c[0] = u;
        uj.c[1] = 1.0 / g;
        uj.c[2] = -g1 / (g * g * g) / 2.0;
        uj.c[3] = (3.0 * g1 * g1 - g * g2) / std::pow(g, 5) / 6.0;
        uj.c[4] = 0.0;
        (void)eps_c;

        // s-domain jets of the frame
        const JetVec3 qs = jet_reparam(rf.q, uj);
        const JetVec3 hs = jet_reparam(rf.h, uj);
        const JetVec3 as = jet_reparam(rf.a, uj);
        const JetVec3 dqs = qs.differentiate();
        const JetVec3 dhs = hs.differentiate();
        const JetVec3 das = as.differentiate();

        const Jet k1j = rf.eps_h * lorentz_dot(dqs, hs);
        Jet k2j;
        if (rf.timelike_surface)
            k2j = rf.eps_q * lorentz_dot(das, hs);
        else
            k2j = -1.0 * lorentz_dot(das, hs);

        fs.s = sv;
        fs.c = cj.value();
        fs.q = qs.value();
        fs.h = hs.value();
        fs.a = as.value();
        fs.eps_q = rf.eps_q;
        fs.eps_h = rf.eps_h;
        fs.k1 = k1j.value();
        fs.k1_s = k1j.deriv(1);
        fs.k1_ss = k1j.deriv(2);
        fs.k2 = k2j.value();
        fs.k2_s = k2j.deriv(1);
        fs.k2_ss = k2j.deriv(2);
        fs.drall = distribution_parameter(s, u, tol);

        // frame-system reproduction residual
        const ClassSigns cs = fs.signs();
        LorentzVec3 r1 = dqs.value() - fs.k1 * fs.h;
        LorentzVec3 r2, r3;
        if (cs.timelike_surface) {
            r2 = dhs.value() - (-cs.eps_q * fs.k1 * fs.q + fs.k2 * fs.a);
            r3 = das.value() - cs.eps_q * fs.k2 * fs.h;
        } else {
            r2 = dhs.value() - (fs.k1 * fs.q + fs.k2 * fs.a);
            r3 = das.value() - fs.k2 * fs.h;
        }
        fs.frame_residual = std::max({euclidean_norm(r1), euclidean_norm(r2),
                                      euclidean_norm(r3)});
        fs.flagged = fs.frame_residual > tol.frame_residual ||
                     gram_residual(fs.q, fs.h, fs.a, fs.eps_q, fs.eps_h) > tol.gram ||
                     std::fabs(fs.k1) < 1e-9;  // stationary ruling: h undefined
        return fs;
    };

    std::vector<FrameSample> out;
    const int n = std::max(grid.samples, 2);
    out.reserve(static_cast<std::size_t>(n));
    int usable = 0;
    std::exception_ptr first_failure;
    for (int i = 0; i < n; ++i) {
        const double sv = length * i / (n - 1);
        try {
            out.push_back(sample_at(sv));
            if (!out.back().flagged) ++usable;
        } catch (const Error&) {
            // isolated degenerate station (ruling momentarily stationary or
            // crossing the light cone): keep a flagged placeholder so the
            // grid stays dense and the degeneracy is visible downstream
            if (!first_failure) first_failure = std::current_exception();
            FrameSample fs;
            fs.s = sv;
            fs.flagged = true;
            fs.frame_residual = std::numeric_limits<double>::infinity();
            out.push_back(fs);
        }
    }
    if (usable == 0 && first_failure) std::rethrow_exception(first_failure);

    if (grid.refine) {
        // one refinement pass: re-evaluate flagged spots at midpoints to
        // separate genuine degeneracies from isolated glitches
        std::vector<FrameSample> refined;
        refined.reserve(out.size() + 16);
        for (std::size_t i = 0; i < out.size(); ++i) {
            refined.push_back(out[i]);
            const bool finite_pair = i + 1 < out.size() &&
                                     std::isfinite(out[i].frame_residual) &&
                                     std::isfinite(out[i + 1].frame_residual);
            if (finite_pair && (out[i].flagged || out[i + 1].flagged)) {
                const double mid = 0.5 * (out[i].s + out[i + 1].s);
                try {
                    refined.push_back(sample_at(mid));
                } catch (const Error&) {
                    // midpoint itself degenerate: keep the flags as they are
                }
            }
        }
        out = std::move(refined);
    }
    return out;
}

}  // namespace slantsurf
