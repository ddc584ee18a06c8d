#include "slantsurf/offsets.hpp"

#include <algorithm>
#include <cmath>

#include "slantsurf/error.hpp"

namespace slantsurf {

namespace {

FrameCoeffs add(const FrameCoeffs& x, const FrameCoeffs& y) {
    return {x.q + y.q, x.h + y.h, x.a + y.a};
}
FrameCoeffs sub(const FrameCoeffs& x, const FrameCoeffs& y) {
    return {x.q - y.q, x.h - y.h, x.a - y.a};
}
FrameCoeffs scale(const Jet& s, const FrameCoeffs& x) {
    return {s * x.q, s * x.h, s * x.a};
}
FrameCoeffs negate(const FrameCoeffs& x) {
    return {-x.q, -x.h, -x.a};
}

// values of d/ds2 and d2/ds2^2 of a scalar jet known in the source
// parameter, via d/ds2 = (1/sigma) d/ds
void reparam_derivs(const Jet& f, const Jet& sigma, double& d1, double& d2) {
    const Jet g1 = f.differentiate() / sigma;
    d1 = g1.value();
    d2 = (g1.differentiate() / sigma).value();
}

double det3(const LorentzVec3& a, const LorentzVec3& b, const LorentzVec3& c) {
    return a.x1 * (b.x2 * c.x3 - b.x3 * c.x2) - a.x2 * (b.x1 * c.x3 - b.x3 * c.x1) +
           a.x3 * (b.x1 * c.x2 - b.x2 * c.x1);
}

}  // namespace

namespace detail {

OffsetSurface construct_offset(const SynthesizedSurface& s,
                               const std::function<FrameCoeffs(std::size_t)>& ruling,
                               double distance, OffsetKind expected, double tol,
                               int samples) {
    const FrameSeries& series = s.series;
    const std::size_t dense = series.s.size();
    if (dense < 2 || s.striction.size() != dense)
        throw Error(Errc::InvalidArgument, "offset source has no striction curve");
    const ClassSigns cs = class_signs(s.profile.cls);

    samples = std::clamp(samples, 8, static_cast<int>(dense));
    std::vector<std::size_t> idx(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i)
        idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(
            std::llround(static_cast<double>(i) * static_cast<double>(dense - 1) /
                         (samples - 1)));

    OffsetSurface out;
    out.frames.resize(idx.size());
    out.source_s.resize(idx.size());
    std::vector<double> sigma_v(idx.size()), sigma_d(idx.size());

    double worst_identity = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const std::size_t j = idx[i];
        const double sv = series.s[j];
        const Jet k1 = s.profile.k1(Jet::variable(sv));
        const Jet k2 = s.profile.k2(Jet::variable(sv));

        const FrameCoeffs q2 = ruling(j);
        const FrameCoeffs q2p = frame_derive(q2, k1, k2, cs);
        const Jet q2p2 = frame_dot(q2p, q2p, cs);
        const double q2p_mag = q2p.q.value() * q2p.q.value() +
                               q2p.h.value() * q2p.h.value() +
                               q2p.a.value() * q2p.a.value();
        if (q2p_mag < 1e-12)
            throw Error(Errc::CylindricalRuling,
                        "offset ruling derivative vanishes at s=" + std::to_string(sv));
        if (std::fabs(q2p2.value()) < 1e-9 * q2p_mag)
            throw Error(Errc::NearNull,
                        "offset central normal direction near null at s=" +
                            std::to_string(sv));

        // mate base curve c2 = c1 + R h1; its striction correction
        FrameCoeffs c2p{Jet::constant(s.coeffs.alpha), Jet::constant(0.0),
                        Jet::constant(s.coeffs.gamma)};
        const FrameCoeffs h1{Jet::constant(0.0), Jet::constant(1.0), Jet::constant(0.0)};
        c2p = add(c2p, scale(Jet::constant(distance), frame_derive(h1, k1, k2, cs)));

        const Jet lambda = frame_dot(q2p, c2p, cs) / q2p2;
        FrameCoeffs c2sp = sub(c2p, add(scale(lambda.differentiate(), q2),
                                        scale(lambda, q2p)));

        Jet sig2 = frame_dot(c2sp, c2sp, cs);
        if (std::fabs(sig2.value()) < 1e-10)
            throw Error(Errc::NullStriction,
                        "offset striction velocity near null at s=" + std::to_string(sv));
        if (sig2.value() < 0.0) sig2 = -sig2;
        const Jet sigma = sqrt(sig2);

        // mate frame in source-frame coordinates
        const FrameCoeffs a2raw = frame_cross(q2p, q2, cs);
        Jet n2 = frame_dot(a2raw, a2raw, cs);
        if (std::fabs(n2.value()) < 1e-9 * q2p_mag)
            throw Error(Errc::NearNull,
                        "offset central tangent near null at s=" + std::to_string(sv));
        const double eps_a2 = n2.value() < 0.0 ? -1.0 : 1.0;
        if (n2.value() < 0.0) n2 = -n2;
        Jet inv = Jet(1.0) / sqrt(n2);
        FrameCoeffs a2 = scale(inv, a2raw);

        const double eps_q2 = frame_dot(q2, q2, cs).value() < 0.0 ? -1.0 : 1.0;
        const double eps_h2 = -eps_q2 * eps_a2;
        const bool timelike2 = eps_h2 > 0.0;

        FrameCoeffs h2 = timelike2 ? frame_cross(q2, a2, cs) : frame_cross(a2, q2, cs);
        Jet k1_src = eps_h2 * frame_dot(q2p, h2, cs);
        if (k1_src.value() < 0.0) {
            h2 = negate(h2);
            a2 = negate(a2);
            k1_src = -k1_src;
        }

        const FrameCoeffs a2p = frame_derive(a2, k1, k2, cs);
        Jet k2_src = timelike2 ? eps_q2 * frame_dot(a2p, h2, cs)
                               : -1.0 * frame_dot(a2p, h2, cs);

        const Jet k1_mate = k1_src / sigma;
        const Jet k2_mate = k2_src / sigma;

        // identity verification against the defining frame relation
        const FrameSample at{sv,
                             s.striction[j],
                             series.frames[j].q,
                             series.frames[j].h,
                             series.frames[j].a,
                             cs.eps_q,
                             cs.eps_h,
                             0, 0, 0, 0, 0, 0, 0, 0, false};
        const LorentzVec3 h2c = frame_to_coords(h2, at);
        const LorentzVec3 ref = expected == OffsetKind::Bertrand ? at.h : at.a;
        worst_identity = std::max(worst_identity,
                                  std::min(euclidean_norm(h2c - ref),
                                           euclidean_norm(h2c + ref)));

        FrameSample& fs = out.frames[i];
        fs.q = frame_to_coords(q2, at);
        fs.h = h2c;
        fs.a = frame_to_coords(a2, at);
        fs.c = at.c + distance * at.h - lambda.value() * fs.q;
        fs.eps_q = eps_q2;
        fs.eps_h = eps_h2;
        fs.k1 = k1_mate.value();
        fs.k2 = k2_mate.value();
        reparam_derivs(k1_mate, sigma, fs.k1_s, fs.k1_ss);
        reparam_derivs(k2_mate, sigma, fs.k2_s, fs.k2_ss);

        const LorentzVec3 c2sp_c = frame_to_coords(
            {Jet(c2sp.q.value()), Jet(c2sp.h.value()), Jet(c2sp.a.value())}, at);
        const LorentzVec3 q2p_c = frame_to_coords(
            {Jet(q2p.q.value()), Jet(q2p.h.value()), Jet(q2p.a.value())}, at);
        const double denom = lorentz_dot(q2p_c, q2p_c);
        fs.drall = det3(c2sp_c, fs.q, q2p_c) / denom;
        fs.frame_residual = gram_residual(fs.q, fs.h, fs.a, fs.eps_q, fs.eps_h);
        fs.flagged = fs.frame_residual > 1e-8;

        out.source_s[i] = sv;
        sigma_v[i] = sigma.value();
        sigma_d[i] = sigma.deriv(1);
    }

    if (worst_identity > tol)
        throw Error(Errc::NormalMismatch,
                    "offset frame identity residual " + std::to_string(worst_identity) +
                        " exceeds tolerance " + std::to_string(tol));
    out.identity_residual = worst_identity;

    // mate arc length by corrected trapezoid of sigma
    double s2 = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i > 0) {
            const double dl = out.source_s[i] - out.source_s[i - 1];
            s2 += 0.5 * dl * (sigma_v[i - 1] + sigma_v[i]) +
                  dl * dl / 12.0 * (sigma_d[i - 1] - sigma_d[i]);
        }
        out.frames[i].s = s2;
    }
    out.cls = class_from_signs(out.frames.front().eps_q, out.frames.front().eps_h);
    return out;
}

}  // namespace detail

OffsetSurface bertrand_offset(const SynthesizedSurface& s, const OffsetSpec& spec,
                              double tol, int samples) {
    if (spec.kind != OffsetKind::Bertrand)
        throw Error(Errc::InvalidArgument, "spec.kind must be Bertrand");
    const ClassSigns cs = class_signs(s.profile.cls);
    const bool definite_plane = cs.eps_q > 0.0 && cs.eps_a > 0.0;
    const double x = definite_plane ? std::cos(spec.angle) : std::cosh(spec.angle);
    const double z = definite_plane ? std::sin(spec.angle) : std::sinh(spec.angle);
    auto ruling = [x, z](std::size_t) {
        return FrameCoeffs{Jet::constant(x), Jet::constant(0.0), Jet::constant(z)};
    };
    return detail::construct_offset(s, ruling, spec.distance, OffsetKind::Bertrand, tol,
                                    samples);
}

OffsetSurface mannheim_offset(const SynthesizedSurface& s, const OffsetSpec& spec,
                              double tol, int samples) {
    if (spec.kind != OffsetKind::Mannheim)
        throw Error(Errc::InvalidArgument, "spec.kind must be Mannheim");
    const ClassSigns cs = class_signs(s.profile.cls);
    const FrameSeries& series = s.series;

    // accumulated rotation angle Phi(s) = integral k1 + angle over the dense
    // nodes (corrected trapezoid with k1')
    std::vector<double> phi(series.s.size());
    phi[0] = spec.angle;
    for (std::size_t j = 0; j + 1 < series.s.size(); ++j) {
        const double dl = series.s[j + 1] - series.s[j];
        const Jet k1a = s.profile.k1(Jet::variable(series.s[j]));
        const Jet k1b = s.profile.k1(Jet::variable(series.s[j + 1]));
        phi[j + 1] = phi[j] + 0.5 * dl * (k1a.value() + k1b.value()) +
                     dl * dl / 12.0 * (k1a.deriv(1) - k1b.deriv(1));
    }

    const bool circular = cs.timelike_surface && cs.eps_q > 0.0;  // {q,h} definite
    auto ruling = [&, circular](std::size_t j) {
        const Jet k1 = s.profile.k1(Jet::variable(series.s[j]));
        Jet phij;
        phij.c[0] = phi[j];
        for (int m = 0; m + 1 <= kJetOrder; ++m)
            phij.c[static_cast<std::size_t>(m) + 1] = k1.c[static_cast<std::size_t>(m)] /
                                                      static_cast<double>(m + 1);
        if (circular)
            return FrameCoeffs{cos(phij), -sin(phij), Jet::constant(0.0)};
        return FrameCoeffs{cosh(phij), -sinh(phij), Jet::constant(0.0)};
    };
    return detail::construct_offset(s, ruling, spec.distance, OffsetKind::Mannheim, tol,
                                    samples);
}

}  // namespace slantsurf
