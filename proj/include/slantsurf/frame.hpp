#pragma once

#include <string>

#include "slantsurf/jet.hpp"
#include "slantsurf/lorentz.hpp"

namespace slantsurf {

// Surface classes by the causal characters of the ruling q and the central
// normal h. NMinus/NPlus are timelike surfaces (h spacelike), NTimes is the
// spacelike surface with timelike h.
enum class FrameClass { NMinus, NPlus, NTimes };

struct ClassSigns {
    double eps_q = 1.0;
    double eps_h = 1.0;
    double eps_a = -1.0;
    bool timelike_surface = true;  // selects which frame system applies
};

inline ClassSigns class_signs(FrameClass c) {
    switch (c) {
        case FrameClass::NMinus: return {-1.0, +1.0, +1.0, true};
        case FrameClass::NPlus:  return {+1.0, +1.0, -1.0, true};
        case FrameClass::NTimes: return {+1.0, -1.0, +1.0, false};
    }
    return {};
}

inline FrameClass class_from_signs(double eps_q, double eps_h) {
    if (eps_h > 0.0) return eps_q < 0.0 ? FrameClass::NMinus : FrameClass::NPlus;
    return FrameClass::NTimes;
}

inline const char* frame_class_name(FrameClass c) {
    switch (c) {
        case FrameClass::NMinus: return "N_minus";
        case FrameClass::NPlus:  return "N_plus";
        case FrameClass::NTimes: return "N_times";
    }
    return "?";
}

// One striction-line station: the frame, the signs, the invariants k1, k2
// with their first two arc-length derivatives (needed by the higher-order
// slant characterizations) and local diagnostics.
struct FrameSample {
    double s = 0.0;
    LorentzVec3 c, q, h, a;
    double eps_q = 1.0, eps_h = 1.0;
    double k1 = 0.0, k1_s = 0.0, k1_ss = 0.0;
    double k2 = 0.0, k2_s = 0.0, k2_ss = 0.0;
    double drall = 0.0;
    double frame_residual = 0.0;
    bool flagged = false;

    ClassSigns signs() const {
        return {eps_q, eps_h, -eps_q * eps_h, eps_h > 0.0};
    }
    FrameClass frame_class() const { return class_from_signs(eps_q, eps_h); }

    Jet k1_jet() const {
        Jet j(k1);
        j.c[1] = k1_s;
        j.c[2] = k1_ss / 2.0;
        return j;
    }
    Jet k2_jet() const {
        Jet j(k2);
        j.c[1] = k2_s;
        j.c[2] = k2_ss / 2.0;
        return j;
    }
};

// ---------------------------------------------------------------------------
// Vector fields expressed in frame coordinates (alpha, beta, gamma) along the
// striction line, each coefficient an s-jet. Derivatives apply the frame
// system, so every higher derivative of q, h, a is an exact polynomial in
// k1, k2 and their derivatives; nothing is finite-differenced.

struct FrameCoeffs {
    Jet q, h, a;
};

inline FrameCoeffs frame_derive(const FrameCoeffs& f, const Jet& k1, const Jet& k2,
                                const ClassSigns& cs) {
    if (cs.timelike_surface) {
        return {f.q.differentiate() - cs.eps_q * (k1 * f.h),
                f.h.differentiate() + k1 * f.q + cs.eps_q * (k2 * f.a),
                f.a.differentiate() + k2 * f.h};
    }
    return {f.q.differentiate() + k1 * f.h,
            f.h.differentiate() + k1 * f.q + k2 * f.a,
            f.a.differentiate() + k2 * f.h};
}

inline Jet frame_dot(const FrameCoeffs& x, const FrameCoeffs& y, const ClassSigns& cs) {
    return cs.eps_q * (x.q * y.q) + cs.eps_h * (x.h * y.h) + cs.eps_a * (x.a * y.a);
}

// Vector product in frame coordinates via the per-class structure constants
// of the adopted product.
inline FrameCoeffs frame_cross(const FrameCoeffs& x, const FrameCoeffs& y,
                               const ClassSigns& cs) {
    if (cs.timelike_surface) {
        const double e = cs.eps_q;
        return {e * (x.a * y.h - x.h * y.a),
                x.q * y.a - x.a * y.q,
                e * (x.q * y.h - x.h * y.q)};
    }
    return {x.a * y.h - x.h * y.a,
            x.a * y.q - x.q * y.a,
            x.h * y.q - x.q * y.h};
}

// Determinant of the value parts, rows x, y, z, in frame coordinates.
inline double frame_det(const FrameCoeffs& x, const FrameCoeffs& y, const FrameCoeffs& z) {
    const double a1 = x.q.value(), a2 = x.h.value(), a3 = x.a.value();
    const double b1 = y.q.value(), b2 = y.h.value(), b3 = y.a.value();
    const double c1 = z.q.value(), c2 = z.h.value(), c3 = z.a.value();
    return a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1);
}

inline LorentzVec3 frame_to_coords(const FrameCoeffs& f, const FrameSample& at) {
    return f.q.value() * at.q + f.h.value() * at.h + f.a.value() * at.a;
}

}  // namespace slantsurf
