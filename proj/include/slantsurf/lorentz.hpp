#pragma once

#include <algorithm>
#include <cmath>

#include "slantsurf/error.hpp"

namespace slantsurf {

// 3-vector in Minkowski 3-space with metric <v,v> = -x1^2 + x2^2 + x3^2.
// The first component carries the negative sign of the metric.
struct LorentzVec3 {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    friend LorentzVec3 operator+(const LorentzVec3& a, const LorentzVec3& b) {
        return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
    }
    friend LorentzVec3 operator-(const LorentzVec3& a, const LorentzVec3& b) {
        return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
    }
    friend LorentzVec3 operator*(double s, const LorentzVec3& v) {
        return {s * v.x1, s * v.x2, s * v.x3};
    }
    friend LorentzVec3 operator*(const LorentzVec3& v, double s) { return s * v; }
    friend LorentzVec3 operator-(const LorentzVec3& v) { return {-v.x1, -v.x2, -v.x3}; }
    LorentzVec3& operator+=(const LorentzVec3& o) {
        x1 += o.x1; x2 += o.x2; x3 += o.x3;
        return *this;
    }
};

inline double lorentz_dot(const LorentzVec3& x, const LorentzVec3& y) {
    return -x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3;
}

// Vector product compatible with the metric above: the result is
// Lorentz-orthogonal to both arguments, and on an admissible surface frame
// {q,h,a} it reproduces
//   timelike surface:  q x h =  eps a,  h x a = -eps q,  a x q = -h
//   spacelike surface: q x h = -a,      h x a = -q,      a x q =  h
// which is the convention the frame systems in this library are built on.
inline LorentzVec3 lorentz_cross(const LorentzVec3& x, const LorentzVec3& y) {
    return {x.x2 * y.x3 - x.x3 * y.x2,
            x.x1 * y.x3 - x.x3 * y.x1,
            x.x2 * y.x1 - x.x1 * y.x2};
}

// Euclidean norm of the components; used for residuals and degeneracy
// thresholds where an indefinite norm would be useless.
inline double euclidean_norm(const LorentzVec3& v) {
    return std::sqrt(v.x1 * v.x1 + v.x2 * v.x2 + v.x3 * v.x3);
}

inline double lorentz_norm(const LorentzVec3& v) {
    return std::sqrt(std::fabs(lorentz_dot(v, v)));
}

enum class Causal { Spacelike, Timelike, Null };

inline const char* causal_name(Causal c) noexcept {
    switch (c) {
        case Causal::Spacelike: return "spacelike";
        case Causal::Timelike:  return "timelike";
        case Causal::Null:      return "null";
    }
    return "?";
}

struct CausalCharacter {
    Causal tag = Causal::Null;
    double margin = 0.0;     // the value <v,v> that decided the tag
    bool degenerate = false; // v == 0 (no causal character at all)
};

constexpr double kCausalTol = 1e-9;

inline CausalCharacter causal_character(const LorentzVec3& v, double tol = kCausalTol) {
    const double m = lorentz_dot(v, v);
    if (euclidean_norm(v) == 0.0) return {Causal::Null, 0.0, true};
    if (m > tol) return {Causal::Spacelike, m, false};
    if (m < -tol) return {Causal::Timelike, m, false};
    return {Causal::Null, m, false};
}

// v / sqrt(|<v,v>|). Throws NearNull when the metric square is below tol;
// that is the signal that a frame vector is degenerating toward the light
// cone and the non-null analysis no longer applies.
inline LorentzVec3 normalize(const LorentzVec3& v, double tol = kCausalTol) {
    const double m = lorentz_dot(v, v);
    if (std::fabs(m) <= tol)
        throw Error(Errc::NearNull, "cannot normalize a (near-)null vector, <v,v>=" +
                                        std::to_string(m));
    const double inv = 1.0 / std::sqrt(std::fabs(m));
    return inv * v;
}

// Worst deviation of {q,h,a} from a Lorentz-orthonormal triple with the
// given signs. The third sign is forced: eps_a = -eps_q * eps_h.
inline double gram_residual(const LorentzVec3& q, const LorentzVec3& h,
                            const LorentzVec3& a, double eps_q, double eps_h) {
    const double eps_a = -eps_q * eps_h;
    double r = std::fabs(lorentz_dot(q, q) - eps_q);
    r = std::max(r, std::fabs(lorentz_dot(h, h) - eps_h));
    r = std::max(r, std::fabs(lorentz_dot(a, a) - eps_a));
    r = std::max(r, std::fabs(lorentz_dot(q, h)));
    r = std::max(r, std::fabs(lorentz_dot(q, a)));
    r = std::max(r, std::fabs(lorentz_dot(h, a)));
    return r;
}

}  // namespace slantsurf
