#pragma once

// Truncated Taylor arithmetic to order 4 in a single variable. This is the
// automatic-differentiation core: curve evaluators, the expression grammar
// and the frame recurrences all run on Jet values, so every derivative the
// detectors consume is exact (no finite differencing anywhere in the
// library; finite differences exist only as independent oracles in tests).

#include <array>
#include <cmath>
#include <cstddef>

#include "slantsurf/error.hpp"
#include "slantsurf/lorentz.hpp"

namespace slantsurf {

inline constexpr int kJetOrder = 4;

class Jet {
public:
    // c[k] = f^(k)(x0) / k!
    std::array<double, kJetOrder + 1> c{};

    Jet() = default;
    explicit Jet(double value) { c[0] = value; }

    static Jet constant(double v) { return Jet(v); }
    static Jet variable(double v) {
        Jet j(v);
        j.c[1] = 1.0;
        return j;
    }

    double value() const { return c[0]; }
    // k-th derivative (not the Taylor coefficient).
    double deriv(int k) const {
        static constexpr double fact[] = {1.0, 1.0, 2.0, 6.0, 24.0};
        return c[static_cast<std::size_t>(k)] * fact[k];
    }

    // Jet of f' (top coefficient is lost; order drops by one).
    Jet differentiate() const {
        Jet r;
        for (int k = 0; k < kJetOrder; ++k)
            r.c[k] = c[k + 1] * static_cast<double>(k + 1);
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet r;
        for (int k = 0; k <= kJetOrder; ++k) r.c[k] = a.c[k] + b.c[k];
        return r;
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        Jet r;
        for (int k = 0; k <= kJetOrder; ++k) r.c[k] = a.c[k] - b.c[k];
        return r;
    }
    friend Jet operator-(const Jet& a) {
        Jet r;
        for (int k = 0; k <= kJetOrder; ++k) r.c[k] = -a.c[k];
        return r;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        for (int i = 0; i <= kJetOrder; ++i)
            for (int j = 0; i + j <= kJetOrder; ++j)
                r.c[i + j] += a.c[i] * b.c[j];
        return r;
    }
    friend Jet operator*(double s, const Jet& a) {
        Jet r;
        for (int k = 0; k <= kJetOrder; ++k) r.c[k] = s * a.c[k];
        return r;
    }
    friend Jet operator*(const Jet& a, double s) { return s * a; }
    friend Jet operator+(const Jet& a, double s) {
        Jet r = a;
        r.c[0] += s;
        return r;
    }
    friend Jet operator+(double s, const Jet& a) { return a + s; }
    friend Jet operator-(const Jet& a, double s) { return a + (-s); }
    friend Jet operator-(double s, const Jet& a) { return Jet(s) - a; }

    friend Jet operator/(const Jet& a, const Jet& b) {
        if (b.c[0] == 0.0)
            throw Error(Errc::InvalidArgument, "jet division by zero value");
        Jet r;
        const double inv = 1.0 / b.c[0];
        for (int k = 0; k <= kJetOrder; ++k) {
            double acc = a.c[k];
            for (int j = 1; j <= k; ++j) acc -= b.c[j] * r.c[k - j];
            r.c[k] = acc * inv;
        }
        return r;
    }
    friend Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
    friend Jet operator/(double s, const Jet& a) { return Jet(s) / a; }
};

// g(f) from the Taylor coefficients of g at f.value(). `outer[k]` must be
// g^(k)(f0) / k!.
inline Jet jet_compose(const std::array<double, kJetOrder + 1>& outer, const Jet& f) {
    Jet p = f;
    p.c[0] = 0.0;  // powers of (f - f0)
    Jet result(outer[0]);
    Jet pk(1.0);
    for (int k = 1; k <= kJetOrder; ++k) {
        pk = pk * p;
        result = result + outer[k] * pk;
    }
    return result;
}

inline Jet sin(const Jet& f) {
    const double s = std::sin(f.c[0]), c = std::cos(f.c[0]);
    return jet_compose({s, c, -s / 2.0, -c / 6.0, s / 24.0}, f);
}
inline Jet cos(const Jet& f) {
    const double s = std::sin(f.c[0]), c = std::cos(f.c[0]);
    return jet_compose({c, -s, -c / 2.0, s / 6.0, c / 24.0}, f);
}
inline Jet sinh(const Jet& f) {
    const double s = std::sinh(f.c[0]), c = std::cosh(f.c[0]);
    return jet_compose({s, c, s / 2.0, c / 6.0, s / 24.0}, f);
}
inline Jet cosh(const Jet& f) {
    const double s = std::sinh(f.c[0]), c = std::cosh(f.c[0]);
    return jet_compose({c, s, c / 2.0, s / 6.0, c / 24.0}, f);
}
inline Jet exp(const Jet& f) {
    const double e = std::exp(f.c[0]);
    return jet_compose({e, e, e / 2.0, e / 6.0, e / 24.0}, f);
}
inline Jet log(const Jet& f) {
    const double v = f.c[0];
    if (v <= 0.0) throw Error(Errc::InvalidArgument, "log of non-positive jet value");
    return jet_compose({std::log(v), 1.0 / v, -1.0 / (2.0 * v * v),
                        1.0 / (3.0 * v * v * v), -1.0 / (4.0 * v * v * v * v)},
                       f);
}
inline Jet sqrt(const Jet& f) {
    const double v = f.c[0];
    if (v <= 0.0) throw Error(Errc::InvalidArgument, "sqrt of non-positive jet value");
    const double r = std::sqrt(v);
    // binomial series for (v + t)^(1/2)
    return jet_compose({r, 0.5 / r, -1.0 / (8.0 * r * v), 1.0 / (16.0 * r * v * v),
                        -5.0 / (128.0 * r * v * v * v)},
                       f);
}
inline Jet tanh(const Jet& f) { return sinh(f) / cosh(f); }

// Smooth branch of |f| away from f = 0 (sign frozen at the jet point).
inline Jet abs(const Jet& f) { return f.c[0] < 0.0 ? -f : f; }

inline Jet pow(const Jet& f, const Jet& g) {
    // Integer exponents use repeated multiplication, which also covers
    // negative bases. Anything else goes through exp(g log f).
    const bool g_const = g.c[1] == 0.0 && g.c[2] == 0.0 && g.c[3] == 0.0 && g.c[4] == 0.0;
    const double ge = g.c[0];
    if (g_const && ge == std::floor(ge) && std::fabs(ge) <= 16.0) {
        int n = static_cast<int>(ge);
        const bool inv = n < 0;
        n = std::abs(n);
        Jet r(1.0);
        for (int i = 0; i < n; ++i) r = r * f;
        return inv ? Jet(1.0) / r : r;
    }
    return exp(g * log(f));
}

// A 3-vector of jets: a point (or vector) curve together with its first four
// derivatives with respect to the curve parameter.
struct JetVec3 {
    Jet x1, x2, x3;

    LorentzVec3 value() const { return {x1.value(), x2.value(), x3.value()}; }
    LorentzVec3 deriv(int k) const { return {x1.deriv(k), x2.deriv(k), x3.deriv(k)}; }

    JetVec3 differentiate() const {
        return {x1.differentiate(), x2.differentiate(), x3.differentiate()};
    }

    friend JetVec3 operator+(const JetVec3& a, const JetVec3& b) {
        return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
    }
    friend JetVec3 operator-(const JetVec3& a, const JetVec3& b) {
        return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
    }
    friend JetVec3 operator*(const Jet& s, const JetVec3& v) {
        return {s * v.x1, s * v.x2, s * v.x3};
    }
    friend JetVec3 operator*(double s, const JetVec3& v) {
        return {s * v.x1, s * v.x2, s * v.x3};
    }
};

inline Jet lorentz_dot(const JetVec3& x, const JetVec3& y) {
    return Jet(0.0) - x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3;
}

inline JetVec3 lorentz_cross(const JetVec3& x, const JetVec3& y) {
    return {x.x2 * y.x3 - x.x3 * y.x2,
            x.x1 * y.x3 - x.x3 * y.x1,
            x.x2 * y.x1 - x.x1 * y.x2};
}

// Jet-wise v / sqrt(|<v,v>|).
inline JetVec3 lorentz_normalize(const JetVec3& v, double tol = kCausalTol) {
    Jet m = lorentz_dot(v, v);
    if (std::fabs(m.value()) <= tol)
        throw Error(Errc::NearNull, "cannot normalize a (near-)null jet vector");
    if (m.value() < 0.0) m = -m;
    Jet inv = Jet(1.0) / sqrt(m);
    return inv * v;
}

// Composition c(u(s)): `outer` holds jets of c in u at u0 = inner.value(),
// `inner` the jet of u as a function of s.
inline Jet jet_reparam(const Jet& outer, const Jet& inner) {
    std::array<double, kJetOrder + 1> coeffs;
    for (int k = 0; k <= kJetOrder; ++k) coeffs[k] = outer.c[k];
    return jet_compose(coeffs, inner);
}

inline JetVec3 jet_reparam(const JetVec3& outer, const Jet& inner) {
    return {jet_reparam(outer.x1, inner), jet_reparam(outer.x2, inner),
            jet_reparam(outer.x3, inner)};
}

}  // namespace slantsurf
