#include "slantsurf/curve.hpp"

#include <algorithm>
#include <cmath>

#include "slantsurf/error.hpp"

namespace slantsurf {

namespace {

constexpr double kDomainSlack = 1e-12;

void check_domain(const Curve& c, double u) {
    const double lo = c.u_min(), hi = c.u_max();
    const double slack = kDomainSlack * std::max(1.0, std::fabs(hi - lo));
    if (u < lo - slack || u > hi + slack)
        throw Error(Errc::OutOfDomain,
                    "parameter " + std::to_string(u) + " outside [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

class ExprCurve final : public Curve {
public:
    ExprCurve(Expr x1, Expr x2, Expr x3, double lo, double hi)
        : x1_(std::move(x1)), x2_(std::move(x2)), x3_(std::move(x3)), lo_(lo), hi_(hi) {}

    JetVec3 jet(double u) const override {
        check_domain(*this, u);
        const Jet v = Jet::variable(u);
        return {x1_.eval(v), x2_.eval(v), x3_.eval(v)};
    }
    double u_min() const override { return lo_; }
    double u_max() const override { return hi_; }

private:
    Expr x1_, x2_, x3_;
    double lo_, hi_;
};

class LambdaCurve final : public Curve {
public:
    LambdaCurve(std::function<JetVec3(double)> fn, double lo, double hi, int order)
        : fn_(std::move(fn)), lo_(lo), hi_(hi), order_(order) {}

    JetVec3 jet(double u) const override {
        check_domain(*this, u);
        return fn_(u);
    }
    double u_min() const override { return lo_; }
    double u_max() const override { return hi_; }
    int max_order() const override { return order_; }

private:
    std::function<JetVec3(double)> fn_;
    double lo_, hi_;
    int order_;
};

// Polynomial segment helpers shared by the spline carriers.
Jet poly_jet(const double* coeff, int ncoeff, double t) {
    // value and derivatives of sum coeff[k] t^k as a jet in t
    Jet r;
    for (int d = 0; d <= kJetOrder; ++d) {
        double acc = 0.0;
        double fact = 1.0;
        for (int k = d; k < ncoeff; ++k) {
            // k (k-1) ... (k-d+1) t^(k-d)
            double term = coeff[k];
            for (int j = 0; j < d; ++j) term *= static_cast<double>(k - j);
            acc += term * std::pow(t, k - d);
        }
        for (int j = 2; j <= d; ++j) fact *= j;
        r.c[static_cast<std::size_t>(d)] = acc / fact;
    }
    return r;
}

class PiecewisePolyCurve : public Curve {
public:
    PiecewisePolyCurve(std::vector<double> knots, int ncoeff, int order)
        : knots_(std::move(knots)), ncoeff_(ncoeff), order_(order) {
        coeff_.resize(3 * (knots_.size() - 1) * static_cast<std::size_t>(ncoeff_));
    }

    double* segment(std::size_t seg, int comp) {
        return coeff_.data() + (seg * 3 + static_cast<std::size_t>(comp)) *
                                   static_cast<std::size_t>(ncoeff_);
    }
    const double* segment(std::size_t seg, int comp) const {
        return coeff_.data() + (seg * 3 + static_cast<std::size_t>(comp)) *
                                   static_cast<std::size_t>(ncoeff_);
    }

    JetVec3 jet(double u) const override {
        check_domain(*this, u);
        const std::size_t seg = locate(u);
        const double t = u - knots_[seg];
        return {poly_jet(segment(seg, 0), ncoeff_, t),
                poly_jet(segment(seg, 1), ncoeff_, t),
                poly_jet(segment(seg, 2), ncoeff_, t)};
    }
    double u_min() const override { return knots_.front(); }
    double u_max() const override { return knots_.back(); }
    int max_order() const override { return order_; }

private:
    std::size_t locate(double u) const {
        auto it = std::upper_bound(knots_.begin(), knots_.end(), u);
        std::size_t i = static_cast<std::size_t>(it - knots_.begin());
        if (i > 0) --i;
        return std::min(i, knots_.size() - 2);
    }

    std::vector<double> knots_;
    int ncoeff_;
    int order_;
    std::vector<double> coeff_;
};

double component(const LorentzVec3& v, int i) {
    return i == 0 ? v.x1 : (i == 1 ? v.x2 : v.x3);
}

}  // namespace

std::vector<LorentzVec3> evaluate_jet(const CurveSpec& curve, double u, int order) {
    if (order < 0 || order > curve.max_order())
        throw Error(Errc::InvalidArgument,
                    "derivative order " + std::to_string(order) + " not available");
    const JetVec3 j = curve.jet(u);
    std::vector<LorentzVec3> out;
    out.reserve(static_cast<std::size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) out.push_back(j.deriv(k));
    return out;
}

CurveSpec make_expr_curve(const Expr& x1, const Expr& x2, const Expr& x3,
                          double u_min, double u_max) {
    return {std::make_shared<ExprCurve>(x1, x2, x3, u_min, u_max)};
}

CurveSpec make_expr_curve(const std::string& x1, const std::string& x2,
                          const std::string& x3, const std::string& variable,
                          double u_min, double u_max) {
    return make_expr_curve(Expr::parse(x1, variable), Expr::parse(x2, variable),
                           Expr::parse(x3, variable), u_min, u_max);
}

CurveSpec make_lambda_curve(std::function<JetVec3(double)> fn, double u_min,
                            double u_max, int max_order) {
    return {std::make_shared<LambdaCurve>(std::move(fn), u_min, u_max, max_order)};
}

CurveSpec make_spline_curve(const std::vector<double>& u,
                            const std::vector<LorentzVec3>& p) {
    const std::size_t n = u.size();
    if (n < 3 || p.size() != n)
        throw Error(Errc::InvalidArgument, "spline needs at least 3 samples");
    for (std::size_t i = 1; i < n; ++i)
        if (!(u[i] > u[i - 1]))
            throw Error(Errc::InvalidArgument, "spline parameters must increase");

    auto curve = std::make_shared<PiecewisePolyCurve>(u, 4, 3);

    // natural cubic spline per component (tridiagonal solve for moments)
    for (int comp = 0; comp < 3; ++comp) {
        std::vector<double> h(n - 1), alpha(n, 0.0), l(n), mu(n), z(n), m(n);
        for (std::size_t i = 0; i + 1 < n; ++i) h[i] = u[i + 1] - u[i];
        for (std::size_t i = 1; i + 1 < n; ++i)
            alpha[i] = 3.0 * ((component(p[i + 1], comp) - component(p[i], comp)) / h[i] -
                              (component(p[i], comp) - component(p[i - 1], comp)) / h[i - 1]);
        l[0] = 1.0; mu[0] = 0.0; z[0] = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            l[i] = 2.0 * (u[i + 1] - u[i - 1]) - h[i - 1] * mu[i - 1];
            mu[i] = h[i] / l[i];
            z[i] = (alpha[i] - h[i - 1] * z[i - 1]) / l[i];
        }
        m[n - 1] = 0.0;
        for (std::size_t i = n - 1; i-- > 0;) m[i] = z[i] - mu[i] * m[i + 1];
        for (std::size_t i = 0; i + 1 < n; ++i) {
            double* c = curve->segment(i, comp);
            const double yi = component(p[i], comp);
            const double yi1 = component(p[i + 1], comp);
            c[0] = yi;
            c[2] = m[i];
            c[3] = (m[i + 1] - m[i]) / (3.0 * h[i]);
            c[1] = (yi1 - yi) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 3.0;
        }
    }
    return {curve};
}

CurveSpec make_quintic_hermite_curve(const std::vector<double>& u,
                                     const std::vector<LorentzVec3>& p,
                                     const std::vector<LorentzVec3>& dp,
                                     const std::vector<LorentzVec3>& ddp) {
    const std::size_t n = u.size();
    if (n < 2 || p.size() != n || dp.size() != n || ddp.size() != n)
        throw Error(Errc::InvalidArgument, "hermite curve needs matching node arrays");

    auto curve = std::make_shared<PiecewisePolyCurve>(u, 6, 4);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = u[i + 1] - u[i];
        if (!(h > 0.0))
            throw Error(Errc::InvalidArgument, "hermite parameters must increase");
        for (int comp = 0; comp < 3; ++comp) {
            const double f0 = component(p[i], comp), f1 = component(p[i + 1], comp);
            const double d0 = component(dp[i], comp), d1 = component(dp[i + 1], comp);
            const double s0 = component(ddp[i], comp), s1 = component(ddp[i + 1], comp);
            // quintic with matching value/1st/2nd derivatives at both ends
            const double A = f1 - f0 - d0 * h - 0.5 * s0 * h * h;
            const double B = (d1 - d0 - s0 * h) * h;
            const double C = (s1 - s0) * h * h;
            double* c = curve->segment(i, comp);
            c[0] = f0;
            c[1] = d0;
            c[2] = 0.5 * s0;
            c[3] = (10.0 * A - 4.0 * B + 0.5 * C) / (h * h * h);
            c[4] = (-15.0 * A + 7.0 * B - C) / (h * h * h * h);
            c[5] = (6.0 * A - 3.0 * B + 0.5 * C) / (h * h * h * h * h);
        }
    }
    return {curve};
}

LorentzVec3 LorentzTransform::apply_linear(const LorentzVec3& v) const {
    return {m[0][0] * v.x1 + m[0][1] * v.x2 + m[0][2] * v.x3,
            m[1][0] * v.x1 + m[1][1] * v.x2 + m[1][2] * v.x3,
            m[2][0] * v.x1 + m[2][1] * v.x2 + m[2][2] * v.x3};
}

LorentzVec3 LorentzTransform::apply(const LorentzVec3& p) const {
    return apply_linear(p) + translation;
}

JetVec3 LorentzTransform::apply_linear(const JetVec3& v) const {
    return {m[0][0] * v.x1 + m[0][1] * v.x2 + m[0][2] * v.x3,
            m[1][0] * v.x1 + m[1][1] * v.x2 + m[1][2] * v.x3,
            m[2][0] * v.x1 + m[2][1] * v.x2 + m[2][2] * v.x3};
}

LorentzTransform LorentzTransform::rotation(double angle) {
    LorentzTransform t;
    const double c = std::cos(angle), s = std::sin(angle);
    t.m[1][1] = c; t.m[1][2] = -s;
    t.m[2][1] = s; t.m[2][2] = c;
    return t;
}

LorentzTransform LorentzTransform::boost(double rapidity) {
    LorentzTransform t;
    const double c = std::cosh(rapidity), s = std::sinh(rapidity);
    t.m[0][0] = c; t.m[0][1] = s;
    t.m[1][0] = s; t.m[1][1] = c;
    return t;
}

LorentzTransform LorentzTransform::compose(const LorentzTransform& a,
                                           const LorentzTransform& b) {
    LorentzTransform t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            t.m[i][j] = 0.0;
            for (int k = 0; k < 3; ++k) t.m[i][j] += a.m[i][k] * b.m[k][j];
        }
    t.translation = a.apply_linear(b.translation) + a.translation;
    return t;
}

namespace {

class TransformedCurve final : public Curve {
public:
    TransformedCurve(CurveSpec inner, LorentzTransform t)
        : inner_(std::move(inner)), t_(t) {}

    JetVec3 jet(double u) const override {
        JetVec3 j = t_.apply_linear(inner_.jet(u));
        j.x1.c[0] += t_.translation.x1;
        j.x2.c[0] += t_.translation.x2;
        j.x3.c[0] += t_.translation.x3;
        return j;
    }
    double u_min() const override { return inner_.u_min(); }
    double u_max() const override { return inner_.u_max(); }
    int max_order() const override { return inner_.max_order(); }

private:
    CurveSpec inner_;
    LorentzTransform t_;
};

// Arc-length table: cumulative Simpson over a dense grid, Gauss-Legendre
// tail inside a cell, Newton for the inverse.
class UnitSpeedCurve final : public Curve {
public:
    UnitSpeedCurve(CurveSpec inner, double tol) : inner_(std::move(inner)) {
        const double lo = inner_.u_min(), hi = inner_.u_max();
        const int cells = 4096;
        us_.resize(cells + 1);
        ss_.resize(cells + 1);
        const double h = (hi - lo) / cells;
        ss_[0] = 0.0;
        for (int i = 0; i <= cells; ++i) us_[i] = lo + h * i;
        for (int i = 0; i < cells; ++i) {
            const double a = us_[i];
            const double s0 = speed_value(a), sm = speed_value(a + 0.5 * h),
                         s1 = speed_value(a + h);
            if (s0 < tol || sm < tol || s1 < tol)
                throw Error(Errc::NullVelocity,
                            "curve speed below tolerance near u=" + std::to_string(a));
            ss_[i + 1] = ss_[i] + h / 6.0 * (s0 + 4.0 * sm + s1);
        }
        length_ = ss_.back();
    }

    double length() const { return length_; }

    double u_of_s(double s) const {
        s = std::clamp(s, 0.0, length_);
        auto it = std::upper_bound(ss_.begin(), ss_.end(), s);
        std::size_t i = static_cast<std::size_t>(it - ss_.begin());
        if (i > 0) --i;
        i = std::min(i, ss_.size() - 2);
        double u = us_[i] + (us_[i + 1] - us_[i]) *
                                ((s - ss_[i]) / std::max(ss_[i + 1] - ss_[i], 1e-300));
        for (int iter = 0; iter < 30; ++iter) {
            const double f = s_of_u(u, i) - s;
            const double sp = speed_value(u);
            const double du = f / sp;
            u -= du;
            u = std::clamp(u, us_[i], us_[i + 1]);
            if (std::fabs(du) < 1e-15 * std::max(1.0, std::fabs(u))) break;
        }
        return u;
    }

    JetVec3 jet(double s) const override {
        check_domain(*this, s);
        const double u = u_of_s(std::clamp(s, 0.0, length_));
        const JetVec3 cj = inner_.jet(u);
        const Jet sigma = speed_jet(cj);
        // inverse-function jets of u(s) from sigma and its u-derivatives
        const double g = sigma.value();
        const double g1 = sigma.deriv(1), g2 = sigma.deriv(2), g3 = sigma.deriv(3);
        Jet uj;
        uj.c[0] = u;
        uj.c[1] = 1.0 / g;
        uj.c[2] = (-g1 / (g * g * g)) / 2.0;
        uj.c[3] = ((3.0 * g1 * g1 - g * g2) / std::pow(g, 5)) / 6.0;
        uj.c[4] = ((-15.0 * g1 * g1 * g1 + 10.0 * g * g1 * g2 - g * g * g3) /
                   std::pow(g, 7)) / 24.0;
        return jet_reparam(cj, uj);
    }
    double u_min() const override { return 0.0; }
    double u_max() const override { return length_; }
    int max_order() const override { return inner_.max_order(); }

private:
    static Jet speed_jet(const JetVec3& cj) {
        JetVec3 d = cj.differentiate();
        Jet m = lorentz_dot(d, d);
        if (m.value() < 0.0) m = -m;
        return sqrt(m);
    }

    double speed_value(double u) const {
        const JetVec3 cj = inner_.jet(u);
        const LorentzVec3 d = cj.deriv(1);
        return std::sqrt(std::fabs(lorentz_dot(d, d)));
    }

    double s_of_u(double u, std::size_t cell) const {
        // 5-point Gauss-Legendre on [us_[cell], u]
        static const double gx[5] = {-0.906179845938664, -0.538469310105683, 0.0,
                                     0.538469310105683, 0.906179845938664};
        static const double gw[5] = {0.236926885056189, 0.478628670499366,
                                     0.568888888888889, 0.478628670499366,
                                     0.236926885056189};
        const double a = us_[cell];
        const double half = 0.5 * (u - a), mid = 0.5 * (u + a);
        double acc = 0.0;
        for (int k = 0; k < 5; ++k) acc += gw[k] * speed_value(mid + half * gx[k]);
        return ss_[cell] + acc * half;
    }

    CurveSpec inner_;
    std::vector<double> us_, ss_;
    double length_ = 0.0;
};

}  // namespace

CurveSpec transform_curve(const CurveSpec& curve, const LorentzTransform& t) {
    return {std::make_shared<TransformedCurve>(curve, t)};
}

CurveSpec arclength_reparam(const CurveSpec& curve, double tol) {
    return {std::make_shared<UnitSpeedCurve>(curve, tol)};
}

CurveFrenetSample curve_frenet(const CurveSpec& curve, double s, double tol) {
    const JetVec3 cj = curve.jet(s);
    const JetVec3 tj = cj.differentiate();

    CurveFrenetSample out;
    out.s = s;
    out.t = tj.value();
    const double tt = lorentz_dot(out.t, out.t);
    if (std::fabs(std::fabs(tt) - 1.0) > 1e-6)
        throw Error(Errc::InvalidArgument,
                    "curve_frenet requires a unit-speed curve, <t,t>=" + std::to_string(tt));
    out.eps_t = tt < 0.0 ? -1.0 : 1.0;

    const JetVec3 tpj = tj.differentiate();
    const LorentzVec3 tp = tpj.value();
    if (euclidean_norm(tp) < tol)
        throw Error(Errc::VanishingCurvature, "curvature below tolerance at s=" +
                                                  std::to_string(s));
    Jet m2 = lorentz_dot(tpj, tpj);
    if (std::fabs(m2.value()) < tol * euclidean_norm(tp) * euclidean_norm(tp))
        throw Error(Errc::NearNull, "principal normal is near null at s=" +
                                        std::to_string(s));
    out.eps_n = m2.value() < 0.0 ? -1.0 : 1.0;
    if (m2.value() < 0.0) m2 = -m2;
    const Jet kappa = sqrt(m2);
    out.kappa = kappa.value();

    const JetVec3 nj{tpj.x1 / kappa, tpj.x2 / kappa, tpj.x3 / kappa};
    out.n = nj.value();
    const JetVec3 bj = lorentz_cross(tj, nj);
    out.b = bj.value();
    out.eps_b = -out.eps_t * out.eps_n;

    // tau = b-coefficient of n' in the orthonormal expansion
    const LorentzVec3 np = nj.differentiate().value();
    out.tau = out.eps_b * lorentz_dot(np, out.b);

    out.t_char = causal_character(out.t).tag;
    out.n_char = causal_character(out.n).tag;
    out.b_char = causal_character(out.b).tag;
    return out;
}

}  // namespace slantsurf
