#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "slantsurf/expr.hpp"
#include "slantsurf/jet.hpp"
#include "slantsurf/lorentz.hpp"

namespace slantsurf {

// An evaluable curve u -> E_1^3 with derivatives up to max_order().
// Closed-form curves expose exact order-4 jets; sampled curves expose
// spline jets with correspondingly weaker high-order accuracy.
class Curve {
public:
    virtual ~Curve() = default;
    virtual JetVec3 jet(double u) const = 0;
    virtual double u_min() const = 0;
    virtual double u_max() const = 0;
    virtual int max_order() const { return kJetOrder; }
};

// Value-semantic handle used throughout the library.
struct CurveSpec {
    std::shared_ptr<const Curve> impl;

    JetVec3 jet(double u) const { return impl->jet(u); }
    double u_min() const { return impl->u_min(); }
    double u_max() const { return impl->u_max(); }
    int max_order() const { return impl->max_order(); }
    bool valid() const { return impl != nullptr; }
};

// Position and derivatives d^0..d^order at u. Throws OutOfDomain outside the
// parameter interval (with a small slack for roundoff at the ends).
std::vector<LorentzVec3> evaluate_jet(const CurveSpec& curve, double u, int order);

CurveSpec make_expr_curve(const Expr& x1, const Expr& x2, const Expr& x3,
                          double u_min, double u_max);
CurveSpec make_expr_curve(const std::string& x1, const std::string& x2,
                          const std::string& x3, const std::string& variable,
                          double u_min, double u_max);
CurveSpec make_lambda_curve(std::function<JetVec3(double)> fn, double u_min,
                            double u_max, int max_order = kJetOrder);

// Natural cubic spline through (u_i, p_i); derivative orders above 3 vanish.
CurveSpec make_spline_curve(const std::vector<double>& u,
                            const std::vector<LorentzVec3>& p);

// Piecewise-quintic Hermite interpolant from exact values, first and second
// derivatives at the nodes. This is the carrier for synthesized surfaces:
// nodal data comes from the frame integrator, so interior jet error is
// O(step^4) or better through second derivatives.
CurveSpec make_quintic_hermite_curve(const std::vector<double>& u,
                                     const std::vector<LorentzVec3>& p,
                                     const std::vector<LorentzVec3>& dp,
                                     const std::vector<LorentzVec3>& ddp);

// Rigid motion of E_1^3: linear part preserving the metric plus translation.
struct LorentzTransform {
    double m[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    LorentzVec3 translation;

    LorentzVec3 apply_linear(const LorentzVec3& v) const;
    LorentzVec3 apply(const LorentzVec3& p) const;
    JetVec3 apply_linear(const JetVec3& v) const;

    static LorentzTransform rotation(double angle);          // in the x2x3 plane
    static LorentzTransform boost(double rapidity);          // in the x1x2 plane
    static LorentzTransform compose(const LorentzTransform& a, const LorentzTransform& b);
};

// Curve moved by a rigid motion (translation applies to order 0 only).
CurveSpec transform_curve(const CurveSpec& curve, const LorentzTransform& t);

// Reparametrize by arc length s with |<c'(s),c'(s)>| = 1. Throws
// NullVelocity when the speed drops below tol anywhere on a dense probe
// grid. The returned curve starts at s = 0.
CurveSpec arclength_reparam(const CurveSpec& curve, double tol = 1e-8);

struct CurveFrenetSample {
    double s = 0.0;
    LorentzVec3 t, n, b;
    double kappa = 0.0;
    double tau = 0.0;
    double eps_t = 0.0, eps_n = 0.0, eps_b = 0.0;
    Causal t_char = Causal::Null, n_char = Causal::Null, b_char = Causal::Null;
};

// Frenet apparatus of a unit-speed non-null curve: t = c', n = t'/kappa,
// b = t x n (adopted vector product), kappa = |<t',t'>|^(1/2), and tau the
// b-coefficient of n' in the frame expansion. Throws VanishingCurvature when
// t' ~ 0 and NearNull when any frame vector approaches the light cone.
CurveFrenetSample curve_frenet(const CurveSpec& curve, double s, double tol = 1e-8);

}  // namespace slantsurf
