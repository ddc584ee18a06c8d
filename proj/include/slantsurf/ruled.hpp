#pragma once

#include <string>
#include <vector>

#include "slantsurf/curve.hpp"
#include "slantsurf/frame.hpp"

namespace slantsurf {

// Ruled surface r(u,v) = base(u) + v * director(u). The director is
// renormalized jet-wise on every evaluation, so |<q,q>| = 1 holds even for
// raw director input.
struct RuledSurfaceSpec {
    CurveSpec base;
    CurveSpec director;

    double u_min() const { return base.u_min(); }
    double u_max() const { return base.u_max(); }
};

RuledSurfaceSpec transform_surface(const RuledSurfaceSpec& s, const LorentzTransform& t);

enum class SurfaceClassTag { NMinus, NPlus, NTimes, Degenerate };

struct SurfaceClass {
    SurfaceClassTag tag = SurfaceClassTag::Degenerate;
    std::string reason;  // set for Degenerate
};

const char* surface_class_name(SurfaceClassTag t);

struct Tolerances {
    double causal = 1e-9;       // on metric squares of unit-scale vectors
    double cylindrical = 1e-12; // on |<dq,dq>| (raw parameter scale)
    double gram = 1e-8;
    double frame_residual = 1e-6;
    double verdict = 1e-6;      // slant/helix verdicts for analytic inputs
};

// delta = det(dk, q, dq) / <dq,dq> with the plain component determinant.
// Throws CylindricalRuling when |<dq,dq>| is below tol.
double distribution_parameter(const RuledSurfaceSpec& s, double u,
                              const Tolerances& tol = {});

// k(u) - (<dq,dk>/<dq,dq>) q(u).
LorentzVec3 striction_point(const RuledSurfaceSpec& s, double u,
                            const Tolerances& tol = {});

// The striction curve as an evaluable curve (jets to order 3).
CurveSpec striction_curve(const RuledSurfaceSpec& s, const Tolerances& tol = {});

// Frame at the striction point of the ruling through u: a ~ dq x q
// normalized, h completing the triple so the per-class product relations
// hold, with the (a,h) orientation chosen jointly so that <q', h> eps_h >= 0
// (the spherical image of q advances along +h). k1/k2 are filled by
// invariants(); this returns geometry, signs and drall only.
FrameSample frenet_frame(const RuledSurfaceSpec& s, double u,
                         const Tolerances& tol = {});

SurfaceClass classify(const RuledSurfaceSpec& s, int grid = 64,
                      const Tolerances& tol = {});

struct DevelopabilityReport {
    bool developable = false;
    bool cylindrical = false;   // constant director: developable by convention
    double max_abs_drall = 0.0;
    bool tangent_check_applicable = false;
    bool tangent_matches_ruling = false;  // striction tangent parallel to q
    double tangent_residual = 0.0;
};

DevelopabilityReport developability(const RuledSurfaceSpec& s, double tol,
                                    int grid = 256);

inline bool is_developable(const RuledSurfaceSpec& s, double tol, int grid = 256) {
    return developability(s, tol, grid).developable;
}

struct AnalysisGrid {
    int samples = 512;
    Tolerances tol;
    bool refine = true;  // bisect where frame residuals exceed tolerance
};

// Full striction-line analysis: reparametrizes the striction curve by arc
// length and extracts the frame and the invariants k1 = eps_h <q', h>,
// k2 from <a', h> per class, together with their first two s-derivatives
// (all through exact jets). Samples whose frame-system residual stays above
// tolerance after refinement come back flagged.
std::vector<FrameSample> invariants(const RuledSurfaceSpec& s,
                                    const AnalysisGrid& grid = {});

}  // namespace slantsurf
