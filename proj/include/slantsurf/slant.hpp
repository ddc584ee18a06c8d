#pragma once

#include <optional>
#include <span>
#include <vector>

#include "slantsurf/frame.hpp"
#include "slantsurf/helix.hpp"
#include "slantsurf/ruled.hpp"

namespace slantsurf {

// Result of one slant detector. `residual` is the scalar the verdict
// compares against the tolerance; `series` holds the per-sample diagnostic
// quantity (ratio, determinant, vector residual norm, or f).
struct DetectorResult {
    bool verdict = false;
    bool indeterminate = false;
    bool degenerate_axis = false;  // reconstructed axis is (near-)null
    bool guarded_radical = false;  // |.|-guarded denominator was needed
    double residual = 0.0;

    bool axis_valid = false;
    LorentzVec3 axis;
    Causal axis_character = Causal::Null;
    double axis_constancy = 0.0;  // max_s ||u(s) - u(s0)|| per-sample reconstruction
    double c_q = 0.0, c_h = 0.0, c_a = 0.0;  // mean inner products with the axis
    double inner_stddev = 0.0;               // stddev of the defining inner product
    // ratio of the a- to q-coefficient in the axis reconstruction (the
    // inner products differ from the coefficients by the metric signs)
    double axis_coeff_ratio = 0.0;

    // for the determinant detectors: worst |direct - closed| / max(1,|closed|)
    double closed_form_discrepancy = 0.0;

    std::vector<double> series;
};

// Constancy of k1/k2; axis from u = q + rho a with rho = -eps (k1/k2) on
// timelike surfaces and -(k1/k2) on spacelike ones, renormalized.
// Throws ZeroCurvature when |k2| drops below tol.
DetectorResult q_slant_ratio_test(std::span<const FrameSample> frames, double tol);

// max |det(q', q'', q''')| over the samples, derivatives expanded exactly
// through the frame system; cross-checked against the closed form
// -+ eps k1^3 k2^2 (k1/k2)'.
DetectorResult det_q_test(std::span<const FrameSample> frames, double tol);

// Same for det(a', a'', a''') against -+ k2^5 (k1/k2)'.
DetectorResult det_a_test(std::span<const FrameSample> frames, double tol);

// Vector identity q''' + m q' = 3 k1' h' with the class-dependent m.
// Throws ZeroCurvature when |k1| drops below tol.
DetectorResult ode_q_test(std::span<const FrameSample> frames, double tol);

// Constancy of f = k1^2 (k2/k1)' / D^(3/2); D = eps(k2^2 - k1^2) on timelike
// surfaces (|.|-guarded, flagged, when negative; Indeterminate when it
// crosses 0) and k1^2 + k2^2 on spacelike ones. Axis from the q, a
// coefficients k2/W and -eps k1/W with the h-coefficient branch picked for
// constancy.
DetectorResult h_slant_test(std::span<const FrameSample> frames, double tol);

// Same verdict as the ratio test (the axis lies in the q-a plane, so
// constancy of <q,u> and <a,u> are equivalent); reports <a,u> constancy.
DetectorResult a_slant_test(std::span<const FrameSample> frames, double tol);

struct EquivReport {
    DetectorResult surface;   // slant verdict on the surface invariants
    HelixReport curve;        // helix verdict on the striction line
    bool agree = false;
    bool geodesic_path = false;     // hypothesis satisfied via n ~ +-h
    bool developable_path = false;  // hypothesis satisfied via developability
    double hypothesis_residual = 0.0;
};

// Developable surfaces: q-slant iff the striction line is a general helix.
// Throws NotDevelopable when the surface has nonzero drall, and
// HypothesisViolated when the striction line's causal character breaks the
// premise.
EquivReport developable_helix_equiv(const RuledSurfaceSpec& s, double tol,
                                    const AnalysisGrid& grid = {});

// Geodesic striction line (principal normal aligned with the central
// normal) or developable surface: h-slant iff the striction line is a slant
// helix. Throws HypothesisViolated when neither premise holds.
EquivReport geodesic_slanthelix_equiv(const RuledSurfaceSpec& s, double tol,
                                      const AnalysisGrid& grid = {});

}  // namespace slantsurf
