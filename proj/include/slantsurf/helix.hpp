#pragma once

#include <span>
#include <vector>

#include "slantsurf/curve.hpp"
#include "slantsurf/lorentz.hpp"

namespace slantsurf {

// Best-fit fixed direction for a field of sample vectors w(s): the unit
// non-null u (over both pseudo-spheres) minimizing the variance of <w, u>.
// Candidates come from the spectrum of G*Cov; a grid + Nelder-Mead pass
// refines and covers the complex-spectrum case.
struct AxisFit {
    bool verdict = false;
    LorentzVec3 axis;
    Causal axis_character = Causal::Null;
    double residual = 0.0;     // stddev of <w, u> at the optimum
    double mean_inner = 0.0;   // mean of <w, u>
};

AxisFit fit_constant_inner_axis(std::span<const LorentzVec3> samples, double tol);

struct HelixReport {
    AxisFit fit;
    // Lancret-style cross-check on kappa/tau (reported, not part of the verdict)
    bool ratio_applicable = false;
    bool ratio_constant = false;
    double ratio_stddev = 0.0;
    bool torsion_vanishing = false;
    bool curvature_ok = true;  // false when curve_frenet failed somewhere
};

// Tangent makes a constant inner product with a fixed direction.
// Requires a unit-speed non-null curve.
HelixReport general_helix_test(const CurveSpec& curve, int samples, double tol);

// Principal normal makes a constant inner product with a fixed direction.
HelixReport slant_helix_test(const CurveSpec& curve, int samples, double tol);

}  // namespace slantsurf
