#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "slantsurf/frame.hpp"
#include "slantsurf/ruled.hpp"

namespace slantsurf {

// Invariant pair k1(s), k2(s) with exact jets, plus the class that fixes the
// frame system. Both functions must be nonvanishing on [s_min, s_max].
struct CurvatureProfile {
    std::function<Jet(const Jet&)> k1;
    std::function<Jet(const Jet&)> k2;
    FrameClass cls = FrameClass::NMinus;
    double s_min = 0.0;
    double s_max = 1.0;

    Jet k1_jet(double s) const { return k1(Jet::variable(s)); }
    Jet k2_jet(double s) const { return k2(Jet::variable(s)); }

    // Throws ZeroScale when either invariant vanishes on a probe grid.
    void validate(int probes = 257) const;
};

struct FrameTriple {
    LorentzVec3 q, h, a;
};

// Coordinate-axis frame satisfying the class's product relations.
FrameTriple default_initial_frame(FrameClass cls);

// Dense integration output: one record per step.
struct FrameSeries {
    FrameClass cls = FrameClass::NMinus;
    std::vector<double> s;
    std::vector<FrameTriple> frames;
    std::vector<double> k1, k2;     // profile values at the nodes
    double max_gram_residual = 0.0; // before per-step re-orthonormalization
};

// Classical fixed-step 4th-order integration of the frame system with
// per-step re-orthonormalization (project h against q, rebuild a from the
// class's product relation, renormalize). Throws GramDrift if a step's
// pre-projection residual exceeds 1e-6.
FrameSeries integrate_frame(const CurvatureProfile& profile,
                            const FrameTriple& initial, double step = 1e-3);
FrameSeries integrate_frame(const CurvatureProfile& profile, double step = 1e-3);

enum class ReconstructionMode { Developable, GeodesicStriction, Custom };

struct ModeCoeffs {
    double alpha = 1.0;  // component of c' along q
    double beta = 0.0;   // must stay 0: <h, q'> = k1 eps_h != 0
    double gamma = 0.0;  // component of c' along a
};

struct SynthesizedSurface {
    CurvatureProfile profile;
    FrameSeries series;
    ReconstructionMode mode = ReconstructionMode::Developable;
    ModeCoeffs coeffs;
    std::vector<LorentzVec3> striction;  // c at the series nodes
    std::optional<LorentzVec3> known_axis;

    // Evenly spaced FrameSamples with profile jets attached.
    std::vector<FrameSample> frames(int count = 512) const;

    // The surface as a plain ruled-surface spec (quintic Hermite carriers
    // with exact nodal derivatives from the frame system).
    RuledSurfaceSpec as_ruled_spec() const;
};

// Reconstructs the striction curve by quadrature of c' = alpha q + gamma a.
// Developable mode: c' = q. Geodesic-striction mode: c' = a. Custom mode
// takes explicit coefficients; beta != 0 violates the striction condition
// and |eps_q alpha^2 + eps_a gamma^2| != 1 would break the arc-length
// parametrization, both are InvalidMode.
SynthesizedSurface build_surface(const CurvatureProfile& profile,
                                 const FrameSeries& series, ReconstructionMode mode,
                                 std::optional<ModeCoeffs> custom = std::nullopt);

// One-call convenience: integrate then build.
SynthesizedSurface synthesize(const CurvatureProfile& profile, ReconstructionMode mode,
                              double step = 1e-3,
                              std::optional<ModeCoeffs> custom = std::nullopt);

// Closed-form curvature family with k1 = 1 whose central normal keeps a
// constant inner product with a fixed direction; carries the explicit axis
// for verification. theta is the (hyperbolic) angle parameter.
struct HSlantProfile {
    CurvatureProfile profile;
    double theta = 0.0;
    Causal axis_character = Causal::Timelike;
    double expected_inner = 0.0;  // the constant value of <h, u>

    // The axis assembled from a frame sample; constant along s when the
    // profile is integrated exactly.
    LorentzVec3 axis_at(const FrameSample& fs) const;

    double branch_sign = -1.0;  // sign of the a-coefficient in the axis
};

// Throws SingularInterval when [s_min, s_max] leaves the admissible branch
// (timelike classes need s^2 > mu^2 when eps_q = -1; the spacelike class
// needs s^2 < eta^2; zero crossings of k2 are excluded as well).
HSlantProfile h_slant_profile(double theta, Causal axis_character, FrameClass cls,
                              double s_min, double s_max);

// Picks the axis branch sign that makes the assembled axis constant over
// the first few samples.
void select_axis_branch(HSlantProfile& p, std::span<const FrameSample> frames);

// Constant-ratio family: k1 = ratio * scale, k2 = scale.
CurvatureProfile q_slant_profile(double ratio, std::function<Jet(const Jet&)> scale,
                                 FrameClass cls, double s_min, double s_max);

// Invariants given as sample tables; spline-interpolated (derivatives
// beyond order 2 come from the spline, so downstream detectors should run
// at the sampled-pipeline tolerance).
CurvatureProfile make_sampled_profile(const std::vector<double>& s,
                                      const std::vector<double>& k1,
                                      const std::vector<double>& k2, FrameClass cls);

}  // namespace slantsurf
