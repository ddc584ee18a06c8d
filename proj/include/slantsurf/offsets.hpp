#pragma once

#include <functional>
#include <vector>

#include "slantsurf/frame.hpp"
#include "slantsurf/synthesis.hpp"

namespace slantsurf {

enum class OffsetKind { Bertrand, Mannheim };

struct OffsetSpec {
    OffsetKind kind = OffsetKind::Bertrand;
    double distance = 0.0;  // striction-line translation along h1
    double angle = 0.0;     // ruling angle: constant offset of the rotation
};

// An offset mate, analyzed along its own striction line: FrameSamples are
// parametrized by the mate's arc length with exact invariant jets, and the
// defining frame identity is verified sample by sample before the mate is
// returned.
struct OffsetSurface {
    std::vector<FrameSample> frames;
    std::vector<double> source_s;     // correspondence to the source parameter
    double identity_residual = 0.0;   // max_s min(||h2 -+ ref||)
    FrameClass cls = FrameClass::NMinus;
};

// Bertrand mate: striction line translated by `distance` along h1, ruling
// turned by the constant `angle` in the {q1, a1} plane (circular when the
// plane is definite, hyperbolic when Lorentzian). The mate's central normal
// must reproduce +-h1; otherwise NormalMismatch.
OffsetSurface bertrand_offset(const SynthesizedSurface& s, const OffsetSpec& spec,
                              double tol = 1e-5, int samples = 512);

// Mannheim mate: ruling turned in the {q1, h1} plane by the accumulated
// angle  Phi(s) = integral of k1 + `angle`,  the unique rotation law that
// keeps the mate's ruling derivative parallel to a1; the mate's central
// normal must reproduce +-a1, otherwise NormalMismatch.
OffsetSurface mannheim_offset(const SynthesizedSurface& s, const OffsetSpec& spec,
                              double tol = 1e-5, int samples = 512);

namespace detail {

// Generic verification-gated construction; `ruling` maps a node index to
// frame coefficients of q2 (jets in the source arc length). Used by the
// public constructors and, with deliberately broken laws, by tests.
OffsetSurface construct_offset(const SynthesizedSurface& s,
                               const std::function<FrameCoeffs(std::size_t)>& ruling,
                               double distance, OffsetKind expected, double tol,
                               int samples);

}  // namespace detail

}  // namespace slantsurf
