// Acceptance suite: every criterion runs at its stated tolerance and prints
// one pass/fail line. The heavy lifting lives in the verify suites so the
// CLI `verify` command and this binary cannot drift apart.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "slantsurf/verify.hpp"

using namespace slantsurf;

namespace {

void report(int index, const char* what, const SuiteResult& r) {
    std::printf("ACCEPTANCE %2d [%s] %-34s worst %.3e (%d cases) %s\n", index,
                r.pass ? "PASS" : "FAIL", what, r.worst, r.cases, r.note.c_str());
}

SuiteOptions opts() {
    SuiteOptions o;
    o.seed = 20260808u;
    return o;
}

}  // namespace

TEST_CASE("1: frame integration conserves the Gram matrix to 1e-8") {
    const SuiteResult r = suite_gram_conservation(opts());
    report(1, "gram-conservation", r);
    CHECK(r.pass);
    CHECK(r.worst < 1e-8);
}

TEST_CASE("2: synthesize/re-analyze recovers k1, k2 to 1e-6") {
    const SuiteResult r = suite_roundtrip_invariants(opts());
    report(2, "roundtrip-invariants", r);
    CHECK(r.pass);
    CHECK(r.worst < 1e-6);
}

TEST_CASE("3: the four q-slant detectors agree on 100 profiles") {
    SuiteOptions o = opts();
    o.cases = 100;
    const SuiteResult r = suite_qslant_equivalence(o);
    report(3, "qslant-equivalence", r);
    CHECK(r.pass);
    CHECK(r.worst < 1e-6);  // axis-constancy residual on the slant half
}

TEST_CASE("4: direct determinants match the closed forms to 1e-6 relative") {
    const SuiteResult r = suite_det_closed_forms(opts());
    report(4, "det-closed-forms", r);
    CHECK(r.pass);
    CHECK(r.worst < 1e-6);
}

TEST_CASE("5: closed-form h-slant family reproduces its axis and angle") {
    const SuiteResult r = suite_hslant_profile_family(opts());
    report(5, "hslant-profile-family", r);
    CHECK(r.pass);
}

TEST_CASE("6: developable surfaces: q-slant iff the striction line is a general helix") {
    const SuiteResult r = suite_developable_helix(opts());
    report(6, "developable-helix-equivalence", r);
    CHECK(r.pass);
}

TEST_CASE("7: geodesic/developable: h-slant iff the striction line is a slant helix") {
    const SuiteResult r = suite_geodesic_slant_helix(opts());
    report(7, "geodesic-slanthelix-equivalence", r);
    CHECK(r.pass);
}

TEST_CASE("8: offsets: Bertrand closure and the Mannheim biconditional") {
    const SuiteResult rb = suite_bertrand_closure(opts());
    report(8, "bertrand-hslant-closure", rb);
    CHECK(rb.pass);
    const SuiteResult rm = suite_mannheim_biconditional(opts());
    report(8, "mannheim-qslant-biconditional", rm);
    CHECK(rm.pass);
}

TEST_CASE("9: verdicts and residuals are Lorentz-motion invariant") {
    const SuiteResult r = suite_motion_invariance(opts());
    report(9, "motion-invariance", r);
    CHECK(r.pass);
    CHECK(r.worst < 1e-9);
}

TEST_CASE("10: striction is gauge-invariant and exact on orthogonal data") {
    const SuiteResult r = suite_striction_gauge(opts());
    report(10, "striction-gauge-invariance", r);
    CHECK(r.pass);
    CHECK(r.worst < 1e-9);
}
