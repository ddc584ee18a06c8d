#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace slantsurf {

// Deterministic theorem/property suites. Each suite draws its cases from
// the seeded generator, checks the stated equivalences and identities at
// the frozen tolerances, and reports its worst residual. The acceptance
// tests and the `verify` CLI command run the same code.
struct SuiteResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;   // worst residual the suite compared against a bound
    int cases = 0;
    std::string note;
};

struct SuiteOptions {
    std::uint64_t seed = 20260808u;
    int cases = 0;          // 0: per-suite defaults
    double tol_scale = 1.0; // multiplies the pass thresholds (0 fails everything)
};

SuiteResult suite_gram_conservation(const SuiteOptions& o);
SuiteResult suite_roundtrip_invariants(const SuiteOptions& o);
SuiteResult suite_qslant_equivalence(const SuiteOptions& o);
SuiteResult suite_det_closed_forms(const SuiteOptions& o);
SuiteResult suite_hslant_profile_family(const SuiteOptions& o);
SuiteResult suite_developable_helix(const SuiteOptions& o);
SuiteResult suite_geodesic_slant_helix(const SuiteOptions& o);
SuiteResult suite_bertrand_closure(const SuiteOptions& o);
SuiteResult suite_mannheim_biconditional(const SuiteOptions& o);
SuiteResult suite_motion_invariance(const SuiteOptions& o);
SuiteResult suite_striction_gauge(const SuiteOptions& o);

std::vector<SuiteResult> run_all_suites(const SuiteOptions& o);

}  // namespace slantsurf
