#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "slantsurf/lorentz.hpp"

using namespace slantsurf;

namespace {

struct Gen {
    std::mt19937_64 eng{12345};
    double operator()(double lo = -2.0, double hi = 2.0) {
        return lo + (hi - lo) * (static_cast<double>(eng() >> 11) * 0x1.0p-53);
    }
    LorentzVec3 vec() { return {(*this)(), (*this)(), (*this)()}; }
};

}  // namespace

TEST_CASE("metric on basis and null vectors") {
    CHECK(lorentz_dot({1, 0, 0}, {1, 0, 0}) == -1.0);
    CHECK(lorentz_dot({0, 1, 0}, {0, 1, 0}) == 1.0);
    CHECK(lorentz_dot({1, 1, 0}, {1, 1, 0}) == 0.0);
}

TEST_CASE("metric is symmetric and bilinear") {
    Gen g;
    for (int i = 0; i < 200; ++i) {
        const LorentzVec3 x = g.vec(), y = g.vec(), z = g.vec();
        const double lambda = g();
        CHECK(lorentz_dot(x, y) == doctest::Approx(lorentz_dot(y, x)).epsilon(1e-14));
        CHECK(lorentz_dot(x + lambda * z, y) ==
              doctest::Approx(lorentz_dot(x, y) + lambda * lorentz_dot(z, y))
                  .epsilon(1e-12));
    }
}

TEST_CASE("vector product evaluates the defining formula") {
    // direct evaluation: (x2 y3 - x3 y2, x1 y3 - x3 y1, x2 y1 - x1 y2)
    const LorentzVec3 a = lorentz_cross({1, 0, 0}, {0, 1, 0});
    CHECK(a.x1 == 0.0);
    CHECK(a.x2 == 0.0);
    CHECK(a.x3 == -1.0);
    const LorentzVec3 b = lorentz_cross({0, 1, 0}, {0, 0, 1});
    CHECK(b.x1 == 1.0);
    CHECK(b.x2 == 0.0);
    CHECK(b.x3 == 0.0);
    const LorentzVec3 v{0.3, -1.2, 0.7};
    const LorentzVec3 c = lorentz_cross(v, v);
    CHECK(euclidean_norm(c) == 0.0);
}

TEST_CASE("vector product is orthogonal to both arguments under the metric") {
    Gen g;
    for (int i = 0; i < 500; ++i) {
        const LorentzVec3 x = g.vec(), y = g.vec();
        const LorentzVec3 c = lorentz_cross(x, y);
        CHECK(std::fabs(lorentz_dot(c, x)) < 1e-12);
        CHECK(std::fabs(lorentz_dot(c, y)) < 1e-12);
        // mixed product identity: <x cross y, z> = -det(x, y, z)
        const LorentzVec3 z = g.vec();
        const double det = x.x1 * (y.x2 * z.x3 - y.x3 * z.x2) -
                           x.x2 * (y.x1 * z.x3 - y.x3 * z.x1) +
                           x.x3 * (y.x1 * z.x2 - y.x2 * z.x1);
        CHECK(lorentz_dot(c, z) == doctest::Approx(-det).epsilon(1e-12));
    }
}

TEST_CASE("causal classification") {
    CHECK(causal_character({2, 0, 0}).tag == Causal::Timelike);
    CHECK(causal_character({2, 0, 0}).margin == doctest::Approx(-4.0));
    CHECK(causal_character({0, 3, 4}).tag == Causal::Spacelike);
    CHECK(causal_character({0, 3, 4}).margin == doctest::Approx(25.0));
    CHECK(causal_character({5, 3, 4}).tag == Causal::Null);
    CHECK(causal_character({5, 3, 4}).margin == doctest::Approx(0.0));
    const CausalCharacter zero = causal_character({0, 0, 0});
    CHECK(zero.tag == Causal::Null);
    CHECK(zero.degenerate);
}

TEST_CASE("classification is scale invariant") {
    Gen g;
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        const LorentzVec3 v = g.vec();
        const auto c = causal_character(v);
        if (c.tag == Causal::Null) continue;
        double lambda = g(0.1, 3.0) * (g() < 0 ? -1.0 : 1.0);
        CHECK(causal_character(lambda * v).tag == c.tag);
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("normalize") {
    const LorentzVec3 t = normalize({2, 0, 0});
    CHECK(t.x1 == doctest::Approx(1.0));
    const LorentzVec3 s = normalize({0, 0, 5});
    CHECK(s.x3 == doctest::Approx(1.0));
    CHECK_THROWS_AS(normalize({1, 1, 0}), Error);

    Gen g;
    for (int i = 0; i < 200; ++i) {
        const LorentzVec3 v = g.vec();
        if (std::fabs(lorentz_dot(v, v)) < 0.1) continue;  // stay well-conditioned
        const LorentzVec3 u = normalize(v);
        CHECK(std::fabs(std::fabs(lorentz_dot(u, u)) - 1.0) < 1e-14);
        const LorentzVec3 uu = normalize(u);
        CHECK(euclidean_norm(uu - u) < 1e-14);
    }
}

TEST_CASE("gram residual") {
    // N_minus coordinate frame
    CHECK(gram_residual({1, 0, 0}, {0, 1, 0}, {0, 0, 1}, -1.0, 1.0) == 0.0);
    // <h,a> = 1 violates orthogonality
    CHECK(gram_residual({1, 0, 0}, {0, 1, 0}, {0, 1, 1}, -1.0, 1.0) >= 1.0);
    // doubled q: |<2q,2q> - eps_q| = |-4 + 1| = 3
    CHECK(gram_residual({2, 0, 0}, {0, 1, 0}, {0, 0, 1}, -1.0, 1.0) ==
          doctest::Approx(3.0));
}
