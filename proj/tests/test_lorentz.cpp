#include <doctest.h>

#include <random>

#include "vfm/lorentz.hpp"

using namespace vfm;

TEST_CASE("lorentz inner product") {
    CHECK(lorentzDot(Vec3(1, 0, 0), Vec3(1, 0, 0)) == -1.0);
    CHECK(lorentzDot(Vec3(0, 1, 0), Vec3(0, 1, 0)) == 1.0);
    CHECK(lorentzDot(Vec3(1, 2, 3), Vec3(4, 5, 6)) == 24.0);  // -4 + 10 + 18
    // symmetry
    CHECK(lorentzDot(Vec3(1, 2, 3), Vec3(4, 5, 6)) == lorentzDot(Vec3(4, 5, 6), Vec3(1, 2, 3)));
}

TEST_CASE("lorentz norm") {
    CHECK(lorentzNorm(Vec3(1, 0, 0)) == 1.0);
    CHECK(lorentzNorm(Vec3(1, 1, 0)) == 0.0);  // lightlike
    CHECK(lorentzNorm(Vec3(3, 4, 0)) == doctest::Approx(std::sqrt(7.0)).epsilon(1e-15));
}

TEST_CASE("lorentz cross product") {
    const Vec3 x(0.3, -1.7, 2.2);
    CHECK(lorentzCross(x, x).norm() == 0.0);
    CHECK(lorentzCross(Vec3(0, 1, 0), Vec3(0, 0, 1)) == Vec3(-1, 0, 0));
    CHECK(lorentzCross(Vec3(1, 0, 0), Vec3(0, 1, 0)) == Vec3(0, 0, 1));
}

TEST_CASE("causal classification") {
    CHECK(classifyVector(Vec3(1, 0, 0)) == CausalClass::Timelike);
    CHECK(classifyVector(Vec3(0, 1, 0)) == CausalClass::Spacelike);
    CHECK(classifyVector(Vec3(1, 1, 0)) == CausalClass::Lightlike);
}

TEST_CASE("random-input properties") {
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    auto rnd = [&] { return Vec3(dist(rng), dist(rng), dist(rng)); };

    for (int it = 0; it < 2000; ++it) {
        const Vec3 x = rnd(), y = rnd(), z = rnd();
        const Vec3 c = lorentzCross(x, y);
        const double scale = x.norm() * y.norm() * (x.norm() + y.norm()) + 1.0;

        // cross product is Lorentz-orthogonal to both factors
        CHECK(std::abs(lorentzDot(c, x)) <= 1e-12 * scale);
        CHECK(std::abs(lorentzDot(c, y)) <= 1e-12 * scale);

        // antisymmetry is exact in floating point
        const Vec3 cr = lorentzCross(y, x);
        CHECK(c[0] == -cr[0]);
        CHECK(c[1] == -cr[1]);
        CHECK(c[2] == -cr[2]);

        // bilinearity
        const double al = dist(rng), be = dist(rng);
        const Vec3 lin = lorentzCross(x, al * y + be * z);
        const Vec3 lin2 = al * lorentzCross(x, y) + be * lorentzCross(x, z);
        CHECK((lin - lin2).norm() <= 1e-12 * (scale + x.norm() * z.norm() * 20.0) *
                                         (std::abs(al) + std::abs(be) + 1.0));

        // classification is even
        CHECK(classifyVector(-x) == classifyVector(x));

        // inner product bilinearity
        const double d1 = lorentzDot(x, al * y + be * z);
        const double d2 = al * lorentzDot(x, y) + be * lorentzDot(x, z);
        CHECK(std::abs(d1 - d2) <= 1e-12 * scale * (std::abs(al) + std::abs(be) + 1.0));
    }
}

TEST_CASE("normalization helpers") {
    const Vec3 t = Vec3(1, 0, 0);
    const Vec3 v(0.5, 2.0, 0.0);
    const Vec3 p = projectOut(v, t, -1);
    CHECK(std::abs(lorentzDot(p, t)) < 1e-15);
    const Vec3 u = normalizeToSign(p, +1);
    CHECK(lorentzDot(u, u) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS((void)normalizeToSign(Vec3(1, 1, 0), +1), CausalDegeneracy);
    CHECK_THROWS_AS((void)normalizeToSign(Vec3(1, 0, 0), +1), CausalDegeneracy);
}
