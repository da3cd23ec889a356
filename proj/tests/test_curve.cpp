#include <doctest.h>

#include <cmath>

#include "vfm/curve.hpp"
#include "vfm/errors.hpp"
#include "vfm/generators.hpp"

using namespace vfm;

namespace {

Eigen::Matrix3Xd circlePoints(Eigen::Index m, double R = 1.0) {
    Eigen::Matrix3Xd pts(3, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double phi = 2.0 * M_PI * double(i) / double(m);
        pts.col(i) = Vec3(0, R * std::cos(phi), R * std::sin(phi));
    }
    return pts;
}

}  // namespace

TEST_CASE("resample a straight spacelike segment") {
    Eigen::Matrix3Xd pts(3, 4);
    pts.col(0) = Vec3(0, 0.0, 0);
    pts.col(1) = Vec3(0, 1.0, 0);
    pts.col(2) = Vec3(0, 2.5, 0);
    pts.col(3) = Vec3(0, 7.0, 0);
    const DiscreteCurve c = resampleArclength(pts, 8, Topology::Open);
    CHECK(c.size() == 8);
    CHECK(c.ds == doctest::Approx(7.0 / 7.0).epsilon(1e-12));
    for (Eigen::Index i = 0; i < 8; ++i)
        CHECK(c.samples(1, i) == doctest::Approx(double(i)).epsilon(1e-9));
    CHECK(c.causalClass == CausalClass::Spacelike);
}

TEST_CASE("resample a coarse circle to 64 samples") {
    const DiscreteCurve c = resampleArclength(circlePoints(16), 64, Topology::Closed);
    CHECK(c.size() == 64);
    // analytic circumference 2*pi
    CHECK(std::abs(c.ds - 2.0 * M_PI / 64.0) / (2.0 * M_PI / 64.0) < 1e-3);
    // samples stay near the unit circle
    for (Eigen::Index i = 0; i < c.size(); ++i)
        CHECK(c.samples.col(i).tail<2>().norm() == doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("resample a timelike line") {
    Eigen::Matrix3Xd pts(3, 5);
    for (Eigen::Index i = 0; i < 5; ++i) pts.col(i) = Vec3(double(i) * 0.7, 0, 0);
    const DiscreteCurve c = resampleArclength(pts, 8, Topology::Open);
    CHECK(c.causalClass == CausalClass::Timelike);
    CHECK(c.ds == doctest::Approx(4.0 * 0.7 / 7.0).epsilon(1e-12));
}

TEST_CASE("resample rejects degenerate inputs") {
    Eigen::Matrix3Xd pts(3, 4);
    pts.col(0) = Vec3(0, 0, 0);
    pts.col(1) = Vec3(1, 1, 0);  // lightlike chord
    pts.col(2) = Vec3(2, 2, 0);
    pts.col(3) = Vec3(3, 3, 0);
    CHECK_THROWS_AS((void)resampleArclength(pts, 8, Topology::Open), CausalDegeneracy);

    Eigen::Matrix3Xd mixed(3, 4);
    mixed.col(0) = Vec3(0, 0, 0);
    mixed.col(1) = Vec3(0, 1, 0);    // spacelike chord
    mixed.col(2) = Vec3(2, 1.2, 0);  // timelike chord
    mixed.col(3) = Vec3(2.1, 3.5, 0);
    CHECK_THROWS_AS((void)resampleArclength(mixed, 8, Topology::Open), MixedCausality);
}

TEST_CASE("tangent field on analytic curves") {
    // straight spacelike line
    GeneratorParams line;
    line.kind = GeneratorKind::Line;
    line.causalCase = CausalCase::SpacelikeTimelikeBinormal;
    line.n = 16;
    line.length = 3.0;
    const DiscreteCurve cl = generateCurve(line);
    const Eigen::Matrix3Xd Tl = tangentField(cl);
    for (Eigen::Index i = 0; i < cl.size(); ++i)
        CHECK((Tl.col(i) - Vec3(0, 1, 0)).norm() < 1e-12);

    // circle alpha(s) = (0, cos s, sin s): T = (0, -sin s, cos s) + O(ds^2)
    GeneratorParams circ;
    circ.kind = GeneratorKind::Circle;
    circ.n = 256;
    const DiscreteCurve cc = generateCurve(circ);
    const Eigen::Matrix3Xd Tc = tangentField(cc);
    double maxErr = 0.0;
    for (Eigen::Index i = 0; i < cc.size(); ++i) {
        const double s = cc.s(i);
        maxErr = std::max(maxErr, (Tc.col(i) - Vec3(0, -std::sin(s), std::cos(s))).norm());
    }
    CHECK(maxErr < 2.0 * cc.ds * cc.ds);

    // timelike line: <T,T> = -1
    GeneratorParams tline;
    tline.kind = GeneratorKind::Line;
    tline.causalCase = CausalCase::TimelikeCurve;
    tline.n = 8;
    tline.length = 2.0;
    const DiscreteCurve ct = generateCurve(tline);
    const Eigen::Matrix3Xd Tt = tangentField(ct);
    for (Eigen::Index i = 0; i < ct.size(); ++i) {
        CHECK((Tt.col(i) - Vec3(1, 0, 0)).norm() < 1e-12);
        CHECK(lorentzDot(Tt.col(i), Tt.col(i)) == doctest::Approx(-1.0).epsilon(1e-12));
    }
}

TEST_CASE("curve validation") {
    GeneratorParams circ;
    circ.kind = GeneratorKind::Circle;
    circ.n = 64;
    DiscreteCurve c = generateCurve(circ);
    CHECK_NOTHROW(validateCurve(c));

    DiscreteCurve tiny = c;
    tiny.samples = c.samples.leftCols(6);
    CHECK_THROWS_AS(validateCurve(tiny), ConstraintViolation);

    DiscreteCurve bad = c;
    bad.causalClass = CausalClass::Timelike;
    CHECK_THROWS_AS(validateCurve(bad), MixedCausality);
}

TEST_CASE("quasi-periodic stencils see the period offset") {
    GeneratorParams h;
    h.kind = GeneratorKind::TimelikeHelix;
    h.causalCase = CausalCase::TimelikeCurve;
    h.a = 2.0 * std::sqrt(3.0);
    h.omega = 0.5;
    h.b = 2.0;
    h.n = 128;
    const DiscreteCurve c = generateCurve(h);
    CHECK(c.periodOffset[0] > 0.0);
    // unit-speed deviation is O(ds^2) across the seam as well
    CHECK(unitSpeedDeviation(c) < c.ds * c.ds);
}
