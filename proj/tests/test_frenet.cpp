#include <doctest.h>

#include <cmath>

#include "vfm/errors.hpp"
#include "vfm/frenet.hpp"
#include "vfm/generators.hpp"
#include "vfm/stencils.hpp"

using namespace vfm;

namespace {

GeneratorParams circleParams(Eigen::Index n, double R = 1.0) {
    GeneratorParams p;
    p.kind = GeneratorKind::Circle;
    p.n = n;
    p.radius = R;
    return p;
}

GeneratorParams tlHelixParams(Eigen::Index n, double a = 1.0, double om = 1.0) {
    GeneratorParams p;
    p.kind = GeneratorKind::TimelikeHelix;
    p.causalCase = CausalCase::TimelikeCurve;
    p.a = a;
    p.omega = om;
    p.b = std::sqrt(a * a * om * om + 1.0);
    p.n = n;
    return p;
}

}  // namespace

TEST_CASE("circle Frenet data: kappa=1, tau=0, timelike binormal") {
    const DiscreteCurve c = generateCurve(circleParams(256));
    const FrenetApparatus fa = frenetApparatus(c);
    CHECK(fa.epsT == 1);
    CHECK(fa.epsN == 1);
    CHECK(fa.epsB == -1);
    const double ds2 = c.ds * c.ds;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        REQUIRE(fa.kappaDefined[size_t(i)]);
        CHECK(std::abs(fa.kappa[i] - 1.0) < ds2);
        CHECK(std::abs(fa.tau[i]) < ds2);
        CHECK((fa.B.col(i) - Vec3(-1, 0, 0)).norm() < ds2);
    }
}

TEST_CASE("timelike helix Frenet data: kappa = a w^2, tau = b w") {
    const double a = 1.0, om = 1.0, b = std::sqrt(2.0);
    const DiscreteCurve c = generateCurve(tlHelixParams(512, a, om));
    const FrenetApparatus fa = frenetApparatus(c);
    CHECK(fa.epsT == -1);
    CHECK(fa.epsN == 1);
    CHECK(fa.epsB == 1);
    const double tol = 10.0 * c.ds * c.ds;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        CHECK(std::abs(fa.kappa[i] - a * om * om) < tol);
        CHECK(std::abs(fa.tau[i] - b * om) < tol);
    }
}

TEST_CASE("straight line has no Frenet frame") {
    GeneratorParams p;
    p.kind = GeneratorKind::Line;
    p.causalCase = CausalCase::SpacelikeTimelikeBinormal;
    p.n = 64;
    p.length = 2.0;
    const FrenetApparatus fa = frenetApparatus(generateCurve(p));
    for (Eigen::Index i = 0; i < fa.size(); ++i) CHECK_FALSE(fa.kappaDefined[size_t(i)]);
}

TEST_CASE("sign patterns of all analytic seeds are admissible") {
    // timelike curve
    const FrenetApparatus f1 = frenetApparatus(generateCurve(tlHelixParams(128)));
    CHECK((f1.epsT == -1 && f1.epsN == 1 && f1.epsB == 1));
    // spacelike, timelike normal
    GeneratorParams stn;
    stn.kind = GeneratorKind::SpacelikeHelix;
    stn.causalCase = CausalCase::SpacelikeTimelikeNormal;
    stn.omega = 2.0;
    stn.b = 0.35;
    stn.a = std::sqrt(1.0 - stn.b * stn.b * stn.omega * stn.omega);
    stn.n = 128;
    const FrenetApparatus f2 = frenetApparatus(generateCurve(stn));
    CHECK((f2.epsT == 1 && f2.epsN == -1 && f2.epsB == 1));
    // spacelike, timelike binormal
    GeneratorParams stb = stn;
    stb.causalCase = CausalCase::SpacelikeTimelikeBinormal;
    stb.a = std::sqrt(1.0 + stb.b * stb.b * stb.omega * stb.omega);
    const FrenetApparatus f3 = frenetApparatus(generateCurve(stb));
    CHECK((f3.epsT == 1 && f3.epsN == 1 && f3.epsB == -1));
}

TEST_CASE("extracted coefficient matrix of exact frames is semi-skew") {
    // analytic Frenet frames of the timelike helix, sampled exactly
    const double a = 1.0, om = 1.0, b = std::sqrt(2.0);
    const Eigen::Index n = 512;
    const double S = 2.0 * M_PI / om;
    const double ds = S / double(n);
    Eigen::Matrix3Xd T(3, n), N(3, n), B(3, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double s = ds * double(i);
        T.col(i) = Vec3(b, -a * om * std::sin(om * s), a * om * std::cos(om * s));
        N.col(i) = Vec3(0, -std::cos(om * s), -std::sin(om * s));
        B.col(i) = Vec3(-a * om, b * std::sin(om * s), -b * std::cos(om * s));
    }
    double worst = 0.0;
    for (Eigen::Index i : {Eigen::Index(0), n / 3, n / 2, n - 1}) {
        const FrameCoefficients fc = extractFrameCoefficients(T, N, B, ds, true, i);
        worst = std::max(worst, fc.semiSkewResidual());
        // the extracted entries approximate kappa and tau
        CHECK(std::abs(fc.a(0, 1) - a * om * om) < 10 * ds * ds);
        CHECK(std::abs(fc.a(1, 2) - b * om) < 10 * ds * ds);
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("Frenet matrix residual converges at second order") {
    // assemble the frame coefficient matrix from (kappa, tau, eps) and
    // compare against difference quotients of the computed frames
    auto residual = [](Eigen::Index n) {
        const DiscreteCurve c = generateCurve(tlHelixParams(n));
        const FrenetApparatus fa = frenetApparatus(c);
        const Eigen::Matrix3Xd Ts = fieldD1(fa.T, c.ds, true);
        const Eigen::Matrix3Xd Ns = fieldD1(fa.N, c.ds, true);
        const Eigen::Matrix3Xd Bs = fieldD1(fa.B, c.ds, true);
        double worst = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double k = fa.kappa[i], t = fa.tau[i];
            worst = std::max(worst, (Ts.col(i) - k * fa.N.col(i)).norm());
            worst = std::max(worst, (Ns.col(i) - (double(fa.epsB) * k * fa.T.col(i) +
                                                  t * fa.B.col(i))).norm());
            worst = std::max(worst, (Bs.col(i) - double(fa.epsT) * t * fa.N.col(i)).norm());
        }
        return worst;
    };
    const double r1 = residual(128), r2 = residual(256), r3 = residual(512);
    CHECK(r1 / r2 > 3.4);
    CHECK(r1 / r2 < 4.6);
    CHECK(r2 / r3 > 3.4);
    CHECK(r2 / r3 < 4.6);
}
