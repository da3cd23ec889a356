#include <doctest.h>

#include <cmath>

#include "vfm/errors.hpp"
#include "vfm/flow.hpp"
#include "vfm/generators.hpp"
#include "vfm/stencils.hpp"

using namespace vfm;

namespace {

GeneratorParams circleParams(Eigen::Index n) {
    GeneratorParams p;
    p.kind = GeneratorKind::Circle;
    p.n = n;
    return p;
}

GeneratorParams tlHelixParams(Eigen::Index n) {
    GeneratorParams p;
    p.kind = GeneratorKind::TimelikeHelix;
    p.causalCase = CausalCase::TimelikeCurve;
    p.a = 2.0 * std::sqrt(3.0);
    p.omega = 0.5;
    p.b = 2.0;
    p.n = n;
    return p;
}

}  // namespace

TEST_CASE("a straight line is a fixed point of the flow") {
    GeneratorParams p;
    p.kind = GeneratorKind::Line;
    p.causalCase = CausalCase::SpacelikeTimelikeBinormal;
    p.n = 32;
    p.length = 4.0;
    const DiscreteCurve c0 = generateCurve(p);
    FlowConfig cfg;
    cfg.dt = 1e-3;
    DiscreteCurve c = c0;
    for (int i = 0; i < 100; ++i) c = stepCurve(c, cfg);
    CHECK((c.samples - c0.samples).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("circle flow velocity is the constant timelike binormal direction") {
    const DiscreteCurve c = generateCurve(circleParams(256));
    const Eigen::Matrix3Xd v = vfeVelocity(c);
    // v = kappa B = (-1,0,0) up to O(ds^2), identical at every sample
    const double expectMag = 1.0 - c.ds * c.ds / 12.0;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        CHECK((v.col(i) - v.col(0)).norm() < 1e-12);
        CHECK((v.col(i) - Vec3(-1, 0, 0)).norm() < c.ds * c.ds);
    }
    CHECK(std::abs(-v(0, 0) - expectMag) < 1e-6);
}

TEST_CASE("timelike helix flow velocity has constant Lorentz norm kappa") {
    const DiscreteCurve c = generateCurve(tlHelixParams(256));
    const Eigen::Matrix3Xd v = vfeVelocity(c);
    const double kappa = 2.0 * std::sqrt(3.0) * 0.25;  // a w^2
    for (Eigen::Index i = 0; i < c.size(); ++i)
        CHECK(std::abs(lorentzNorm(v.col(i)) - kappa) < 5.0 * c.ds * c.ds);
}

TEST_CASE("circle translates rigidly over a short horizon") {
    const DiscreteCurve c0 = generateCurve(circleParams(128));
    FlowConfig cfg;
    cfg.dt = 0.15 * c0.ds * c0.ds;
    cfg.steps = 10;
    cfg.recordEvery = 10;
    const Vec3 v0 = vfeVelocity(c0).col(0);
    const FlowHistory h = runFlow(c0, cfg, CausalCase::SpacelikeTimelikeBinormal);
    const double T = cfg.dt * double(cfg.steps);
    const Eigen::Matrix3Xd expected = c0.samples.colwise() + Vec3(T * v0);
    CHECK((h.curves.back().samples - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(h.driftGrowth() < 1e-13);
}

TEST_CASE("timelike helix keeps kappa and tau under the flow") {
    const DiscreteCurve c0 = generateCurve(tlHelixParams(128));
    FlowConfig cfg;
    cfg.dt = 0.2 * c0.ds * c0.ds;
    cfg.steps = 200;
    cfg.recordEvery = 200;
    const FlowHistory h = runFlow(c0, cfg, CausalCase::TimelikeCurve);
    const FrenetApparatus fa = frenetApparatus(h.curves.back());
    const double kappa = 2.0 * std::sqrt(3.0) * 0.25, tau = 1.0;
    for (Eigen::Index i = 0; i < fa.size(); ++i) {
        CHECK(std::abs(fa.kappa[i] - kappa) < 10.0 * c0.ds * c0.ds);
        CHECK(std::abs(fa.tau[i] - tau) < 10.0 * c0.ds * c0.ds);
    }
    CHECK(h.driftGrowth() < 1e-11);
}

TEST_CASE("frame time matrices") {
    // constant curvatures, timelike case: zero first row/column, u = (k1^2+k2^2)/2
    {
        const double u = gaugeU(CausalCase::TimelikeCurve, 1.0, 2.0);
        CHECK(u == 2.5);
        const FrameCoefficients fc = frameTimeMatrix(CausalCase::TimelikeCurve, 0.0, 0.0, u);
        CHECK(fc.a.row(0).cwiseAbs().maxCoeff() == 0.0);
        CHECK(fc.a.col(0).cwiseAbs().maxCoeff() == 0.0);
        CHECK(fc.a(1, 2) == 2.5);
        CHECK(fc.a(2, 1) == -2.5);
        CHECK(fc.semiSkewResidual() == 0.0);
    }
    // timelike binormal case: u = -(k1^2-k2^2)/2 = -1/2 for k1=1, k2=0
    CHECK(gaugeU(CausalCase::SpacelikeTimelikeBinormal, 1.0, 0.0) == -0.5);
    CHECK(gaugeU(CausalCase::SpacelikeTimelikeNormal, 1.0, 0.0) == 0.5);
    // zero curvature data gives the zero matrix
    CHECK(frameTimeMatrix(CausalCase::SpacelikeTimelikeNormal, 0.0, 0.0, 0.0)
              .a.cwiseAbs()
              .maxCoeff() == 0.0);
    // semi-skewness for generic entries, all cases
    for (CausalCase cs : {CausalCase::TimelikeCurve, CausalCase::SpacelikeTimelikeNormal,
                          CausalCase::SpacelikeTimelikeBinormal})
        CHECK(frameTimeMatrix(cs, 0.3, -1.7, 0.9).semiSkewResidual() == 0.0);
}

TEST_CASE("recorded frames satisfy the time evolution system") {
    const DiscreteCurve c0 = generateCurve(tlHelixParams(128));
    FlowConfig cfg;
    cfg.dt = 0.2 * c0.ds * c0.ds;
    cfg.steps = 40;
    cfg.recordEvery = 4;
    const FlowHistory h = runFlow(c0, cfg, CausalCase::TimelikeCurve);
    const double dtr = h.recordDt();
    const Eigen::Index n = c0.size();

    double worstFrame = 0.0, worstTangent = 0.0, worstU = 0.0;
    for (size_t j = 1; j + 1 < h.frames.size(); ++j) {
        const ParallelFrameField& prev = h.frames[j - 1];
        const ParallelFrameField& cur = h.frames[j];
        const ParallelFrameField& next = h.frames[j + 1];
        const Eigen::VectorXd k1s = scalarD1(cur.k1, h.ds, cur.periodicFields);
        const Eigen::VectorXd k2s = scalarD1(cur.k2, h.ds, cur.periodicFields);
        std::vector<double> uRec(size_t(n));
        for (Eigen::Index i = 0; i < n; ++i) {
            const FrameCoefficients At = frameTimeMatrix(
                h.causalCase, k1s[i], k2s[i], gaugeU(h.causalCase, cur.k1[i], cur.k2[i]));
            Eigen::Matrix3d F, D;
            F.row(0) = cur.T.col(i).transpose();
            F.row(1) = cur.E1.col(i).transpose();
            F.row(2) = cur.E2.col(i).transpose();
            D.row(0) = ((next.T.col(i) - prev.T.col(i)) / (2 * dtr)).transpose();
            D.row(1) = ((next.E1.col(i) - prev.E1.col(i)) / (2 * dtr)).transpose();
            D.row(2) = ((next.E2.col(i) - prev.E2.col(i)) / (2 * dtr)).transpose();
            worstFrame = std::max(worstFrame, (D - At.a * F).cwiseAbs().maxCoeff());
            // tangent evolution: T_t = -(k2)_s E1 + (k1)_s E2 for the timelike case
            const Vec3 tt = -k2s[i] * cur.E1.col(i) + k1s[i] * cur.E2.col(i);
            worstTangent = std::max(worstTangent, (D.row(0).transpose() - tt).norm());
            // u recovered from the recorded frames matches the gauge formula
            const Vec3 e1t = (next.E1.col(i) - prev.E1.col(i)) / (2 * dtr);
            uRec[size_t(i)] = lorentzDot(e1t, cur.E2.col(i)) * double(caseSigns(h.causalCase)[2]);
            worstU = std::max(worstU, std::abs(uRec[size_t(i)] -
                                               gaugeU(h.causalCase, cur.k1[i], cur.k2[i])));
        }
    }
    const double budget = 20.0 * (h.ds * h.ds + dtr * dtr);
    CHECK(worstFrame < budget);
    CHECK(worstTangent < budget);
    CHECK(worstU < budget);
}

TEST_CASE("drift gate aborts an unstable spacelike run") {
    // the backward-heat component of the spacelike flow amplifies roundoff
    // at rate ~4/ds^2; with this dt the run must trip the drift gate fast
    const DiscreteCurve c0 = generateCurve(circleParams(256));
    FlowConfig cfg;
    cfg.dt = 1e-3;  // far above the 0.25 ds^2 heuristic
    cfg.steps = 1000;
    cfg.recordEvery = 100;
    CHECK(cfg.dt > stableDtBound(c0.ds));
    CHECK_THROWS_AS((void)runFlow(c0, cfg, CausalCase::SpacelikeTimelikeBinormal),
                    ArcLengthDrift);
}

TEST_CASE("resample-on-drift logs events and lets a benign run finish") {
    const DiscreteCurve c0 = generateCurve(tlHelixParams(128));
    FlowConfig cfg;
    cfg.dt = 0.2 * c0.ds * c0.ds;
    cfg.steps = 40;
    cfg.recordEvery = 40;
    cfg.unitSpeedTol = 1e-13;  // artificially tight so the gate trips
    cfg.resampleOnDrift = true;
    const FlowHistory h = runFlow(c0, cfg, CausalCase::TimelikeCurve);
    CHECK(h.resampleSteps.size() > 0);
    CHECK(h.snapshots() == 2);

    // without the resample policy the same run aborts
    cfg.resampleOnDrift = false;
    CHECK_THROWS_AS((void)runFlow(c0, cfg, CausalCase::TimelikeCurve), ArcLengthDrift);
}

TEST_CASE("flow config validation") {
    const DiscreteCurve c0 = generateCurve(circleParams(64));
    FlowConfig bad;
    bad.dt = -1.0;
    CHECK_THROWS_AS((void)runFlow(c0, bad, CausalCase::SpacelikeTimelikeBinormal), ConfigError);
}
