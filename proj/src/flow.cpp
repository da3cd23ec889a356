#include "vfm/flow.hpp"

#include <cmath>
#include <iostream>

#include "vfm/errors.hpp"
#include "vfm/stencils.hpp"

namespace vfm {

Eigen::Matrix3Xd vfeVelocity(const DiscreteCurve& c, double tolCausal) {
    const Eigen::Matrix3Xd T = tangentField(c, tolCausal);
    const Eigen::Matrix3Xd acc = fieldD2(c.samples, c.ds, c.closed(), c.periodOffset);
    Eigen::Matrix3Xd v(3, c.size());
    for (Eigen::Index i = 0; i < c.size(); ++i)
        v.col(i) = lorentzCross(T.col(i), acc.col(i));
    return v;
}

FrameCoefficients frameTimeMatrix(CausalCase c, double k1s, double k2s, double u) {
    FrameCoefficients fc;
    fc.signs = caseSigns(c);
    fc.a.setZero();
    switch (c) {
        case CausalCase::TimelikeCurve:
            fc.a(0, 1) = -k2s;
            fc.a(0, 2) = k1s;
            fc.a(1, 0) = -k2s;
            fc.a(1, 2) = u;
            fc.a(2, 0) = k1s;
            fc.a(2, 1) = -u;
            break;
        case CausalCase::SpacelikeTimelikeNormal:
            fc.a(0, 1) = k2s;
            fc.a(0, 2) = k1s;
            fc.a(1, 0) = k2s;
            fc.a(1, 2) = u;
            fc.a(2, 0) = -k1s;
            fc.a(2, 1) = u;
            break;
        case CausalCase::SpacelikeTimelikeBinormal:
            fc.a(0, 1) = k2s;
            fc.a(0, 2) = k1s;
            fc.a(1, 0) = -k2s;
            fc.a(1, 2) = u;
            fc.a(2, 0) = k1s;
            fc.a(2, 1) = u;
            break;
    }
    return fc;
}

double gaugeU(CausalCase c, double k1, double k2) {
    switch (c) {
        case CausalCase::TimelikeCurve: return 0.5 * (k1 * k1 + k2 * k2);
        case CausalCase::SpacelikeTimelikeNormal: return 0.5 * (k1 * k1 - k2 * k2);
        case CausalCase::SpacelikeTimelikeBinormal: return -0.5 * (k1 * k1 - k2 * k2);
    }
    return 0.0;
}

namespace {

Eigen::Matrix3Xd velocityAt(const DiscreteCurve& shape, const Eigen::Matrix3Xd& pos,
                            double tolCausal) {
    DiscreteCurve tmp = shape;
    tmp.samples = pos;
    return vfeVelocity(tmp, tolCausal);
}

// d/dt of the transport seed at the anchor: row 2 of the time matrix,
// (E1)_t = a21 T + u E2, evaluated from the frame of the stage positions.
Vec3 seedVelocity(const DiscreteCurve& shape, const Eigen::Matrix3Xd& pos, const Vec3& seed,
                  CausalCase cs, const FlowConfig& cfg) {
    DiscreteCurve tmp = shape;
    tmp.samples = pos;
    const ParallelFrameField pf = frameByTransport(tmp, seed, cs, cfg.tolCausal);
    const Eigen::Index m = frameAnchor(tmp);
    const Eigen::VectorXd k2s = scalarD1(pf.k2, tmp.ds, pf.periodicFields);
    const double u = gaugeU(cs, pf.k1[m], pf.k2[m]);
    const double a21 = (cs == CausalCase::SpacelikeTimelikeNormal) ? k2s[m] : -k2s[m];
    return a21 * pf.T.col(m) + u * pf.E2.col(m);
}

struct StageState {
    Eigen::Matrix3Xd pos;
    Vec3 seed;
};

// Coupled RK4 step of (positions, frame seed).
StageState rk4Step(const DiscreteCurve& shape, const StageState& y, CausalCase cs,
                   const FlowConfig& cfg) {
    const double dt = cfg.dt;
    const Eigen::Matrix3Xd kp1 = velocityAt(shape, y.pos, cfg.tolCausal);
    const Vec3 ke1 = seedVelocity(shape, y.pos, y.seed, cs, cfg);
    const Eigen::Matrix3Xd p2 = y.pos + 0.5 * dt * kp1;
    const Eigen::Matrix3Xd kp2 = velocityAt(shape, p2, cfg.tolCausal);
    const Vec3 ke2 = seedVelocity(shape, p2, y.seed + 0.5 * dt * ke1, cs, cfg);
    const Eigen::Matrix3Xd p3 = y.pos + 0.5 * dt * kp2;
    const Eigen::Matrix3Xd kp3 = velocityAt(shape, p3, cfg.tolCausal);
    const Vec3 ke3 = seedVelocity(shape, p3, y.seed + 0.5 * dt * ke2, cs, cfg);
    const Eigen::Matrix3Xd p4 = y.pos + dt * kp3;
    const Eigen::Matrix3Xd kp4 = velocityAt(shape, p4, cfg.tolCausal);
    const Vec3 ke4 = seedVelocity(shape, p4, y.seed + dt * ke3, cs, cfg);

    StageState out;
    out.pos = y.pos + (dt / 6.0) * (kp1 + 2.0 * kp2 + 2.0 * kp3 + kp4);
    out.seed = y.seed + (dt / 6.0) * (ke1 + 2.0 * ke2 + 2.0 * ke3 + ke4);
    return out;
}

}  // namespace

DiscreteCurve stepCurve(const DiscreteCurve& c, const FlowConfig& cfg) {
    const double dt = cfg.dt;
    DiscreteCurve out = c;
    const Eigen::Matrix3Xd k1 = velocityAt(c, c.samples, cfg.tolCausal);
    const Eigen::Matrix3Xd k2 = velocityAt(c, c.samples + 0.5 * dt * k1, cfg.tolCausal);
    const Eigen::Matrix3Xd k3 = velocityAt(c, c.samples + 0.5 * dt * k2, cfg.tolCausal);
    const Eigen::Matrix3Xd k4 = velocityAt(c, c.samples + dt * k3, cfg.tolCausal);
    out.samples = c.samples + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!out.samples.allFinite())
        throw CausalDegeneracy("flow produced non-finite positions");
    return out;
}

FlowHistory runFlow(const DiscreteCurve& c0, const FlowConfig& cfg, CausalCase cs,
                    std::optional<Vec3> seed) {
    validateCurve(c0, cfg.tolCausal);
    if (cfg.dt <= 0.0) throw ConfigError("dt must be positive");
    if (cfg.steps < 0) throw ConfigError("steps must be non-negative");
    if (cfg.recordEvery < 1) throw ConfigError("recordEvery must be >= 1");
    if (cfg.dt > stableDtBound(c0.ds))
        std::cerr << "warning: dt=" << cfg.dt << " exceeds the stability heuristic 0.25*ds^2="
                  << stableDtBound(c0.ds) << "\n";

    FlowHistory h;
    h.causalCase = cs;
    h.dt = cfg.dt;
    h.ds = c0.ds;
    h.recordEvery = cfg.recordEvery;

    DiscreteCurve shape = c0;
    StageState y{c0.samples, seed ? *seed : defaultSeed(c0, cs, cfg.theta0, cfg.kappaEps)};
    const auto eps = caseSigns(cs);

    h.initialDrift = unitSpeedDeviation(c0);
    double baselineDrift = h.initialDrift;

    auto record = [&](double t) {
        DiscreteCurve cur = shape;
        cur.samples = y.pos;
        h.times.push_back(t);
        h.drift.push_back(unitSpeedDeviation(cur));
        h.frames.push_back(frameByTransport(cur, y.seed, cs, cfg.tolCausal));
        h.curves.push_back(std::move(cur));
    };
    record(0.0);

    long resamples = 0;
    for (long j = 1; j <= cfg.steps; ++j) {
        y = rk4Step(shape, y, cs, cfg);
        if (!y.pos.allFinite() || !y.seed.allFinite())
            throw CausalDegeneracy("flow diverged to non-finite values at step " +
                                   std::to_string(j));
        // keep the seed in the normal plane at the anchor, unit and of the
        // right causal character
        {
            DiscreteCurve cur = shape;
            cur.samples = y.pos;
            const Eigen::Matrix3Xd T = tangentField(cur, cfg.tolCausal);
            const Eigen::Index m = frameAnchor(cur);
            y.seed = normalizeToSign(projectOut(y.seed, T.col(m), eps[0]), eps[1], cfg.tolCausal);

            const double dr = unitSpeedDeviation(cur);
            if (dr - baselineDrift > cfg.unitSpeedTol) {
                if (!cfg.resampleOnDrift)
                    throw ArcLengthDrift("unit-speed drift growth " +
                                         std::to_string(dr - baselineDrift) + " at step " +
                                         std::to_string(j) + " (t=" + std::to_string(j * cfg.dt) +
                                         ") exceeds " + std::to_string(cfg.unitSpeedTol));
                if (++resamples > cfg.maxResamples)
                    throw ArcLengthDrift("drift persists after " + std::to_string(cfg.maxResamples) +
                                         " resamples");
                DiscreteCurve re = resampleArclength(y.pos, cur.size(), cur.topology,
                                                     cur.periodOffset, cur.sStart, cfg.tolCausal);
                shape = re;
                y.pos = re.samples;
                baselineDrift = unitSpeedDeviation(re);
                h.resampleSteps.push_back(j);
                const Eigen::Matrix3Xd T2 = tangentField(re, cfg.tolCausal);
                y.seed = normalizeToSign(projectOut(y.seed, T2.col(frameAnchor(re)), eps[0]),
                                         eps[1], cfg.tolCausal);
            }
        }
        if (j % cfg.recordEvery == 0) record(double(j) * cfg.dt);
    }

    const Eigen::Index J = h.snapshots();
    const Eigen::Index n = c0.size();
    h.k1.resize(J, n);
    h.k2.resize(J, n);
    h.fieldsPeriodic = true;
    for (Eigen::Index j = 0; j < J; ++j) {
        h.k1.row(j) = h.frames[size_t(j)].k1.transpose();
        h.k2.row(j) = h.frames[size_t(j)].k2.transpose();
        h.fieldsPeriodic = h.fieldsPeriodic && h.frames[size_t(j)].periodicFields;
    }
    return h;
}

}  // namespace vfm
