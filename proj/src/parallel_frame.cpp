#include "vfm/parallel_frame.hpp"

#include <cmath>

#include "vfm/errors.hpp"
#include "vfm/stencils.hpp"

namespace vfm {

const char* toString(CausalCase c) {
    switch (c) {
        case CausalCase::TimelikeCurve: return "timelike";
        case CausalCase::SpacelikeTimelikeNormal: return "spacelike-timelike-normal";
        case CausalCase::SpacelikeTimelikeBinormal: return "spacelike-timelike-binormal";
    }
    return "?";
}

CausalCase causalCaseFromString(const std::string& name) {
    if (name == "timelike") return CausalCase::TimelikeCurve;
    if (name == "spacelike-timelike-normal") return CausalCase::SpacelikeTimelikeNormal;
    if (name == "spacelike-timelike-binormal") return CausalCase::SpacelikeTimelikeBinormal;
    throw ConfigError("unknown causal case '" + name + "'");
}

std::array<int, 3> caseSigns(CausalCase c) {
    switch (c) {
        case CausalCase::TimelikeCurve: return {-1, 1, 1};
        case CausalCase::SpacelikeTimelikeNormal: return {1, -1, 1};
        case CausalCase::SpacelikeTimelikeBinormal: return {1, 1, -1};
    }
    return {1, 1, 1};
}

CausalCase inferCausalCase(const FrenetApparatus& fa) {
    if (fa.epsT < 0) return CausalCase::TimelikeCurve;
    if (fa.epsN < 0) return CausalCase::SpacelikeTimelikeNormal;
    if (fa.epsB < 0) return CausalCase::SpacelikeTimelikeBinormal;
    throw CausalDegeneracy("Frenet signs match no admissible causal case");
}

Eigen::Index frameAnchor(const DiscreteCurve& c) {
    return c.closed() ? 0 : c.size() / 2;
}

Eigen::VectorXd thetaFromTorsion(const FrenetApparatus& fa, CausalCase c, double theta0) {
    if (!fa.definedEverywhere())
        throw FrenetUndefined("theta integration requires kappa >= kappaEps everywhere");
    const double sigma = (c == CausalCase::TimelikeCurve) ? 1.0 : -1.0;
    const Eigen::Index n = fa.size();
    Eigen::VectorXd theta(n);
    theta[0] = theta0;
    for (Eigen::Index i = 1; i < n; ++i)
        theta[i] = theta[i - 1] + sigma * 0.5 * fa.ds * (fa.tau[i - 1] + fa.tau[i]);
    if (c != CausalCase::TimelikeCurve && theta.cwiseAbs().maxCoeff() > kThetaMax)
        throw HyperbolicRange("hyperbolic frame angle exceeds " + std::to_string(kThetaMax));
    return theta;
}

namespace {

void fillCurvatures(ParallelFrameField& pf, const Eigen::Matrix3Xd& Ts) {
    const auto eps = pf.signs();
    const Eigen::Index n = pf.size();
    pf.k1.resize(n);
    pf.k2.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        pf.k1[i] = double(eps[1]) * lorentzDot(Ts.col(i), pf.E1.col(i));
        pf.k2[i] = double(eps[2]) * lorentzDot(Ts.col(i), pf.E2.col(i));
    }
}

}  // namespace

ParallelFrameField frameByRotation(const FrenetApparatus& fa, const Eigen::VectorXd& theta,
                                   CausalCase c) {
    if (!fa.definedEverywhere())
        throw FrenetUndefined("rotation frame requires kappa >= kappaEps everywhere");
    if (theta.size() != fa.size())
        throw ConfigError("theta list size does not match the curve");
    const auto eps = caseSigns(c);
    if ((eps[0] < 0) != (fa.epsT < 0))
        throw CaseMismatch("causal case does not match the curve's tangent character");
    if (c != CausalCase::TimelikeCurve && theta.cwiseAbs().maxCoeff() > kThetaMax)
        throw HyperbolicRange("hyperbolic frame angle exceeds " + std::to_string(kThetaMax));

    const Eigen::Index n = fa.size();
    ParallelFrameField pf;
    pf.causalCase = c;
    pf.ds = fa.ds;
    pf.topology = fa.topology;
    pf.T = fa.T;
    pf.E1.resize(3, n);
    pf.E2.resize(3, n);
    pf.k1.resize(n);
    pf.k2.resize(n);
    pf.theta = theta;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double th = theta[i];
        if (c == CausalCase::TimelikeCurve) {
            const double ct = std::cos(th), st = std::sin(th);
            pf.E1.col(i) = ct * fa.N.col(i) - st * fa.B.col(i);
            pf.E2.col(i) = st * fa.N.col(i) + ct * fa.B.col(i);
            pf.k1[i] = fa.kappa[i] * ct;
            pf.k2[i] = fa.kappa[i] * st;
        } else {
            const double ch = std::cosh(th), sh = std::sinh(th);
            pf.E1.col(i) = ch * fa.N.col(i) + sh * fa.B.col(i);
            pf.E2.col(i) = sh * fa.N.col(i) + ch * fa.B.col(i);
            pf.k1[i] = fa.kappa[i] * ch;
            pf.k2[i] = -fa.kappa[i] * sh;
        }
    }
    pf.periodicFields = false;
    return pf;
}

ParallelFrameField frameByTransport(const DiscreteCurve& c, const Vec3& seedE1, CausalCase cs,
                                    double tolCausal) {
    const auto eps = caseSigns(cs);
    const Eigen::Index n = c.size();
    const Eigen::Index anchor = frameAnchor(c);

    ParallelFrameField pf;
    pf.causalCase = cs;
    pf.ds = c.ds;
    pf.topology = c.topology;
    pf.T = tangentField(c, tolCausal);
    if ((eps[0] < 0) != (metricSign(pf.T.col(anchor)) < 0))
        throw CaseMismatch("causal case does not match the curve's tangent character");
    pf.E1.resize(3, n);
    pf.E2.resize(3, n);

    const Eigen::Matrix3Xd Ts = fieldD1(pf.T, c.ds, c.closed());
    const double a21sign = -double(eps[0]) * double(eps[1]);  // (E1)_s = a21sign * k1 * T

    const Vec3 e1a = normalizeToSign(projectOut(seedE1, pf.T.col(anchor), eps[0]), eps[1], tolCausal);
    pf.E1.col(anchor) = e1a;

    auto k1At = [&](Eigen::Index i, const Vec3& e1) {
        return double(eps[1]) * lorentzDot(Ts.col(i), e1);
    };
    auto march = [&](Eigen::Index i, Eigen::Index j, double h) {
        const double ki = k1At(i, pf.E1.col(i));
        const Vec3 pred = pf.E1.col(i) + h * a21sign * ki * pf.T.col(i);
        const double kp = k1At(j, pred);
        Vec3 next = pf.E1.col(i) +
                    0.5 * h * a21sign * (ki * pf.T.col(i) + kp * pf.T.col(j));
        pf.E1.col(j) = normalizeToSign(projectOut(next, pf.T.col(j), eps[0]), eps[1], tolCausal);
    };
    for (Eigen::Index i = anchor; i + 1 < n; ++i) march(i, i + 1, c.ds);
    for (Eigen::Index i = anchor; i > 0; --i) march(i, i - 1, -c.ds);

    auto completeE2 = [&](Eigen::Index i) {
        pf.E2.col(i) =
            normalizeToSign(lorentzCross(pf.T.col(i), pf.E1.col(i)), eps[2], tolCausal);
    };
    for (Eigen::Index i = 0; i < n; ++i) completeE2(i);

    pf.periodicFields = false;
    if (c.closed()) {
        // one more transport step around the seam; distribute the defect
        const double ki = k1At(n - 1, pf.E1.col(n - 1));
        const Vec3 pred = pf.E1.col(n - 1) + c.ds * a21sign * ki * pf.T.col(n - 1);
        const double kp = k1At(0, pred);
        Vec3 wrapRaw = pf.E1.col(n - 1) +
                       0.5 * c.ds * a21sign * (ki * pf.T.col(n - 1) + kp * pf.T.col(0));
        const Vec3 wrap =
            normalizeToSign(projectOut(wrapRaw, pf.T.col(0), eps[0]), eps[1], tolCausal);
        double defect;
        if (cs == CausalCase::TimelikeCurve) {
            defect = std::atan2(lorentzDot(wrap, pf.E2.col(0)),
                                lorentzDot(wrap, pf.E1.col(0)));
        } else {
            defect = std::asinh(double(eps[2]) * lorentzDot(wrap, pf.E2.col(0)));
        }
        if (std::abs(defect) < 0.5) {
            for (Eigen::Index i = 1; i < n; ++i) {
                const double phi = -defect * double(i) / double(n);
                Vec3 e1i;
                if (cs == CausalCase::TimelikeCurve)
                    e1i = std::cos(phi) * pf.E1.col(i) + std::sin(phi) * pf.E2.col(i);
                else
                    e1i = std::cosh(phi) * pf.E1.col(i) + std::sinh(phi) * pf.E2.col(i);
                pf.E1.col(i) =
                    normalizeToSign(projectOut(e1i, pf.T.col(i), eps[0]), eps[1], tolCausal);
                completeE2(i);
            }
            pf.periodicFields = true;
        }
    }

    fillCurvatures(pf, Ts);
    pf.theta.resize(n);
    for (Eigen::Index i = 0; i < n; ++i)
        pf.theta[i] = recoverTheta(cs, pf.k1[i], pf.k2[i]);
    return pf;
}

Vec3 defaultSeed(const DiscreteCurve& c, CausalCase cs, double theta0, double kappaEps) {
    const auto eps = caseSigns(cs);
    const Eigen::Index anchor = frameAnchor(c);
    const FrenetApparatus fa = frenetApparatus(c, kappaEps);

    Vec3 e1, e2;
    if (fa.kappaDefined[size_t(anchor)]) {
        if ((eps[0] < 0) != (fa.epsT < 0) || inferCausalCase(fa) != cs)
            throw CaseMismatch("requested causal case does not match the curve");
        e1 = fa.N.col(anchor);
        e2 = fa.B.col(anchor);
    } else {
        const Vec3 t = fa.T.col(anchor);
        if (cs == CausalCase::TimelikeCurve) {
            e1 = normalizeToSign(projectOut(Vec3::UnitY(), t, eps[0]), 1);
        } else {
            // e0 projected onto the normal plane of a spacelike T is timelike
            const Vec3 u = normalizeToSign(projectOut(Vec3::UnitX(), t, eps[0]), -1);
            e1 = (cs == CausalCase::SpacelikeTimelikeNormal)
                     ? u
                     : normalizeToSign(lorentzCross(t, u), 1);
        }
        e2 = normalizeToSign(lorentzCross(t, e1), eps[2]);
    }
    if (cs == CausalCase::TimelikeCurve)
        return std::cos(theta0) * e1 - std::sin(theta0) * e2;
    if (std::abs(theta0) > kThetaMax)
        throw HyperbolicRange("theta0 exceeds the hyperbolic range guard");
    return std::cosh(theta0) * e1 + std::sinh(theta0) * e2;
}

FrameCoefficients frameSpaceMatrix(CausalCase c, double k1, double k2) {
    FrameCoefficients fc;
    fc.signs = caseSigns(c);
    fc.a.setZero();
    fc.a(0, 1) = k1;
    fc.a(0, 2) = k2;
    switch (c) {
        case CausalCase::TimelikeCurve:
            fc.a(1, 0) = k1;
            fc.a(2, 0) = k2;
            break;
        case CausalCase::SpacelikeTimelikeNormal:
            fc.a(1, 0) = k1;
            fc.a(2, 0) = -k2;
            break;
        case CausalCase::SpacelikeTimelikeBinormal:
            fc.a(1, 0) = -k1;
            fc.a(2, 0) = k2;
            break;
    }
    return fc;
}

double recoverTheta(CausalCase c, double k1, double k2, double kappaEps) {
    if (c == CausalCase::TimelikeCurve) {
        if (std::hypot(k1, k2) < kappaEps) return 0.0;
        return std::atan2(k2, k1);
    }
    const double q = k1 * k1 - k2 * k2;
    if (q < kappaEps * kappaEps) return 0.0;
    const double theta = std::asinh(-k2 / std::sqrt(q));
    if (std::abs(theta) > kThetaMax)
        throw HyperbolicRange("recovered hyperbolic angle exceeds the range guard");
    return theta;
}

}  // namespace vfm
