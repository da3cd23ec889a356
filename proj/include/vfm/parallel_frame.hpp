#pragma once

#include <array>

#include <Eigen/Core>

#include "vfm/frenet.hpp"

namespace vfm {

// Largest admissible |theta| for the hyperbolic cases; cosh(30) ~ 5e12
// already destroys the conditioning of the frame.
inline constexpr double kThetaMax = 30.0;

// The three admissible causal configurations of (T, E1, E2).
enum class CausalCase {
    TimelikeCurve,             // eps = (-1, +1, +1), circular normal plane
    SpacelikeTimelikeNormal,   // eps = (+1, -1, +1), E1 timelike
    SpacelikeTimelikeBinormal  // eps = (+1, +1, -1), E2 timelike
};

const char* toString(CausalCase c);
CausalCase causalCaseFromString(const std::string& name);

// Metric signs (eps_T, eps_E1, eps_E2) of the case.
std::array<int, 3> caseSigns(CausalCase c);

// Identifies the case from the Frenet sign pattern.
CausalCase inferCausalCase(const FrenetApparatus& fa);

// Rotation-minimizing (parallel) normal frame with principal curvatures.
// theta is the frame angle against the Frenet frame: circular for a
// timelike curve, hyperbolic for the spacelike cases.
struct ParallelFrameField {
    Eigen::Matrix3Xd T, E1, E2;
    Eigen::VectorXd k1, k2, theta;
    CausalCase causalCase = CausalCase::TimelikeCurve;
    double ds = 0.0;
    Topology topology = Topology::Closed;
    // true when the curve is closed and the frame closes around it, so the
    // curvature fields admit periodic stencils
    bool periodicFields = false;

    Eigen::Index size() const { return T.cols(); }
    std::array<int, 3> signs() const { return caseSigns(causalCase); }
};

// Sample index the transported frame is anchored at: 0 for closed curves,
// the middle sample for open ones (keeps all anchor stencils central).
Eigen::Index frameAnchor(const DiscreteCurve& c);

// theta(s_i) = theta0 + int sigma*tau ds by the trapezoidal rule, with
// sigma = +1 for a timelike curve and -1 for both spacelike cases.
// Throws FrenetUndefined if kappa < kappaEps anywhere, HyperbolicRange if a
// hyperbolic angle exceeds kThetaMax.
Eigen::VectorXd thetaFromTorsion(const FrenetApparatus& fa, CausalCase c, double theta0);

// Frame from the Frenet apparatus by the (circular or hyperbolic) rotation
// of (N, B) through theta. Principal curvatures:
//   timelike:  k1 = kappa cos(theta),  k2 = kappa sin(theta)
//   spacelike: k1 = kappa cosh(theta), k2 = -kappa sinh(theta)
// The spacelike k2 sign is fixed by requiring the frame derivative matrices
// of frameSpaceMatrix to hold verbatim together with theta_s = -tau.
ParallelFrameField frameByRotation(const FrenetApparatus& fa, const Eigen::VectorXd& theta,
                                   CausalCase c);

// Frame by discrete parallel transport of seedE1 (given at the anchor
// sample), total in kappa: works on straight segments. E2 completes the
// frame via the Lorentz cross product; on closed curves a small closure
// defect is distributed so the frame field is exactly periodic.
ParallelFrameField frameByTransport(const DiscreteCurve& c, const Vec3& seedE1, CausalCase cs,
                                    double tolCausal = kCausalTol);

// Deterministic seed for frameByTransport: the Frenet normal rotated by
// theta0 where the Frenet frame exists at the anchor, otherwise a canonical
// basis vector of the normal plane with the causal character of the case.
Vec3 defaultSeed(const DiscreteCurve& c, CausalCase cs, double theta0 = 0.0,
                 double kappaEps = kKappaEps);

// The arclength coefficient matrix of (T, E1, E2)^T for the case:
//   timelike:  rows (0,k1,k2), ( k1,0,0), ( k2,0,0)
//   st-normal: rows (0,k1,k2), ( k1,0,0), (-k2,0,0)
//   st-binormal: rows (0,k1,k2), (-k1,0,0), ( k2,0,0)
// Semi-skew (eps_j a_ij + eps_i a_ji = 0) exactly by construction.
FrameCoefficients frameSpaceMatrix(CausalCase c, double k1, double k2);

// Frame angle recovered from principal curvatures (0 where kappa ~ 0).
double recoverTheta(CausalCase c, double k1, double k2, double kappaEps = kKappaEps);

}  // namespace vfm
