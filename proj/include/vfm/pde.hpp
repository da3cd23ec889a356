#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "vfm/flow.hpp"

namespace vfm {

// Space-time grids of the principal curvatures (rows = time, cols = s).
struct CurvatureGrids {
    Eigen::MatrixXd k1, k2;
    double ds = 0.0;
    double dtRec = 0.0;
    bool sPeriodic = false;
    CausalCase causalCase = CausalCase::TimelikeCurve;

    static CurvatureGrids fromHistory(const FlowHistory& h);
};

// q = k1 + i k2 on the grid of a timelike run.
struct ComplexField {
    Eigen::MatrixXcd q;
    double ds = 0.0, dtRec = 0.0;
    bool sPeriodic = false;
};

// (q, r) = ((k1+k2)/sqrt2, -/+ (k1-k2)/sqrt2) for the spacelike cases
// (minus for a timelike principal normal, plus for a timelike binormal).
struct HeatPair {
    Eigen::MatrixXd q, r;
    double ds = 0.0, dtRec = 0.0;
    bool sPeriodic = false;
};

ComplexField toNlsField(const FlowHistory& h);
ComplexField toNlsField(const CurvatureGrids& g);
HeatPair toHeatPair(const FlowHistory& h);
HeatPair toHeatPair(const CurvatureGrids& g);

// Norms over the stencil-valid interior. l2 is the root-mean-square; the
// normalized variants divide by the max field magnitude on the same
// interior, which makes them invariant under constant gauge rotations.
struct ResidualReport {
    double l2 = 0.0;
    double linf = 0.0;
    double fieldScale = 0.0;
    double l2Normalized = 0.0;
    double linfNormalized = 0.0;
    Eigen::Index rows = 0, cols = 0;
    Eigen::Index sMargin = 0;
    bool sPeriodic = false;
};

// Columns masked per side for an open-curve history: the finite-difference
// domain of dependence of the boundary over the whole run plus stencil
// margins. Periodic histories need no mask.
Eigen::Index domainOfDependenceMargin(long totalSteps);
Eigen::Index defaultMask(const FlowHistory& h);

struct NlsResidual {
    Eigen::MatrixXcd res;  // rows = interior times, cols = interior samples
    ResidualReport report;
};

// Residual of i q_t + q_ss - 1/2 |q|^2 q with centered second-order
// stencils; |q|^2 is the squared complex modulus k1^2 + k2^2.
NlsResidual nlsResidual(const ComplexField& f, Eigen::Index sMargin);

struct HeatResidual {
    Eigen::MatrixXd resQ, resR;  // q_t - q_ss - q^2 r and r_t + r_ss + r^2 q
    ResidualReport reportQ, reportR, joint;
};

HeatResidual heatResidual(const HeatPair& p, Eigen::Index sMargin);

// Residuals of the per-case principal-curvature evolution laws:
//   timelike:            (k1)_t = -(k2)_ss + 1/2(k1^2+k2^2) k2
//                        (k2)_t =  (k1)_ss - 1/2(k1^2+k2^2) k1
//   timelike normal:     (k1)_t =  (k2)_ss - 1/2(k1^2-k2^2) k2
//                        (k2)_t =  (k1)_ss - 1/2(k1^2-k2^2) k1
//   timelike binormal:   (k1)_t =  (k2)_ss + 1/2(k1^2-k2^2) k2
//                        (k2)_t =  (k1)_ss + 1/2(k1^2-k2^2) k1
struct CurvatureResidual {
    Eigen::MatrixXd r1, r2;
    ResidualReport report1, report2, joint;
};

CurvatureResidual curvatureEvolutionResidual(const CurvatureGrids& g, Eigen::Index sMargin);
CurvatureResidual curvatureEvolutionResidual(const FlowHistory& h, Eigen::Index sMargin);

// Least-squares slope of log(err) against log(h) over >= 3 refinement levels.
double estimateOrder(const std::vector<double>& h, const std::vector<double>& err);

}  // namespace vfm
