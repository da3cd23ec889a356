#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "vfm/parallel_frame.hpp"

namespace vfm {

// Time integration settings for the binormal flow alpha_t = alpha_s x_L
// alpha_ss. The frame gauge c(t) is fixed to zero by construction: the
// transport seed is advanced in time with the frame time-coefficient
// matrix, which keeps theta continuous in t.
struct FlowConfig {
    double dt = 1e-3;
    long steps = 0;
    long recordEvery = 1;
    double unitSpeedTol = 1e-3;   // gate on drift growth over the initial value
    bool resampleOnDrift = false;
    double theta0 = 0.0;
    double tolCausal = kCausalTol;
    double kappaEps = kKappaEps;
    long maxResamples = 100;
};

// Recorded trajectory of a flow: snapshots of the curve, the parallel
// frames, and the principal-curvature grids (rows = time, cols = samples).
struct FlowHistory {
    std::vector<double> times;
    std::vector<DiscreteCurve> curves;
    std::vector<ParallelFrameField> frames;
    Eigen::MatrixXd k1, k2;
    std::vector<double> drift;        // per snapshot: max_i | ||alpha_s||-1 |
    std::vector<long> resampleSteps;  // step indices where a drift resample happened
    CausalCase causalCase = CausalCase::TimelikeCurve;
    double dt = 0.0;
    double ds = 0.0;
    long recordEvery = 1;
    bool fieldsPeriodic = false;
    double initialDrift = 0.0;

    Eigen::Index snapshots() const { return Eigen::Index(times.size()); }
    double recordDt() const { return dt * double(recordEvery); }
    double driftGrowth() const {
        double g = 0.0;
        for (double d : drift) g = std::max(g, d - initialDrift);
        return g;
    }
};

// Explicit-scheme stability heuristic for the dispersive flow.
inline double stableDtBound(double ds) { return 0.25 * ds * ds; }

// Discrete flow velocity: unit tangent crossed with the second-difference
// stencil, v = T x_L alpha_ss. Equals kappa B to O(ds^2) on smooth curves.
Eigen::Matrix3Xd vfeVelocity(const DiscreteCurve& c, double tolCausal = kCausalTol);

// One RK4 step of the curve positions (the position dynamics does not
// depend on the frame). Drift policy is applied by the caller / runFlow.
DiscreteCurve stepCurve(const DiscreteCurve& c, const FlowConfig& cfg);

// Time coefficient matrix of (T,E1,E2)^T under the flow in the c(t)=0
// gauge, from the spatial derivatives of the principal curvatures and
// u = 1/2(k1^2+k2^2) (timelike), 1/2(k1^2-k2^2) (timelike normal),
// -1/2(k1^2-k2^2) (timelike binormal). Semi-skew exactly.
FrameCoefficients frameTimeMatrix(CausalCase c, double k1s, double k2s, double u);

double gaugeU(CausalCase c, double k1, double k2);

// Integrates the flow and records every recordEvery steps. The transported
// frame seed is advanced through the same RK4 stages with the frame time
// matrix, so recorded frames share one smooth gauge. Throws ArcLengthDrift
// when drift growth exceeds unitSpeedTol (unless resampleOnDrift), and
// CausalDegeneracy if tangents degenerate.
FlowHistory runFlow(const DiscreteCurve& c0, const FlowConfig& cfg, CausalCase cs,
                    std::optional<Vec3> seed = std::nullopt);

}  // namespace vfm
