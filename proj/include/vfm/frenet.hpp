#pragma once

#include <Eigen/Core>

#include <vector>

#include "vfm/curve.hpp"

namespace vfm {

inline constexpr double kKappaEps = 1e-9;
inline constexpr double kFrameTol = 1e-8;

// Frenet apparatus (T, N, B, kappa, tau) with metric signs. Where the
// curvature falls below kappaEps the frame is undefined: kappaDefined(i) is
// false and N, B, tau are left unset at that sample. The metric signs are
// uniform along an admissible curve; exactly one of epsT, epsN, epsB is -1.
struct FrenetApparatus {
    Eigen::Matrix3Xd T, N, B;
    Eigen::VectorXd kappa, tau;
    std::vector<bool> kappaDefined;
    int epsT = 1, epsN = 1, epsB = 1;
    double ds = 0.0;
    Topology topology = Topology::Closed;

    Eigen::Index size() const { return T.cols(); }
    bool definedEverywhere() const {
        for (bool d : kappaDefined)
            if (!d) return false;
        return true;
    }
};

// Builds the Frenet apparatus from second-order stencils: kappa = ||T_s||,
// N = T_s/||T_s||, B = T x_L N, tau = eps_B <N_s, B>_L. Throws
// CausalDegeneracy if N or B is lightlike (curve outside the admissible
// causal cases) or MixedCausality if signs flip along the curve.
FrenetApparatus frenetApparatus(const DiscreteCurve& c, double kappaEps = kKappaEps,
                                double tolCausal = kCausalTol);

// Coefficient matrix A of an orthonormal frame field at one sample,
// extracted by metric projections of central differences:
// a_ij = eps_j <(X_i)_s, X_j>_L. Used to test semi-skewness numerically.
struct FrameCoefficients {
    Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
    std::array<int, 3> signs{1, 1, 1};

    // max_ij | eps_j a_ij + eps_i a_ji |
    double semiSkewResidual() const {
        double r = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r = std::max(r, std::abs(double(signs[size_t(j)]) * a(i, j) +
                                         double(signs[size_t(i)]) * a(j, i)));
        return r;
    }
};

FrameCoefficients extractFrameCoefficients(const Eigen::Matrix3Xd& x1,
                                           const Eigen::Matrix3Xd& x2,
                                           const Eigen::Matrix3Xd& x3, double ds, bool periodic,
                                           Eigen::Index i);

}  // namespace vfm
