#pragma once

#include <Eigen/Core>

#include <cmath>

#include "vfm/errors.hpp"

// Vector algebra of Minkowski 3-space E^3_1: metric signature (-,+,+) with
// the time component stored at index 0. All functions accept arbitrary Eigen
// expressions of size 3 and are pure.

namespace vfm {

using Vec3 = Eigen::Vector3d;

inline constexpr double kCausalTol = 1e-10;

enum class CausalClass { Spacelike, Timelike, Lightlike };

inline const char* toString(CausalClass c) {
    switch (c) {
        case CausalClass::Spacelike: return "spacelike";
        case CausalClass::Timelike: return "timelike";
        case CausalClass::Lightlike: return "lightlike";
    }
    return "?";
}

// <x,y>_L = -x0 y0 + x1 y1 + x2 y2
template <typename A, typename B>
typename A::Scalar lorentzDot(const Eigen::MatrixBase<A>& x, const Eigen::MatrixBase<B>& y) {
    return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

// ||x|| = sqrt(|<x,x>_L|); zero exactly for lightlike directions.
template <typename A>
typename A::Scalar lorentzNorm(const Eigen::MatrixBase<A>& x) {
    using std::abs;
    using std::sqrt;
    return sqrt(abs(lorentzDot(x, x)));
}

// Lorentzian vector product; bilinear, antisymmetric, and <x (x) y, x>_L = 0.
template <typename A, typename B>
Eigen::Matrix<typename A::Scalar, 3, 1> lorentzCross(const Eigen::MatrixBase<A>& x,
                                                     const Eigen::MatrixBase<B>& y) {
    return {-x[1] * y[2] + x[2] * y[1],
            x[2] * y[0] - x[0] * y[2],
            x[0] * y[1] - x[1] * y[0]};
}

template <typename A>
CausalClass classifyVector(const Eigen::MatrixBase<A>& v, double tolCausal = kCausalTol) {
    const double q = lorentzDot(v, v);
    if (q > tolCausal) return CausalClass::Spacelike;
    if (q < -tolCausal) return CausalClass::Timelike;
    return CausalClass::Lightlike;
}

// Metric sign eps_X = <X,X>_L of a unit non-lightlike vector.
template <typename A>
int metricSign(const Eigen::MatrixBase<A>& unitVec) {
    return lorentzDot(unitVec, unitVec) < 0 ? -1 : +1;
}

// Removes the component of v along the unit vector u (metric sign epsU).
template <typename A, typename B>
Vec3 projectOut(const Eigen::MatrixBase<A>& v, const Eigen::MatrixBase<B>& u, int epsU) {
    return v - double(epsU) * lorentzDot(v, u) * u;
}

// Scales v to unit Lorentz norm, requiring <v,v>_L to carry the expected
// metric sign. Throws CausalDegeneracy if v is (numerically) lightlike or of
// the wrong causal character.
template <typename A>
Vec3 normalizeToSign(const Eigen::MatrixBase<A>& v, int expectedSign,
                     double tolCausal = kCausalTol) {
    const double q = lorentzDot(v, v);
    if (double(expectedSign) * q <= tolCausal)
        throw CausalDegeneracy("cannot normalize: vector lightlike or of wrong causal type");
    return v / std::sqrt(std::abs(q));
}

}  // namespace vfm
