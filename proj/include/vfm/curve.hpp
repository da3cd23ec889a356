#pragma once

#include <Eigen/Core>

#include "vfm/lorentz.hpp"

namespace vfm {

enum class Topology { Closed, Open };

// Arclength-sampled non-lightlike curve. Samples are columns of a 3xN
// matrix; ds is the uniform arclength step. A Closed curve may be
// quasi-periodic: alpha(s + n*ds) = alpha(s) + periodOffset, with
// periodOffset = 0 for a genuinely closed loop. sStart is the arclength
// coordinate of sample 0 (open generators use symmetric domains).
struct DiscreteCurve {
    Eigen::Matrix3Xd samples;
    double ds = 0.0;
    Topology topology = Topology::Closed;
    CausalClass causalClass = CausalClass::Spacelike;
    Vec3 periodOffset = Vec3::Zero();
    double sStart = 0.0;

    Eigen::Index size() const { return samples.cols(); }
    bool closed() const { return topology == Topology::Closed; }
    double length() const {
        return closed() ? ds * double(size()) : ds * double(size() - 1);
    }
    double s(Eigen::Index i) const { return sStart + ds * double(i); }
};

// Raw (unnormalized) central-difference tangents; one-sided second order at
// open ends, quasi-periodic wraparound otherwise.
Eigen::Matrix3Xd rawTangentField(const DiscreteCurve& c);

// Unit tangent field T(s_i). Throws CausalDegeneracy when a raw tangent is
// lightlike within tolCausal.
Eigen::Matrix3Xd tangentField(const DiscreteCurve& c, double tolCausal = kCausalTol);

// max_i | ||alpha_s(s_i)|| - 1 |, the discrete unit-speed deviation.
double unitSpeedDeviation(const DiscreteCurve& c);

// Structural validation: >= 8 finite samples, ds > 0, uniform non-lightlike
// chord causality. Throws MixedCausality / CausalDegeneracy / ConstraintViolation.
void validateCurve(const DiscreteCurve& c, double tolCausal = kCausalTol);

// Resamples a polyline to n samples approximately equispaced in Lorentzian
// arclength, using a Catmull-Rom interpolant with Gauss-Legendre arclength
// quadrature and Newton inversion. For Closed topology the polyline may be
// quasi-periodic with the given offset appended after the last point.
DiscreteCurve resampleArclength(const Eigen::Matrix3Xd& points, Eigen::Index n,
                                Topology topology, const Vec3& periodOffset = Vec3::Zero(),
                                double sStart = 0.0, double tolCausal = kCausalTol);

}  // namespace vfm
