#include "vfm/curve.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vfm/errors.hpp"
#include "vfm/stencils.hpp"

namespace vfm {

Eigen::Matrix3Xd rawTangentField(const DiscreteCurve& c) {
    return fieldD1(c.samples, c.ds, c.closed(), c.periodOffset);
}

Eigen::Matrix3Xd tangentField(const DiscreteCurve& c, double tolCausal) {
    Eigen::Matrix3Xd T = rawTangentField(c);
    for (Eigen::Index i = 0; i < T.cols(); ++i) {
        const double q = lorentzDot(T.col(i), T.col(i));
        if (std::abs(q) < tolCausal)
            throw CausalDegeneracy("tangent at sample " + std::to_string(i) +
                                   " is lightlike within tolerance");
        T.col(i) /= std::sqrt(std::abs(q));
    }
    return T;
}

double unitSpeedDeviation(const DiscreteCurve& c) {
    const Eigen::Matrix3Xd raw = rawTangentField(c);
    double dev = 0.0;
    for (Eigen::Index i = 0; i < raw.cols(); ++i)
        dev = std::max(dev, std::abs(lorentzNorm(raw.col(i)) - 1.0));
    return dev;
}

void validateCurve(const DiscreteCurve& c, double tolCausal) {
    if (c.size() < 8) throw ConstraintViolation("curve needs at least 8 samples");
    if (!(c.ds > 0.0)) throw ConstraintViolation("curve step ds must be positive");
    if (!c.samples.allFinite()) throw ConstraintViolation("curve has non-finite samples");
    const Eigen::Matrix3Xd raw = rawTangentField(c);
    CausalClass cls = CausalClass::Lightlike;
    for (Eigen::Index i = 0; i < raw.cols(); ++i) {
        const CausalClass ci = classifyVector(raw.col(i), tolCausal);
        if (ci == CausalClass::Lightlike)
            throw CausalDegeneracy("lightlike tangent at sample " + std::to_string(i));
        if (i == 0)
            cls = ci;
        else if (ci != cls)
            throw MixedCausality("tangent causal class changes along the curve");
    }
    if (cls != c.causalClass)
        throw MixedCausality("stored causal class does not match the tangent field");
}

namespace {

// Catmull-Rom segment between p1 and p2 with one-sided tangents at open ends.
struct Spline {
    std::vector<Vec3> pts;  // includes the virtual closing point for Closed
    bool closed;

    Vec3 node(std::ptrdiff_t i) const {
        const std::ptrdiff_t m = std::ptrdiff_t(pts.size());
        if (closed) {
            // pts[m-1] = pts[0] + offset defines the cell; extend by translates
            const Vec3 offset = pts[m - 1] - pts[0];
            std::ptrdiff_t k = i, shift = 0;
            const std::ptrdiff_t period = m - 1;
            while (k < 0) { k += period; --shift; }
            while (k >= period) { k -= period; ++shift; }
            return pts[size_t(k)] + double(shift) * offset;
        }
        i = std::clamp<std::ptrdiff_t>(i, 0, m - 1);
        return pts[size_t(i)];
    }

    Eigen::Index segments() const { return Eigen::Index(pts.size()) - 1; }

    void hermite(Eigen::Index seg, Vec3& p1, Vec3& p2, Vec3& m1, Vec3& m2) const {
        const Vec3 p0 = node(seg - 1);
        p1 = node(seg);
        p2 = node(seg + 1);
        const Vec3 p3 = node(seg + 2);
        if (!closed && seg == 0)
            m1 = (-1.5 * p1 + 2.0 * p2 - 0.5 * p3);  // one-sided, matches end stencils
        else
            m1 = 0.5 * (p2 - p0);
        if (!closed && seg + 1 == segments())
            m2 = (1.5 * p2 - 2.0 * p1 + 0.5 * p0);
        else
            m2 = 0.5 * (p3 - p1);
    }

    Vec3 eval(Eigen::Index seg, double u) const {
        Vec3 p1, p2, m1, m2;
        hermite(seg, p1, p2, m1, m2);
        const double u2 = u * u, u3 = u2 * u;
        return (2 * u3 - 3 * u2 + 1) * p1 + (u3 - 2 * u2 + u) * m1 +
               (-2 * u3 + 3 * u2) * p2 + (u3 - u2) * m2;
    }

    Vec3 derivative(Eigen::Index seg, double u) const {
        Vec3 p1, p2, m1, m2;
        hermite(seg, p1, p2, m1, m2);
        const double u2 = u * u;
        return (6 * u2 - 6 * u) * p1 + (3 * u2 - 4 * u + 1) * m1 + (-6 * u2 + 6 * u) * p2 +
               (3 * u2 - 2 * u) * m2;
    }
};

// 8-point Gauss-Legendre nodes/weights on [0,1].
constexpr int kGL = 8;
const double kGlX[kGL] = {0.01985507175123188, 0.10166676129318664, 0.2372337950418355,
                          0.40828267875217505, 0.5917173212478249,  0.7627662049581645,
                          0.8983332387068134,  0.9801449282487681};
const double kGlW[kGL] = {0.05061426814518813, 0.11119051722668723, 0.15685332293894363,
                          0.18134189168918097, 0.18134189168918097, 0.15685332293894363,
                          0.11119051722668723, 0.05061426814518813};

double segmentLength(const Spline& sp, Eigen::Index seg, double u) {
    double acc = 0.0;
    for (int g = 0; g < kGL; ++g)
        acc += kGlW[g] * lorentzNorm(sp.derivative(seg, u * kGlX[g]));
    return acc * u;
}

}  // namespace

DiscreteCurve resampleArclength(const Eigen::Matrix3Xd& points, Eigen::Index n,
                                Topology topology, const Vec3& periodOffset, double sStart,
                                double tolCausal) {
    const Eigen::Index m = points.cols();
    if (m < 4) throw ConstraintViolation("resample needs at least 4 input points");
    if (n < 8) throw ConstraintViolation("resample target needs at least 8 samples");
    if (!points.allFinite()) throw ConstraintViolation("resample input has non-finite points");

    const bool closed = topology == Topology::Closed;
    Spline sp;
    sp.closed = closed;
    sp.pts.reserve(size_t(m) + 1);
    for (Eigen::Index i = 0; i < m; ++i) sp.pts.push_back(points.col(i));
    if (closed) sp.pts.push_back(Vec3(points.col(0) + periodOffset));

    // Chord pre-checks: degeneracy and uniform causality.
    CausalClass cls = CausalClass::Lightlike;
    for (Eigen::Index seg = 0; seg < sp.segments(); ++seg) {
        const Vec3 chord = sp.node(seg + 1) - sp.node(seg);
        if (chord.norm() == 0.0) throw ConstraintViolation("repeated input point");
        const CausalClass ci = classifyVector(chord, tolCausal);
        if (ci == CausalClass::Lightlike)
            throw CausalDegeneracy("lightlike chord in resample input");
        if (seg == 0)
            cls = ci;
        else if (ci != cls)
            throw MixedCausality("chord causal class changes along resample input");
    }

    const Eigen::Index nseg = sp.segments();
    std::vector<double> cum(size_t(nseg) + 1, 0.0);
    for (Eigen::Index seg = 0; seg < nseg; ++seg)
        cum[size_t(seg) + 1] = cum[size_t(seg)] + segmentLength(sp, seg, 1.0);
    const double total = cum[size_t(nseg)];
    if (!(total > 0.0)) throw CausalDegeneracy("resample input has zero Lorentzian length");

    const double ds = closed ? total / double(n) : total / double(n - 1);
    DiscreteCurve out;
    out.samples.resize(3, n);
    out.ds = ds;
    out.topology = topology;
    out.periodOffset = closed ? periodOffset : Vec3::Zero();
    out.sStart = sStart;

    for (Eigen::Index j = 0; j < n; ++j) {
        const double target = std::min(ds * double(j), total);
        const auto it = std::upper_bound(cum.begin(), cum.end(), target);
        Eigen::Index seg = std::clamp<Eigen::Index>(Eigen::Index(it - cum.begin()) - 1, 0, nseg - 1);
        const double want = target - cum[size_t(seg)];
        // Newton on u -> arclength within the segment, bisection-guarded.
        double lo = 0.0, hi = 1.0, u = want / std::max(cum[size_t(seg) + 1] - cum[size_t(seg)], 1e-300);
        u = std::clamp(u, 0.0, 1.0);
        for (int it2 = 0; it2 < 40; ++it2) {
            const double f = segmentLength(sp, seg, u) - want;
            if (f > 0)
                hi = u;
            else
                lo = u;
            const double speed = lorentzNorm(sp.derivative(seg, u));
            double next = (speed > 1e-14) ? u - f / speed : 0.5 * (lo + hi);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - u) < 1e-15) {
                u = next;
                break;
            }
            u = next;
        }
        out.samples.col(j) = sp.eval(seg, u);
    }

    const Eigen::Matrix3Xd raw = rawTangentField(out);
    out.causalClass = classifyVector(raw.col(0), tolCausal);
    validateCurve(out, tolCausal);
    return out;
}

}  // namespace vfm
