#include "vfm/frenet.hpp"

#include <cmath>

#include "vfm/errors.hpp"
#include "vfm/stencils.hpp"

namespace vfm {

FrenetApparatus frenetApparatus(const DiscreteCurve& c, double kappaEps, double tolCausal) {
    const Eigen::Index n = c.size();
    FrenetApparatus fa;
    fa.ds = c.ds;
    fa.topology = c.topology;
    fa.T = tangentField(c, tolCausal);
    fa.N.setZero(3, n);
    fa.B.setZero(3, n);
    fa.kappa.resize(n);
    fa.tau.setZero(n);
    fa.kappaDefined.assign(size_t(n), false);
    fa.epsT = metricSign(fa.T.col(0));

    // T is strictly periodic for closed curves: the offset cancels in differences.
    const Eigen::Matrix3Xd Ts = fieldD1(fa.T, c.ds, c.closed());

    bool haveSigns = false;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double kap = lorentzNorm(Ts.col(i));
        fa.kappa[i] = kap;
        if (kap < kappaEps) continue;  // frame undefined here
        const double q = lorentzDot(Ts.col(i), Ts.col(i));
        if (std::abs(q) < tolCausal * tolCausal)
            throw CausalDegeneracy("principal normal lightlike at sample " + std::to_string(i));
        fa.kappaDefined[size_t(i)] = true;
        fa.N.col(i) = Ts.col(i) / kap;
        const int epsN = metricSign(fa.N.col(i));
        Vec3 b = lorentzCross(fa.T.col(i), fa.N.col(i));
        const double qb = lorentzDot(b, b);
        if (std::abs(qb) < tolCausal)
            throw CausalDegeneracy("binormal lightlike at sample " + std::to_string(i));
        b /= std::sqrt(std::abs(qb));
        fa.B.col(i) = b;
        const int epsB = metricSign(b);
        if (!haveSigns) {
            fa.epsN = epsN;
            fa.epsB = epsB;
            haveSigns = true;
        } else if (epsN != fa.epsN || epsB != fa.epsB) {
            throw MixedCausality("Frenet metric signs change along the curve");
        }
    }

    if (haveSigns) {
        const int minusCount = (fa.epsT < 0) + (fa.epsN < 0) + (fa.epsB < 0);
        if (minusCount != 1)
            throw CausalDegeneracy("inadmissible frame sign pattern (" +
                                   std::to_string(fa.epsT) + "," + std::to_string(fa.epsN) +
                                   "," + std::to_string(fa.epsB) + ")");
        // tau = eps_B <N_s, B>_L wherever N is defined on the whole stencil
        const Eigen::Matrix3Xd Ns = fieldD1(fa.N, c.ds, c.closed());
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!fa.kappaDefined[size_t(i)]) continue;
            const Eigen::Index prev = c.closed() ? (i + n - 1) % n : std::max<Eigen::Index>(i - 1, 0);
            const Eigen::Index next = c.closed() ? (i + 1) % n : std::min<Eigen::Index>(i + 1, n - 1);
            if (!fa.kappaDefined[size_t(prev)] || !fa.kappaDefined[size_t(next)]) continue;
            fa.tau[i] = double(fa.epsB) * lorentzDot(Ns.col(i), fa.B.col(i));
        }
    }
    return fa;
}

FrameCoefficients extractFrameCoefficients(const Eigen::Matrix3Xd& x1,
                                           const Eigen::Matrix3Xd& x2,
                                           const Eigen::Matrix3Xd& x3, double ds, bool periodic,
                                           Eigen::Index i) {
    const Eigen::Matrix3Xd* fields[3] = {&x1, &x2, &x3};
    FrameCoefficients fc;
    Eigen::Matrix3Xd derivs[3] = {fieldD1(x1, ds, periodic), fieldD1(x2, ds, periodic),
                                  fieldD1(x3, ds, periodic)};
    for (int k = 0; k < 3; ++k) fc.signs[size_t(k)] = metricSign(fields[k]->col(i));
    for (int r = 0; r < 3; ++r)
        for (int cIdx = 0; cIdx < 3; ++cIdx)
            fc.a(r, cIdx) =
                double(fc.signs[size_t(cIdx)]) * lorentzDot(derivs[r].col(i), fields[cIdx]->col(i));
    return fc;
}

}  // namespace vfm
