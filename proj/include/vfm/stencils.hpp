#pragma once

#include <Eigen/Core>

#include "vfm/errors.hpp"

// Second-order finite-difference stencils shared by the geometry, flow and
// residual code. Keeping a single implementation here is what makes the
// algebraic-closure identities between the PDE residuals and the curvature
// evolution residuals hold to roundoff.

namespace vfm {

// First derivative of a 3xN field along the sample index. Periodic fields
// may be quasi-periodic: f(i+n) = f(i) + offset.
inline Eigen::Matrix3Xd fieldD1(const Eigen::Matrix3Xd& f, double h, bool periodic,
                                const Eigen::Vector3d& offset = Eigen::Vector3d::Zero()) {
    const Eigen::Index n = f.cols();
    Eigen::Matrix3Xd out(3, n);
    if (periodic) {
        for (Eigen::Index i = 0; i < n; ++i) {
            Eigen::Vector3d up = (i + 1 < n) ? f.col(i + 1) : Eigen::Vector3d(f.col(0) + offset);
            Eigen::Vector3d dn = (i > 0) ? f.col(i - 1) : Eigen::Vector3d(f.col(n - 1) - offset);
            out.col(i) = (up - dn) / (2 * h);
        }
    } else {
        for (Eigen::Index i = 1; i + 1 < n; ++i)
            out.col(i) = (f.col(i + 1) - f.col(i - 1)) / (2 * h);
        out.col(0) = (-3 * f.col(0) + 4 * f.col(1) - f.col(2)) / (2 * h);
        out.col(n - 1) = (3 * f.col(n - 1) - 4 * f.col(n - 2) + f.col(n - 3)) / (2 * h);
    }
    return out;
}

inline Eigen::Matrix3Xd fieldD2(const Eigen::Matrix3Xd& f, double h, bool periodic,
                                const Eigen::Vector3d& offset = Eigen::Vector3d::Zero()) {
    const Eigen::Index n = f.cols();
    const double h2 = h * h;
    Eigen::Matrix3Xd out(3, n);
    if (periodic) {
        for (Eigen::Index i = 0; i < n; ++i) {
            Eigen::Vector3d up = (i + 1 < n) ? f.col(i + 1) : Eigen::Vector3d(f.col(0) + offset);
            Eigen::Vector3d dn = (i > 0) ? f.col(i - 1) : Eigen::Vector3d(f.col(n - 1) - offset);
            out.col(i) = (up - 2 * f.col(i) + dn) / h2;
        }
    } else {
        for (Eigen::Index i = 1; i + 1 < n; ++i)
            out.col(i) = (f.col(i + 1) - 2 * f.col(i) + f.col(i - 1)) / h2;
        out.col(0) = (2 * f.col(0) - 5 * f.col(1) + 4 * f.col(2) - f.col(3)) / h2;
        out.col(n - 1) =
            (2 * f.col(n - 1) - 5 * f.col(n - 2) + 4 * f.col(n - 3) - f.col(n - 4)) / h2;
    }
    return out;
}

// Scalar per-sample field variants (one value per sample).
inline Eigen::VectorXd scalarD1(const Eigen::VectorXd& f, double h, bool periodic) {
    const Eigen::Index n = f.size();
    Eigen::VectorXd out(n);
    if (periodic) {
        for (Eigen::Index i = 0; i < n; ++i)
            out[i] = (f[(i + 1) % n] - f[(i + n - 1) % n]) / (2 * h);
    } else {
        for (Eigen::Index i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) / (2 * h);
        out[0] = (-3 * f[0] + 4 * f[1] - f[2]) / (2 * h);
        out[n - 1] = (3 * f[n - 1] - 4 * f[n - 2] + f[n - 3]) / (2 * h);
    }
    return out;
}

// Space-time grids are stored rows = time, cols = arclength samples.
// Interior time derivative: rows 1..J-2, all columns.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> gridDt(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& g, double dt) {
    const Eigen::Index rows = g.rows();
    if (rows < 3) throw GridTooSmall("time derivative needs at least 3 snapshots");
    return (g.bottomRows(rows - 2) - g.topRows(rows - 2)) / (2 * dt);
}

// Second s-derivative on every row. Periodic columns wrap; otherwise the
// result keeps full width and the caller masks the two boundary columns.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> gridDss(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& g, double ds, bool periodic) {
    const Eigen::Index rows = g.rows(), cols = g.cols();
    const double ds2 = ds * ds;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(rows, cols);
    for (Eigen::Index j = 0; j < rows; ++j) {
        for (Eigen::Index i = 0; i < cols; ++i) {
            Eigen::Index up = i + 1, dn = i - 1;
            if (periodic) {
                up = (i + 1) % cols;
                dn = (i + cols - 1) % cols;
            } else if (i == 0 || i + 1 == cols) {
                out(j, i) = Scalar(0);  // masked by the caller
                continue;
            }
            out(j, i) = (g(j, up) - Scalar(2) * g(j, i) + g(j, dn)) / ds2;
        }
    }
    return out;
}

}  // namespace vfm
