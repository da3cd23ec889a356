#include "vfm/pde.hpp"

#include <cmath>

#include "vfm/errors.hpp"
#include "vfm/stencils.hpp"

namespace vfm {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void requireGrid(Eigen::Index rows, Eigen::Index cols, Eigen::Index sMargin, bool sPeriodic) {
    const Eigen::Index tInterior = rows - 2;
    const Eigen::Index sInterior = sPeriodic ? cols : cols - 2 * sMargin;
    if (tInterior < 5 || sInterior < 5)
        throw GridTooSmall("need at least a 5x5 interior, have " + std::to_string(tInterior) +
                           "x" + std::to_string(sInterior));
}

template <typename Mat>
Mat interiorCols(const Mat& g, Eigen::Index sMargin, bool sPeriodic) {
    if (sPeriodic) return g;
    return g.middleCols(sMargin, g.cols() - 2 * sMargin);
}

template <typename Mat>
ResidualReport makeReport(const Mat& res, double fieldScale, Eigen::Index sMargin,
                          bool sPeriodic) {
    ResidualReport r;
    r.rows = res.rows();
    r.cols = res.cols();
    r.sMargin = sMargin;
    r.sPeriodic = sPeriodic;
    r.l2 = std::sqrt(res.array().abs2().mean());
    r.linf = res.array().abs().maxCoeff();
    r.fieldScale = fieldScale;
    if (fieldScale > 0.0) {
        r.l2Normalized = r.l2 / fieldScale;
        r.linfNormalized = r.linf / fieldScale;
    }
    return r;
}

ResidualReport jointReport(const ResidualReport& a, const ResidualReport& b) {
    ResidualReport j = a;
    j.l2 = std::sqrt(0.5 * (a.l2 * a.l2 + b.l2 * b.l2));
    j.linf = std::max(a.linf, b.linf);
    j.fieldScale = std::max(a.fieldScale, b.fieldScale);
    j.l2Normalized = std::sqrt(0.5 * (a.l2Normalized * a.l2Normalized +
                                      b.l2Normalized * b.l2Normalized));
    j.linfNormalized = std::max(a.linfNormalized, b.linfNormalized);
    return j;
}

}  // namespace

CurvatureGrids CurvatureGrids::fromHistory(const FlowHistory& h) {
    CurvatureGrids g;
    g.k1 = h.k1;
    g.k2 = h.k2;
    g.ds = h.ds;
    g.dtRec = h.recordDt();
    g.sPeriodic = h.fieldsPeriodic;
    g.causalCase = h.causalCase;
    return g;
}

ComplexField toNlsField(const FlowHistory& h) {
    if (h.causalCase != CausalCase::TimelikeCurve)
        throw CaseMismatch("NLS field is defined for timelike runs only");
    return toNlsField(CurvatureGrids::fromHistory(h));
}

ComplexField toNlsField(const CurvatureGrids& g) {
    if (g.causalCase != CausalCase::TimelikeCurve)
        throw CaseMismatch("NLS field is defined for timelike grids only");
    ComplexField f;
    f.q = g.k1.cast<std::complex<double>>() +
          std::complex<double>(0, 1) * g.k2.cast<std::complex<double>>();
    f.ds = g.ds;
    f.dtRec = g.dtRec;
    f.sPeriodic = g.sPeriodic;
    return f;
}

HeatPair toHeatPair(const FlowHistory& h) {
    if (h.causalCase == CausalCase::TimelikeCurve)
        throw CaseMismatch("heat pair is defined for spacelike runs only");
    return toHeatPair(CurvatureGrids::fromHistory(h));
}

HeatPair toHeatPair(const CurvatureGrids& g) {
    if (g.causalCase == CausalCase::TimelikeCurve)
        throw CaseMismatch("heat pair is defined for spacelike grids only");
    const double rSign = (g.causalCase == CausalCase::SpacelikeTimelikeNormal) ? -1.0 : 1.0;
    HeatPair p;
    p.q = kInvSqrt2 * (g.k1 + g.k2);
    p.r = rSign * kInvSqrt2 * (g.k1 - g.k2);
    p.ds = g.ds;
    p.dtRec = g.dtRec;
    p.sPeriodic = g.sPeriodic;
    return p;
}

Eigen::Index domainOfDependenceMargin(long totalSteps) {
    return Eigen::Index(4 * totalSteps + 4);
}

Eigen::Index defaultMask(const FlowHistory& h) {
    if (h.fieldsPeriodic) return 0;
    const long totalSteps = (long(h.times.size()) - 1) * h.recordEvery;
    return domainOfDependenceMargin(totalSteps);
}

NlsResidual nlsResidual(const ComplexField& f, Eigen::Index sMargin) {
    if (f.sPeriodic) sMargin = 0;
    if (!f.sPeriodic && sMargin < 1) sMargin = 1;
    requireGrid(f.q.rows(), f.q.cols(), sMargin, f.sPeriodic);
    const Eigen::Index rows = f.q.rows();

    const Eigen::MatrixXcd qt = interiorCols(Eigen::MatrixXcd(gridDt(f.q, f.dtRec)), sMargin,
                                             f.sPeriodic);
    const Eigen::MatrixXcd qss = interiorCols(
        Eigen::MatrixXcd(gridDss(f.q, f.ds, f.sPeriodic).middleRows(1, rows - 2)), sMargin,
        f.sPeriodic);
    const Eigen::MatrixXcd qi =
        interiorCols(Eigen::MatrixXcd(f.q.middleRows(1, rows - 2)), sMargin, f.sPeriodic);

    NlsResidual out;
    out.res = std::complex<double>(0, 1) * qt + qss;
    for (Eigen::Index j = 0; j < out.res.rows(); ++j)
        for (Eigen::Index i = 0; i < out.res.cols(); ++i)
            out.res(j, i) -= 0.5 * std::norm(qi(j, i)) * qi(j, i);
    out.report = makeReport(out.res, qi.cwiseAbs().maxCoeff(), sMargin, f.sPeriodic);
    return out;
}

HeatResidual heatResidual(const HeatPair& p, Eigen::Index sMargin) {
    if (p.sPeriodic) sMargin = 0;
    if (!p.sPeriodic && sMargin < 1) sMargin = 1;
    requireGrid(p.q.rows(), p.q.cols(), sMargin, p.sPeriodic);
    const Eigen::Index rows = p.q.rows();

    auto inner = [&](const Eigen::MatrixXd& g) {
        return interiorCols(Eigen::MatrixXd(g.middleRows(1, rows - 2)), sMargin, p.sPeriodic);
    };
    const Eigen::MatrixXd qt = interiorCols(Eigen::MatrixXd(gridDt(p.q, p.dtRec)), sMargin,
                                            p.sPeriodic);
    const Eigen::MatrixXd rt = interiorCols(Eigen::MatrixXd(gridDt(p.r, p.dtRec)), sMargin,
                                            p.sPeriodic);
    const Eigen::MatrixXd qss = inner(gridDss(p.q, p.ds, p.sPeriodic));
    const Eigen::MatrixXd rss = inner(gridDss(p.r, p.ds, p.sPeriodic));
    const Eigen::MatrixXd qi = inner(p.q);
    const Eigen::MatrixXd ri = inner(p.r);

    HeatResidual out;
    out.resQ = qt - qss - qi.array().square().matrix().cwiseProduct(ri);
    out.resR = rt + rss + ri.array().square().matrix().cwiseProduct(qi);
    out.reportQ = makeReport(out.resQ, qi.cwiseAbs().maxCoeff(), sMargin, p.sPeriodic);
    out.reportR = makeReport(out.resR, ri.cwiseAbs().maxCoeff(), sMargin, p.sPeriodic);
    out.joint = jointReport(out.reportQ, out.reportR);
    return out;
}

CurvatureResidual curvatureEvolutionResidual(const CurvatureGrids& g, Eigen::Index sMargin) {
    if (g.sPeriodic) sMargin = 0;
    if (!g.sPeriodic && sMargin < 1) sMargin = 1;
    requireGrid(g.k1.rows(), g.k1.cols(), sMargin, g.sPeriodic);
    const Eigen::Index rows = g.k1.rows();

    auto inner = [&](const Eigen::MatrixXd& m) {
        return interiorCols(Eigen::MatrixXd(m.middleRows(1, rows - 2)), sMargin, g.sPeriodic);
    };
    const Eigen::MatrixXd k1t = interiorCols(Eigen::MatrixXd(gridDt(g.k1, g.dtRec)), sMargin,
                                             g.sPeriodic);
    const Eigen::MatrixXd k2t = interiorCols(Eigen::MatrixXd(gridDt(g.k2, g.dtRec)), sMargin,
                                             g.sPeriodic);
    const Eigen::MatrixXd k1ss = inner(gridDss(g.k1, g.ds, g.sPeriodic));
    const Eigen::MatrixXd k2ss = inner(gridDss(g.k2, g.ds, g.sPeriodic));
    const Eigen::MatrixXd k1i = inner(g.k1);
    const Eigen::MatrixXd k2i = inner(g.k2);

    Eigen::MatrixXd half(k1i.rows(), k1i.cols());
    CurvatureResidual out;
    switch (g.causalCase) {
        case CausalCase::TimelikeCurve:
            half = 0.5 * (k1i.array().square() + k2i.array().square()).matrix();
            out.r1 = k1t + k2ss - half.cwiseProduct(k2i);
            out.r2 = k2t - k1ss + half.cwiseProduct(k1i);
            break;
        case CausalCase::SpacelikeTimelikeNormal:
            half = 0.5 * (k1i.array().square() - k2i.array().square()).matrix();
            out.r1 = k1t - k2ss + half.cwiseProduct(k2i);
            out.r2 = k2t - k1ss + half.cwiseProduct(k1i);
            break;
        case CausalCase::SpacelikeTimelikeBinormal:
            half = 0.5 * (k1i.array().square() - k2i.array().square()).matrix();
            out.r1 = k1t - k2ss - half.cwiseProduct(k2i);
            out.r2 = k2t - k1ss - half.cwiseProduct(k1i);
            break;
    }
    const double scale = std::max(k1i.cwiseAbs().maxCoeff(), k2i.cwiseAbs().maxCoeff());
    out.report1 = makeReport(out.r1, scale, sMargin, g.sPeriodic);
    out.report2 = makeReport(out.r2, scale, sMargin, g.sPeriodic);
    out.joint = jointReport(out.report1, out.report2);
    return out;
}

CurvatureResidual curvatureEvolutionResidual(const FlowHistory& h, Eigen::Index sMargin) {
    return curvatureEvolutionResidual(CurvatureGrids::fromHistory(h), sMargin);
}

double estimateOrder(const std::vector<double>& h, const std::vector<double>& err) {
    if (h.size() != err.size() || h.size() < 2)
        throw ConfigError("order estimate needs matching level lists (>= 2 levels)");
    const size_t n = h.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double x = std::log(h[i]);
        const double y = std::log(std::max(err[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = double(n) * sxx - sx * sx;
    return (double(n) * sxy - sx * sy) / denom;
}

}  // namespace vfm
