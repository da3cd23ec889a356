#include "vfm/generators.hpp"

#include <cmath>

#include "vfm/errors.hpp"
#include "vfm/io.hpp"

namespace vfm {

const char* toString(GeneratorKind g) {
    switch (g) {
        case GeneratorKind::Line: return "line";
        case GeneratorKind::Circle: return "circle";
        case GeneratorKind::TimelikeHelix: return "timelike-helix";
        case GeneratorKind::SpacelikeHelix: return "spacelike-helix";
        case GeneratorKind::FromFile: return "from-file";
    }
    return "?";
}

GeneratorKind generatorFromString(const std::string& name) {
    if (name == "line") return GeneratorKind::Line;
    if (name == "circle") return GeneratorKind::Circle;
    if (name == "timelike-helix") return GeneratorKind::TimelikeHelix;
    if (name == "spacelike-helix") return GeneratorKind::SpacelikeHelix;
    if (name == "from-file") return GeneratorKind::FromFile;
    throw ConfigError("unknown generator '" + name + "'");
}

double unitSpeedConstraintResidual(const GeneratorParams& p) {
    const double aw2 = p.a * p.a * p.omega * p.omega;
    const double bw2 = p.b * p.b * p.omega * p.omega;
    switch (p.kind) {
        case GeneratorKind::TimelikeHelix: return std::abs(aw2 - p.b * p.b + 1.0);
        case GeneratorKind::SpacelikeHelix:
            if (p.causalCase == CausalCase::SpacelikeTimelikeNormal)
                return std::abs(p.a * p.a + bw2 - 1.0);
            return std::abs(p.a * p.a - bw2 - 1.0);
        default: return 0.0;
    }
}

DiscreteCurve generateCurve(const GeneratorParams& p, double tolCausal) {
    if (p.kind == GeneratorKind::FromFile) {
        DiscreteCurve c = readCurveCsv(p.path);
        validateCurve(c, tolCausal);
        return c;
    }
    if (p.n < 8) throw ConfigError("generator needs n >= 8");

    DiscreteCurve c;
    c.samples.resize(3, p.n);

    switch (p.kind) {
        case GeneratorKind::Line: {
            // timelike (s,0,0) or spacelike (0,s,0) per the requested case
            if (p.length <= 0.0) throw ConstraintViolation("line: length must be positive");
            c.topology = Topology::Open;
            c.ds = p.length / double(p.n - 1);
            c.sStart = -0.5 * p.length;
            const bool timelike = p.causalCase == CausalCase::TimelikeCurve;
            for (Eigen::Index i = 0; i < p.n; ++i) {
                const double s = c.s(i);
                c.samples.col(i) = timelike ? Vec3(s, 0, 0) : Vec3(0, s, 0);
            }
            c.causalClass = timelike ? CausalClass::Timelike : CausalClass::Spacelike;
            break;
        }
        case GeneratorKind::Circle: {
            if (p.radius <= 0.0) throw ConstraintViolation("circle: radius must be positive");
            if (p.causalCase != CausalCase::SpacelikeTimelikeBinormal)
                throw CaseMismatch("the circle is a spacelike curve with timelike binormal");
            c.topology = Topology::Closed;
            const double R = p.radius;
            c.ds = 2.0 * M_PI * R / double(p.n);
            for (Eigen::Index i = 0; i < p.n; ++i) {
                const double s = c.s(i);
                c.samples.col(i) = Vec3(0, R * std::cos(s / R), R * std::sin(s / R));
            }
            c.causalClass = CausalClass::Spacelike;
            break;
        }
        case GeneratorKind::TimelikeHelix: {
            if (p.causalCase != CausalCase::TimelikeCurve)
                throw CaseMismatch("the helix (bs, a cos ws, a sin ws) is timelike");
            const double res = unitSpeedConstraintResidual(p);
            if (res > 1e-12)
                throw ConstraintViolation(
                    "timelike helix: a^2 w^2 - b^2 = -1 violated by " + std::to_string(res));
            if (p.periods < 1) throw ConstraintViolation("timelike helix: periods >= 1");
            c.topology = Topology::Closed;
            const double span = 2.0 * M_PI / p.omega * double(p.periods);
            c.ds = span / double(p.n);
            for (Eigen::Index i = 0; i < p.n; ++i) {
                const double s = c.s(i);
                c.samples.col(i) =
                    Vec3(p.b * s, p.a * std::cos(p.omega * s), p.a * std::sin(p.omega * s));
            }
            c.periodOffset = Vec3(p.b * span, 0, 0);
            c.causalClass = CausalClass::Timelike;
            break;
        }
        case GeneratorKind::SpacelikeHelix: {
            if (p.causalCase == CausalCase::TimelikeCurve)
                throw CaseMismatch("spacelike helix cannot be generated for a timelike case");
            const double res = unitSpeedConstraintResidual(p);
            if (res > 1e-12) {
                const char* rel = p.causalCase == CausalCase::SpacelikeTimelikeNormal
                                      ? "a^2 + b^2 w^2 = 1"
                                      : "a^2 - b^2 w^2 = 1";
                throw ConstraintViolation(std::string("spacelike helix: ") + rel +
                                          " violated by " + std::to_string(res));
            }
            if (p.length <= 0.0) throw ConstraintViolation("spacelike helix: length > 0");
            c.topology = Topology::Open;
            c.ds = p.length / double(p.n - 1);
            c.sStart = -0.5 * p.length;
            for (Eigen::Index i = 0; i < p.n; ++i) {
                const double s = c.s(i);
                if (p.causalCase == CausalCase::SpacelikeTimelikeNormal)
                    c.samples.col(i) = Vec3(p.b * std::cosh(p.omega * s),
                                            p.b * std::sinh(p.omega * s), p.a * s);
                else
                    c.samples.col(i) = Vec3(p.b * std::sinh(p.omega * s), p.a * s,
                                            p.b * std::cosh(p.omega * s));
            }
            c.causalClass = CausalClass::Spacelike;
            break;
        }
        case GeneratorKind::FromFile: break;  // handled above
    }

    validateCurve(c, tolCausal);
    return c;
}

}  // namespace vfm
