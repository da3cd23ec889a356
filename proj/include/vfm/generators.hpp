#pragma once

#include <string>

#include "vfm/parallel_frame.hpp"

namespace vfm {

enum class GeneratorKind { Line, Circle, TimelikeHelix, SpacelikeHelix, FromFile };

const char* toString(GeneratorKind g);
GeneratorKind generatorFromString(const std::string& name);

// Analytic seed parameters. Unit-speed constraints (checked to 1e-12):
//   TimelikeHelix  (b s, a cos ws, a sin ws):        a^2 w^2 - b^2 = -1
//   SpacelikeHelix, timelike normal
//                  (b cosh ws, b sinh ws, a s):      a^2 + b^2 w^2 = 1
//   SpacelikeHelix, timelike binormal
//                  (b sinh ws, a s, b cosh ws):      a^2 - b^2 w^2 = 1
// The timelike helix is sampled over whole turns and carries the period
// translation as a quasi-periodic offset; spacelike helices are open and
// sampled over s in [-L/2, L/2].
struct GeneratorParams {
    GeneratorKind kind = GeneratorKind::Circle;
    CausalCase causalCase = CausalCase::SpacelikeTimelikeBinormal;
    Eigen::Index n = 256;
    double a = 1.0;
    double b = 0.0;
    double omega = 1.0;
    double radius = 1.0;
    double length = 2.0;  // open-curve arclength span
    long periods = 1;     // timelike helix turns
    std::string path;     // FromFile curve CSV
};

DiscreteCurve generateCurve(const GeneratorParams& p, double tolCausal = kCausalTol);

// Constraint residual of the helix parameters for the requested case
// (zero for an exactly unit-speed parametrization).
double unitSpeedConstraintResidual(const GeneratorParams& p);

}  // namespace vfm
