#pragma once

#include <filesystem>
#include <string>

#include "vfm/flow.hpp"
#include "vfm/pde.hpp"

namespace vfm {

// All numeric file output uses 15 significant digits.
std::string fmt15(double v);

// Curve CSV, header "s,x0,x1,x2". The CSV carries samples only; topology,
// period offset and causal class travel in a sibling "<stem>.meta.json"
// written by saveCurve and picked up by loadCurve when present.
void writeCurveCsv(const std::filesystem::path& path, const DiscreteCurve& c);
DiscreteCurve readCurveCsv(const std::filesystem::path& path);

void saveCurve(const std::filesystem::path& csvPath, const DiscreteCurve& c);
DiscreteCurve loadCurve(const std::filesystem::path& csvPath);

// Frame CSV, header "s,T0,T1,T2,E1_0,E1_1,E1_2,E2_0,E2_1,E2_2,k1,k2,theta".
void writeFrameCsv(const std::filesystem::path& path, const ParallelFrameField& pf,
                   double sStart);
ParallelFrameField readFrameCsv(const std::filesystem::path& path, CausalCase cs, double ds,
                                Topology topology, bool periodicFields);

// A recorded run on disk: manifest.json plus one curve and one frame CSV
// per snapshot.
void writeRunDir(const std::filesystem::path& dir, const FlowHistory& h,
                 const std::string& configEcho);
FlowHistory loadRunDir(const std::filesystem::path& dir);

// Residual-grid dump for external plotting: long format "t,s,value".
void writeGridCsv(const std::filesystem::path& path, const Eigen::MatrixXd& grid, double dtRec,
                  double ds, double t0, double s0);

// Machine-readable residual report entry.
std::string residualReportJson(const std::string& name, const ResidualReport& r);

}  // namespace vfm
