#include "vfm/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "vfm/errors.hpp"

namespace vfm {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string fmt15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

namespace {

std::vector<std::string> splitCsvLine(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

std::ofstream openOut(const fs::path& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot write " + path.string());
    return f;
}

std::ifstream openIn(const fs::path& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot read " + path.string());
    return f;
}

json curveMeta(const DiscreteCurve& c) {
    json m;
    m["format"] = "vfm-curve-meta/1";
    m["topology"] = c.closed() ? "closed" : "open";
    m["causal_class"] = toString(c.causalClass);
    m["ds"] = c.ds;
    m["s_start"] = c.sStart;
    m["period_offset"] = {c.periodOffset[0], c.periodOffset[1], c.periodOffset[2]};
    return m;
}

void applyCurveMeta(DiscreteCurve& c, const json& m) {
    c.topology = m.at("topology").get<std::string>() == "closed" ? Topology::Closed
                                                                 : Topology::Open;
    const std::string cls = m.at("causal_class").get<std::string>();
    c.causalClass = cls == "timelike" ? CausalClass::Timelike : CausalClass::Spacelike;
    c.ds = m.at("ds").get<double>();
    c.sStart = m.at("s_start").get<double>();
    const auto off = m.at("period_offset");
    c.periodOffset = Vec3(off[0].get<double>(), off[1].get<double>(), off[2].get<double>());
}

}  // namespace

void writeCurveCsv(const fs::path& path, const DiscreteCurve& c) {
    std::ofstream f = openOut(path);
    f << "s,x0,x1,x2\n";
    for (Eigen::Index i = 0; i < c.size(); ++i)
        f << fmt15(c.s(i)) << ',' << fmt15(c.samples(0, i)) << ',' << fmt15(c.samples(1, i))
          << ',' << fmt15(c.samples(2, i)) << '\n';
}

DiscreteCurve readCurveCsv(const fs::path& path) {
    std::ifstream f = openIn(path);
    std::string line;
    if (!std::getline(f, line) || line.rfind("s,x0,x1,x2", 0) != 0)
        throw IoError("bad curve CSV header in " + path.string());
    std::vector<Vec3> pts;
    std::vector<double> svals;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        const auto tok = splitCsvLine(line);
        if (tok.size() != 4) throw IoError("bad curve CSV row in " + path.string());
        svals.push_back(std::stod(tok[0]));
        pts.emplace_back(std::stod(tok[1]), std::stod(tok[2]), std::stod(tok[3]));
    }
    if (pts.size() < 2) throw IoError("curve CSV has fewer than 2 rows: " + path.string());
    DiscreteCurve c;
    c.samples.resize(3, Eigen::Index(pts.size()));
    for (Eigen::Index i = 0; i < c.size(); ++i) c.samples.col(i) = pts[size_t(i)];
    c.sStart = svals.front();
    c.ds = (svals.back() - svals.front()) / double(pts.size() - 1);
    c.topology = Topology::Open;
    c.causalClass = classifyVector(Vec3(pts[1] - pts[0]));
    return c;
}

void saveCurve(const fs::path& csvPath, const DiscreteCurve& c) {
    writeCurveCsv(csvPath, c);
    fs::path meta = csvPath;
    meta.replace_extension(".meta.json");
    std::ofstream f = openOut(meta);
    f << curveMeta(c).dump(2) << '\n';
}

DiscreteCurve loadCurve(const fs::path& csvPath) {
    DiscreteCurve c = readCurveCsv(csvPath);
    fs::path meta = csvPath;
    meta.replace_extension(".meta.json");
    if (fs::exists(meta)) {
        json m = json::parse(openIn(meta));
        applyCurveMeta(c, m);
    }
    return c;
}

void writeFrameCsv(const fs::path& path, const ParallelFrameField& pf, double sStart) {
    std::ofstream f = openOut(path);
    f << "s,T0,T1,T2,E1_0,E1_1,E1_2,E2_0,E2_1,E2_2,k1,k2,theta\n";
    for (Eigen::Index i = 0; i < pf.size(); ++i) {
        f << fmt15(sStart + pf.ds * double(i));
        for (int d = 0; d < 3; ++d) f << ',' << fmt15(pf.T(d, i));
        for (int d = 0; d < 3; ++d) f << ',' << fmt15(pf.E1(d, i));
        for (int d = 0; d < 3; ++d) f << ',' << fmt15(pf.E2(d, i));
        f << ',' << fmt15(pf.k1[i]) << ',' << fmt15(pf.k2[i]) << ',' << fmt15(pf.theta[i])
          << '\n';
    }
}

ParallelFrameField readFrameCsv(const fs::path& path, CausalCase cs, double ds,
                                Topology topology, bool periodicFields) {
    std::ifstream f = openIn(path);
    std::string line;
    if (!std::getline(f, line) || line.rfind("s,T0,T1,T2,", 0) != 0)
        throw IoError("bad frame CSV header in " + path.string());
    std::vector<std::array<double, 13>> rows;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        const auto tok = splitCsvLine(line);
        if (tok.size() != 13) throw IoError("bad frame CSV row in " + path.string());
        std::array<double, 13> r{};
        for (size_t k = 0; k < 13; ++k) r[k] = std::stod(tok[k]);
        rows.push_back(r);
    }
    const Eigen::Index n = Eigen::Index(rows.size());
    if (n < 2) throw IoError("frame CSV has fewer than 2 rows: " + path.string());
    ParallelFrameField pf;
    pf.causalCase = cs;
    pf.ds = ds;
    pf.topology = topology;
    pf.periodicFields = periodicFields;
    pf.T.resize(3, n);
    pf.E1.resize(3, n);
    pf.E2.resize(3, n);
    pf.k1.resize(n);
    pf.k2.resize(n);
    pf.theta.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& r = rows[size_t(i)];
        for (int d = 0; d < 3; ++d) {
            pf.T(d, i) = r[size_t(1 + d)];
            pf.E1(d, i) = r[size_t(4 + d)];
            pf.E2(d, i) = r[size_t(7 + d)];
        }
        pf.k1[i] = r[10];
        pf.k2[i] = r[11];
        pf.theta[i] = r[12];
    }
    return pf;
}

void writeRunDir(const fs::path& dir, const FlowHistory& h, const std::string& configEcho) {
    fs::create_directories(dir);
    json m;
    m["format"] = "vfm-run/1";
    m["case"] = toString(h.causalCase);
    m["config"] = configEcho;
    m["n"] = h.curves.empty() ? 0 : long(h.curves.front().size());
    m["ds"] = h.ds;
    m["dt"] = h.dt;
    m["record_every"] = h.recordEvery;
    m["fields_periodic"] = h.fieldsPeriodic;
    m["initial_drift"] = h.initialDrift;
    if (!h.curves.empty()) {
        m["curve_meta"] = curveMeta(h.curves.front());
        m["frame_anchor"] = long(frameAnchor(h.curves.front()));
    }
    m["times"] = h.times;
    m["drift"] = h.drift;
    m["resample_steps"] = h.resampleSteps;
    json snaps = json::array();
    char name[64];
    for (Eigen::Index j = 0; j < h.snapshots(); ++j) {
        json s;
        s["time"] = h.times[size_t(j)];
        std::snprintf(name, sizeof(name), "curve_%06ld.csv", long(j));
        s["curve"] = name;
        writeCurveCsv(dir / name, h.curves[size_t(j)]);
        std::snprintf(name, sizeof(name), "frame_%06ld.csv", long(j));
        s["frame"] = name;
        writeFrameCsv(dir / name, h.frames[size_t(j)], h.curves[size_t(j)].sStart);
        snaps.push_back(s);
    }
    m["snapshots"] = snaps;
    std::ofstream f = openOut(dir / "manifest.json");
    f << m.dump(2) << '\n';
}

FlowHistory loadRunDir(const fs::path& dir) {
    const fs::path mpath = dir / "manifest.json";
    if (!fs::exists(mpath)) throw IoError("run directory lacks manifest.json: " + dir.string());
    json m = json::parse(openIn(mpath));
    if (m.value("format", "") != std::string("vfm-run/1"))
        throw IoError("unrecognized run manifest format");

    FlowHistory h;
    h.causalCase = causalCaseFromString(m.at("case").get<std::string>());
    h.ds = m.at("ds").get<double>();
    h.dt = m.at("dt").get<double>();
    h.recordEvery = m.at("record_every").get<long>();
    h.fieldsPeriodic = m.at("fields_periodic").get<bool>();
    h.initialDrift = m.at("initial_drift").get<double>();
    h.times = m.at("times").get<std::vector<double>>();
    h.drift = m.at("drift").get<std::vector<double>>();
    h.resampleSteps = m.at("resample_steps").get<std::vector<long>>();

    DiscreteCurve proto;
    applyCurveMeta(proto, m.at("curve_meta"));

    const auto snaps = m.at("snapshots");
    if (snaps.size() != h.times.size())
        throw IoError("manifest snapshot list does not match the time list");
    for (const auto& s : snaps) {
        DiscreteCurve c = readCurveCsv(dir / s.at("curve").get<std::string>());
        c.topology = proto.topology;
        c.periodOffset = proto.periodOffset;
        c.causalClass = proto.causalClass;
        c.ds = proto.ds;
        h.curves.push_back(c);
        h.frames.push_back(readFrameCsv(dir / s.at("frame").get<std::string>(), h.causalCase,
                                        h.ds, proto.topology, h.fieldsPeriodic));
    }
    const Eigen::Index J = h.snapshots();
    if (J == 0) throw IoError("run directory has no snapshots");
    const Eigen::Index n = h.curves.front().size();
    h.k1.resize(J, n);
    h.k2.resize(J, n);
    for (Eigen::Index j = 0; j < J; ++j) {
        if (h.frames[size_t(j)].size() != n || h.curves[size_t(j)].size() != n)
            throw IoError("snapshot size mismatch in run directory");
        h.k1.row(j) = h.frames[size_t(j)].k1.transpose();
        h.k2.row(j) = h.frames[size_t(j)].k2.transpose();
    }
    return h;
}

void writeGridCsv(const fs::path& path, const Eigen::MatrixXd& grid, double dtRec, double ds,
                  double t0, double s0) {
    std::ofstream f = openOut(path);
    f << "t,s,value\n";
    for (Eigen::Index j = 0; j < grid.rows(); ++j)
        for (Eigen::Index i = 0; i < grid.cols(); ++i)
            f << fmt15(t0 + dtRec * double(j)) << ',' << fmt15(s0 + ds * double(i)) << ','
              << fmt15(grid(j, i)) << '\n';
}

std::string residualReportJson(const std::string& name, const ResidualReport& r) {
    json j;
    j["name"] = name;
    j["l2"] = r.l2;
    j["linf"] = r.linf;
    j["field_scale"] = r.fieldScale;
    j["l2_normalized"] = r.l2Normalized;
    j["linf_normalized"] = r.linfNormalized;
    j["rows"] = long(r.rows);
    j["cols"] = long(r.cols);
    j["s_margin"] = long(r.sMargin);
    j["s_periodic"] = r.sPeriodic;
    return j.dump();
}

}  // namespace vfm
