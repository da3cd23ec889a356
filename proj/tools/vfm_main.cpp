// vfm: evolve non-lightlike curves in Minkowski 3-space under the binormal
// flow and verify the induced NLS / nonlinear-heat dynamics of their
// principal curvatures.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vfm/errors.hpp"
#include "vfm/generators.hpp"
#include "vfm/io.hpp"
#include "vfm/pde.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct CliOptions {
    vfm::GeneratorParams gen;
    std::string caseName = "spacelike-timelike-binormal";
    std::string generatorName = "circle";
    vfm::FlowConfig flow;
    std::string out = "out";
    long levels = 3;
    bool fixedHorizon = false;
    bool requireOrder = false;
    bool dumpResiduals = false;
    double maxL2 = -1.0;
};

fs::path resolveOut(const std::string& out) {
    fs::path p(out);
    if (p.is_absolute()) return p;
    if (const char* root = std::getenv("VFM_OUTPUT_ROOT")) return fs::path(root) / p;
    return p;
}

void addGeneratorFlags(CLI::App* cmd, CliOptions& o) {
    cmd->add_option("--generator", o.generatorName,
                    "line|circle|timelike-helix|spacelike-helix|from-file");
    cmd->add_option("--case", o.caseName,
                    "timelike|spacelike-timelike-normal|spacelike-timelike-binormal");
    cmd->add_option("--n", o.gen.n, "number of arclength samples");
    cmd->add_option("--a", o.gen.a, "helix parameter a");
    cmd->add_option("--b", o.gen.b, "helix parameter b");
    cmd->add_option("--omega", o.gen.omega, "helix angular rate");
    cmd->add_option("--radius", o.gen.radius, "circle radius");
    cmd->add_option("--length", o.gen.length, "open-curve arclength span");
    cmd->add_option("--periods", o.gen.periods, "timelike helix turns");
    cmd->add_option("--file", o.gen.path, "input curve CSV for from-file");
}

void addFlowFlags(CLI::App* cmd, CliOptions& o) {
    cmd->add_option("--dt", o.flow.dt, "time step");
    cmd->add_option("--steps", o.flow.steps, "number of time steps");
    cmd->add_option("--record-every", o.flow.recordEvery, "snapshot cadence");
    cmd->add_option("--theta0", o.flow.theta0, "frame gauge angle at the anchor");
    cmd->add_option("--unit-speed-tol", o.flow.unitSpeedTol, "drift growth gate");
    cmd->add_flag("--resample-on-drift", o.flow.resampleOnDrift,
                  "resample instead of aborting on drift");
    cmd->add_option("--tol-causal", o.flow.tolCausal, "lightlike detection band");
    cmd->add_option("--kappa-eps", o.flow.kappaEps, "curvature threshold for Frenet data");
}

vfm::GeneratorParams resolvedGenerator(const CliOptions& o) {
    vfm::GeneratorParams g = o.gen;
    g.kind = vfm::generatorFromString(o.generatorName);
    g.causalCase = vfm::causalCaseFromString(o.caseName);
    return g;
}

json configEcho(const CliOptions& o) {
    json j;
    j["generator"] = o.generatorName;
    j["case"] = o.caseName;
    j["n"] = long(o.gen.n);
    j["a"] = o.gen.a;
    j["b"] = o.gen.b;
    j["omega"] = o.gen.omega;
    j["radius"] = o.gen.radius;
    j["length"] = o.gen.length;
    j["periods"] = o.gen.periods;
    j["dt"] = o.flow.dt;
    j["steps"] = o.flow.steps;
    j["record_every"] = o.flow.recordEvery;
    j["theta0"] = o.flow.theta0;
    j["unit_speed_tol"] = o.flow.unitSpeedTol;
    j["resample_on_drift"] = o.flow.resampleOnDrift;
    j["tol_causal"] = o.flow.tolCausal;
    j["kappa_eps"] = o.flow.kappaEps;
    return j;
}

int cmdGenerate(const CliOptions& o) {
    const vfm::DiscreteCurve c = vfm::generateCurve(resolvedGenerator(o), o.flow.tolCausal);
    fs::path out = resolveOut(o.out);
    if (out.extension() != ".csv") out += ".csv";
    fs::create_directories(out.parent_path().empty() ? "." : out.parent_path());
    vfm::saveCurve(out, c);
    std::cout << "wrote " << out.string() << " (" << c.size() << " samples, ds=" << c.ds
              << ", " << toString(c.causalClass) << ")\n";
    return 0;
}

int cmdSimulate(const CliOptions& o) {
    const vfm::GeneratorParams g = resolvedGenerator(o);
    const vfm::DiscreteCurve c0 = vfm::generateCurve(g, o.flow.tolCausal);
    const vfm::FlowHistory h = vfm::runFlow(c0, o.flow, g.causalCase);
    const fs::path dir = resolveOut(o.out);
    vfm::writeRunDir(dir, h, configEcho(o).dump());
    std::cout << "wrote run " << dir.string() << " (" << h.snapshots() << " snapshots, drift growth "
              << h.driftGrowth() << ")\n";
    return 0;
}

// Residual verification of a recorded run, with the algebraic-closure
// cross-check between the PDE residuals and the curvature-evolution
// residuals.
int cmdVerify(const CliOptions& o) {
    const fs::path dir = resolveOut(o.out);
    const vfm::FlowHistory h = vfm::loadRunDir(dir);
    const Eigen::Index mask = vfm::defaultMask(h);
    const vfm::CurvatureResidual cr = vfm::curvatureEvolutionResidual(h, mask);

    json rep;
    rep["case"] = toString(h.causalCase);
    rep["snapshots"] = long(h.snapshots());
    rep["n"] = long(h.k1.cols());
    rep["ds"] = h.ds;
    rep["dt_record"] = h.recordDt();
    rep["s_margin"] = long(mask);
    rep["initial_drift"] = h.initialDrift;
    rep["drift_growth"] = h.driftGrowth();

    double closureErr = 0.0;
    double pdeL2 = 0.0;
    const double inv = 1.0 / std::sqrt(2.0);
    if (h.causalCase == vfm::CausalCase::TimelikeCurve) {
        const vfm::NlsResidual nr = vfm::nlsResidual(vfm::toNlsField(h), mask);
        pdeL2 = nr.report.l2;
        rep["nls"] = json::parse(residualReportJson("nls", nr.report));
        // residual == i*r1 - r2 up to roundoff
        Eigen::MatrixXcd combo =
            std::complex<double>(0, 1) * cr.r1.cast<std::complex<double>>() -
            cr.r2.cast<std::complex<double>>();
        closureErr = (nr.res - combo).cwiseAbs().maxCoeff() /
                     std::max(nr.res.cwiseAbs().maxCoeff(), 1e-300);
        if (o.dumpResiduals)
            vfm::writeGridCsv(dir / "residual_nls_abs.csv", nr.res.cwiseAbs(), h.recordDt(),
                              h.ds, h.times.front() + h.recordDt(),
                              h.curves.front().sStart + double(mask) * h.ds);
    } else {
        const vfm::HeatResidual hr = vfm::heatResidual(vfm::toHeatPair(h), mask);
        pdeL2 = hr.joint.l2;
        rep["heat_q"] = json::parse(residualReportJson("heat_q", hr.reportQ));
        rep["heat_r"] = json::parse(residualReportJson("heat_r", hr.reportR));
        const double s1 =
            h.causalCase == vfm::CausalCase::SpacelikeTimelikeNormal ? 1.0 : 1.0;
        const Eigen::MatrixXd comboQ = inv * (cr.r1 + cr.r2) * s1;
        const Eigen::MatrixXd comboR =
            h.causalCase == vfm::CausalCase::SpacelikeTimelikeNormal
                ? Eigen::MatrixXd(inv * (cr.r2 - cr.r1))
                : Eigen::MatrixXd(inv * (cr.r1 - cr.r2));
        const double scale = std::max(
            {hr.resQ.cwiseAbs().maxCoeff(), hr.resR.cwiseAbs().maxCoeff(), 1e-300});
        closureErr = std::max((hr.resQ - comboQ).cwiseAbs().maxCoeff(),
                              (hr.resR - comboR).cwiseAbs().maxCoeff()) /
                     scale;
        if (o.dumpResiduals) {
            vfm::writeGridCsv(dir / "residual_heat_q.csv", hr.resQ, h.recordDt(), h.ds,
                              h.times.front() + h.recordDt(),
                              h.curves.front().sStart + double(mask) * h.ds);
            vfm::writeGridCsv(dir / "residual_heat_r.csv", hr.resR, h.recordDt(), h.ds,
                              h.times.front() + h.recordDt(),
                              h.curves.front().sStart + double(mask) * h.ds);
        }
    }
    rep["curvature_evolution_1"] = json::parse(residualReportJson("k1", cr.report1));
    rep["curvature_evolution_2"] = json::parse(residualReportJson("k2", cr.report2));
    rep["algebraic_closure_rel"] = closureErr;

    bool pass = true;
    std::string why;
    if (h.driftGrowth() > o.flow.unitSpeedTol) {
        pass = false;
        why += "drift growth exceeds tolerance; ";
    }
    if (closureErr > 1e-12) {
        pass = false;
        why += "algebraic closure exceeds 1e-12; ";
    }
    if (o.maxL2 >= 0.0 && pdeL2 > o.maxL2) {
        pass = false;
        why += "PDE residual l2 exceeds --max-l2; ";
    }
    rep["pass"] = pass;
    if (!why.empty()) rep["fail_reason"] = why;

    std::ofstream f(dir / "report.json");
    if (!f) throw vfm::IoError("cannot write report.json");
    f << rep.dump(2) << '\n';
    std::cout << rep.dump(2) << '\n';
    std::cout << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? 0 : 1;
}

int cmdConverge(const CliOptions& o) {
    if (o.levels < 3) throw vfm::ConfigError("converge needs at least 3 levels");
    const vfm::GeneratorParams base = resolvedGenerator(o);
    const fs::path dir = resolveOut(o.out);
    fs::create_directories(dir);

    std::vector<double> dsList, pdeL2, curvL2;
    json levels = json::array();
    Eigen::Index coarseMargin = 0;
    double maskWidth = 0.0;
    for (long k = 0; k < o.levels; ++k) {
        vfm::GeneratorParams g = base;
        g.n = base.n << k;
        vfm::FlowConfig fc = o.flow;
        fc.dt = o.flow.dt / double(1L << (2 * k));
        if (o.fixedHorizon) {
            fc.steps = o.flow.steps * (1L << (2 * k));
            fc.recordEvery = std::max<long>(1, o.flow.recordEvery * (1L << k));
        }
        const vfm::DiscreteCurve c0 = vfm::generateCurve(g, fc.tolCausal);
        const vfm::FlowHistory h = vfm::runFlow(c0, fc, g.causalCase);

        Eigen::Index mask = vfm::defaultMask(h);
        if (!h.fieldsPeriodic) {
            // mask a fixed arclength width across levels so every level
            // measures the same interior window
            if (k == 0) {
                coarseMargin = mask;
                maskWidth = double(coarseMargin) * h.ds;
            }
            mask = Eigen::Index(std::ceil(maskWidth / h.ds));
        }

        const vfm::CurvatureResidual cr = vfm::curvatureEvolutionResidual(h, mask);
        double l2 = 0.0;
        json lv;
        lv["n"] = long(g.n);
        lv["ds"] = h.ds;
        lv["dt"] = fc.dt;
        lv["steps"] = fc.steps;
        lv["s_margin"] = long(mask);
        if (g.causalCase == vfm::CausalCase::TimelikeCurve) {
            const vfm::NlsResidual nr = vfm::nlsResidual(vfm::toNlsField(h), mask);
            l2 = nr.report.l2;
            lv["nls"] = json::parse(residualReportJson("nls", nr.report));
        } else {
            const vfm::HeatResidual hr = vfm::heatResidual(vfm::toHeatPair(h), mask);
            l2 = hr.joint.l2;
            lv["heat_q"] = json::parse(residualReportJson("heat_q", hr.reportQ));
            lv["heat_r"] = json::parse(residualReportJson("heat_r", hr.reportR));
        }
        lv["curvature_evolution_l2"] = cr.joint.l2;
        levels.push_back(lv);
        dsList.push_back(h.ds);
        pdeL2.push_back(l2);
        curvL2.push_back(cr.joint.l2);
        std::cout << "level " << k << ": n=" << g.n << " ds=" << h.ds << " pde_l2=" << l2
                  << " curvature_l2=" << cr.joint.l2 << '\n';
    }

    const double orderPde = vfm::estimateOrder(dsList, pdeL2);
    const double orderCurv = vfm::estimateOrder(dsList, curvL2);
    json out;
    out["levels"] = levels;
    out["order_pde"] = orderPde;
    out["order_curvature_evolution"] = orderCurv;
    std::ofstream f(dir / "orders.json");
    if (!f) throw vfm::IoError("cannot write orders.json");
    f << out.dump(2) << '\n';
    std::cout << "pde residual order " << orderPde << ", curvature evolution order "
              << orderCurv << '\n';
    if (o.requireOrder && (orderPde < 1.8 || orderPde > 2.2)) {
        std::cout << "FAIL: order outside [1.8, 2.2]\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"binormal flow of non-lightlike curves in Minkowski 3-space"};
    app.set_config("--config", "", "read options from an INI/TOML file");
    CliOptions o;

    CLI::App* gen = app.add_subcommand("generate", "sample an analytic seed curve to CSV");
    addGeneratorFlags(gen, o);
    gen->add_option("--out", o.out, "output CSV path");

    CLI::App* sim = app.add_subcommand("simulate", "integrate the flow and record a run");
    addGeneratorFlags(sim, o);
    addFlowFlags(sim, o);
    sim->add_option("--out", o.out, "run directory");

    CLI::App* ver = app.add_subcommand("verify", "compute residual reports for a run");
    ver->add_option("--run", o.out, "run directory")->required();
    ver->add_option("--unit-speed-tol", o.flow.unitSpeedTol, "drift growth gate");
    ver->add_option("--max-l2", o.maxL2, "fail if the PDE residual l2 exceeds this");
    ver->add_flag("--dump-residuals", o.dumpResiduals, "write residual grid CSVs");

    CLI::App* conv = app.add_subcommand("converge", "run a 3+ level refinement ladder");
    addGeneratorFlags(conv, o);
    addFlowFlags(conv, o);
    conv->add_option("--levels", o.levels, "number of ds-halved levels");
    conv->add_flag("--fixed-horizon", o.fixedHorizon,
                   "scale steps to keep the time horizon fixed (timelike runs)");
    conv->add_flag("--require-order", o.requireOrder, "exit 1 if order leaves [1.8,2.2]");
    conv->add_option("--out", o.out, "output directory");

    app.require_subcommand(1);

    try {
        CLI11_PARSE(app, argc, argv);
        if (gen->parsed()) return cmdGenerate(o);
        if (sim->parsed()) return cmdSimulate(o);
        if (ver->parsed()) return cmdVerify(o);
        if (conv->parsed()) return cmdConverge(o);
    } catch (const vfm::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return int(e.exitCode());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return int(vfm::ExitCode::ConfigError);
    }
    return 0;
}
