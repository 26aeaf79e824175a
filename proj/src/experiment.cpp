#include "qwalk/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "qwalk/topology.hpp"
#include "qwalk/version.hpp"

namespace qwalk {

namespace {

using json = nlohmann::ordered_json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json params_json(const WalkParams& p) {
    return {{"theta1", p.theta1.radians()},
            {"theta2", p.theta2.radians()},
            {"frame", to_string(p.frame)}};
}

json init_json(const InitialSpec& spec) {
    if (const auto* ft = std::get_if<FlatTrivial>(&spec))
        return {{"variant", "flat-trivial"}, {"theta1", ft->theta1.radians()}};
    if (const auto* fn = std::get_if<FlatNontrivial>(&spec))
        return {{"variant", "flat-nontrivial"}, {"theta2", fn->theta2.radians()}};
    if (const auto* lb = std::get_if<ExactLowerBand>(&spec))
        return {{"variant", "lower-band"}, {"params", params_json(lb->params)}};
    const auto& ad = std::get<AdiabaticPrep>(spec);
    json path = json::array();
    for (const WalkParams& q : ad.path) path.push_back(params_json(q));
    return {{"variant", "adiabatic"},
            {"path", std::move(path)},
            {"steps_per_leg", ad.steps_per_leg}};
}

json config_json(const ExperimentConfig& c) {
    return {{"name", c.name},
            {"init", init_json(c.init)},
            {"final", params_json(c.final_params)},
            {"frame_quench", c.frame_quench},
            {"steps", c.steps},
            {"dt", c.dt},
            {"kgrid", c.kgrid},
            {"seed", c.seed}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << text;
}

void write_manifest(const std::filesystem::path& path, json manifest) {
    manifest["version"] = kVersion;
    write_text(path, manifest.dump(2) + "\n");
}

}  // namespace

QuenchTrace compute_quench_trace(const ExperimentConfig& config) {
    config.validate();
    const QuenchEngine engine(config.init, config.final_params, config.kgrid);

    QuenchTrace trace;
    const MomentumGrid grid(config.kgrid);
    const std::vector<int> half = grid.half_zone_indices();
    for (int j : half) trace.half_zone_k.push_back(j == 0 ? kPi : grid.k(j));

    long samples = std::lround(config.steps / config.dt);
    if (samples * config.dt < config.steps - 1e-9) ++samples;
    for (long i = 0; i <= samples; ++i) {
        const double t = std::min(i * config.dt, static_cast<double>(config.steps));
        trace.sample_times.push_back(t);
        const RateSample rate = engine.rate_at(t);
        trace.lambda.push_back(rate.lambda);
        trace.near_critical.push_back(rate.near_critical ? 1 : 0);

        const std::optional<DtopResult> w = engine.dtop_at(t);
        if (!w) {
            trace.skipped_times.push_back(t);
            continue;
        }
        trace.times.push_back(t);
        trace.dtop.push_back(w->value);
        const std::vector<PgpSample> pgp = engine.pgp_at(t);
        std::vector<double> row;
        row.reserve(half.size());
        for (int j : half) row.push_back(pgp[j].phi_g);
        trace.pgp.push_back(std::move(row));
    }

    for (int s = 0; s <= config.steps; ++s) {
        const std::optional<DtopResult> w = engine.dtop_at(static_cast<double>(s));
        if (w) {
            trace.strobo_steps.push_back(s);
            trace.strobo_dtop.push_back(w->value);
        }
    }

    trace.critical = engine.critical(static_cast<double>(config.steps));

    for (size_t i = 0; i < trace.times.size(); ++i) {
        if (!trace.plateaus.empty() && trace.plateaus.back().value == trace.dtop[i]) {
            trace.plateaus.back().t_end = trace.times[i];
        } else {
            trace.plateaus.push_back({trace.times[i], trace.times[i], trace.dtop[i]});
        }
    }
    return trace;
}

QuenchArtifacts write_quench_outputs(const ExperimentConfig& config,
                                     const QuenchTrace& trace,
                                     const std::filesystem::path& outdir) {
    std::filesystem::create_directories(outdir);
    QuenchArtifacts files;

    files.pgp_csv = outdir / "pgp.csv";
    {
        std::ofstream out(files.pgp_csv, std::ios::binary);
        out << "t,k,phi_g\n";
        for (size_t i = 0; i < trace.times.size(); ++i)
            for (size_t j = 0; j < trace.half_zone_k.size(); ++j)
                out << fmt(trace.times[i]) << ',' << fmt(trace.half_zone_k[j]) << ','
                    << fmt(trace.pgp[i][j]) << '\n';
    }

    files.dtop_csv = outdir / "dtop.csv";
    {
        std::ofstream out(files.dtop_csv, std::ios::binary);
        out << "kind,t,omega_d\n";
        for (size_t i = 0; i < trace.times.size(); ++i)
            out << "continuous," << fmt(trace.times[i]) << ',' << trace.dtop[i] << '\n';
        for (size_t i = 0; i < trace.strobo_steps.size(); ++i)
            out << "stroboscopic," << trace.strobo_steps[i] << ','
                << trace.strobo_dtop[i] << '\n';
    }

    files.lambda_csv = outdir / "lambda.csv";
    {
        std::ofstream out(files.lambda_csv, std::ios::binary);
        out << "t,lambda,near_critical\n";
        for (size_t i = 0; i < trace.sample_times.size(); ++i)
            out << fmt(trace.sample_times[i]) << ',' << fmt(trace.lambda[i]) << ','
                << int(trace.near_critical[i]) << '\n';
    }

    files.critical_json = outdir / "critical.json";
    {
        json crit;
        crit["momenta"] = trace.critical.momenta;
        crit["quasienergies"] = trace.critical.quasienergies;
        crit["times"] = trace.critical.times;
        json plateaus = json::array();
        for (const QuenchTrace::Plateau& p : trace.plateaus)
            plateaus.push_back(
                {{"t_begin", p.t_begin}, {"t_end", p.t_end}, {"value", p.value}});
        crit["plateaus"] = std::move(plateaus);
        write_text(files.critical_json, crit.dump(2) + "\n");
    }

    files.manifest_json = outdir / "manifest.json";
    {
        json m;
        m["command"] = "quench";
        m["config"] = config_json(config);
        m["skipped_times"] = trace.skipped_times;
        json notes = json::array();
        if (!trace.skipped_times.empty())
            notes.push_back("times with an undefined geometric phase were skipped");
        if (config.name == "fig4")
            notes.push_back("fig4 uses (theta1, theta2) = (-pi/3, 8.8pi/9); some "
                            "listings swap the two angle labels for this scenario");
        m["notes"] = std::move(notes);
        write_manifest(files.manifest_json, std::move(m));
    }
    return files;
}

std::filesystem::path run_band(const WalkParams& p, int kgrid,
                               const std::filesystem::path& outdir) {
    std::filesystem::create_directories(outdir);
    const BandStructure bands = band_structure(p, MomentumGrid(kgrid));
    const std::filesystem::path path = outdir / "band.csv";
    std::ofstream out(path, std::ios::binary);
    out << "k,epsilon,nx,ny,nz\n";
    for (int j = 0; j < bands.grid.count(); ++j) {
        const FloquetMode& m = bands.modes[j];
        out << fmt(bands.grid.k(j)) << ',' << fmt(m.epsilon) << ',' << fmt(m.axis.x)
            << ',' << fmt(m.axis.y) << ',' << fmt(m.axis.z) << '\n';
    }
    json manifest;
    manifest["command"] = "band";
    manifest["params"] = params_json(p);
    manifest["kgrid"] = kgrid;
    write_manifest(outdir / "manifest.json", std::move(manifest));
    return path;
}

std::filesystem::path run_phase_diagram(int res, const std::filesystem::path& outdir) {
    std::filesystem::create_directories(outdir);
    const PhaseDiagram diagram = phase_diagram(res);
    const std::filesystem::path path = outdir / "phase_diagram.csv";
    std::ofstream out(path, std::ios::binary);
    out << "theta1,theta2,nu0_x2,nuPi_x2,gapless\n";
    for (const PhaseCell& c : diagram.cells) {
        out << fmt(c.theta1) << ',' << fmt(c.theta2) << ',';
        if (c.gapless)
            out << "0,0,1\n";
        else
            out << c.doublet.nu0_x2 << ',' << c.doublet.nuPi_x2 << ",0\n";
    }
    json manifest;
    manifest["command"] = "phase-diagram";
    manifest["resolution"] = res;
    write_manifest(outdir / "manifest.json", std::move(manifest));
    return path;
}

ReconstructionArtifacts run_reconstruction(const ReconstructionRun& run,
                                           const std::filesystem::path& outdir) {
    std::filesystem::create_directories(outdir);
    const ExperimentConfig config = preset(run.preset_name);

    LatticeState state = lattice_initial_state(config.init);
    for (int s = 0; s < run.steps; ++s) state = step(state, config.final_params);

    const CountSets counts = run.shots > 0
                                 ? synthesize_counts(state, run.shots, run.seed)
                                 : synthesize_counts_exact(state);
    AnnealConfig anneal = run.anneal;
    anneal.seed = run.seed;
    const ReconstructionReport report = reconstruct(counts, support_of(counts), anneal);
    const double fid = fidelity(state, report.state);

    const auto amps_json = [](const LatticeState& s) {
        json rows = json::array();
        for (int x = s.min_site(); x <= s.max_site(); ++x) {
            const Spinor a = s.at(x);
            rows.push_back({{"site", x},
                            {"up", {a.up.real(), a.up.imag()}},
                            {"down", {a.down.real(), a.down.imag()}}});
        }
        return rows;
    };

    ReconstructionArtifacts artifacts;
    artifacts.fidelity = fid;
    artifacts.converged = report.converged;

    artifacts.report_json = outdir / "reconstruction.json";
    json rep;
    rep["preset"] = run.preset_name;
    rep["steps"] = run.steps;
    rep["shots"] = run.shots;
    rep["seed"] = run.seed;
    rep["fidelity"] = fid;
    rep["objective"] = report.objective;
    rep["objective_floor"] = report.floor;
    rep["converged"] = report.converged;
    rep["free_parameters"] = report.free_parameters;
    rep["settings_per_family"] = report.settings_per_family;
    rep["proposals"] = report.proposals;
    rep["accepted"] = report.accepted;
    rep["truth"] = amps_json(state);
    rep["reconstruction"] = amps_json(report.state);
    write_text(artifacts.report_json, rep.dump(2) + "\n");

    artifacts.manifest_json = outdir / "manifest.json";
    json manifest;
    manifest["command"] = "reconstruct";
    manifest["preset"] = run.preset_name;
    manifest["steps"] = run.steps;
    manifest["shots"] = run.shots;
    manifest["seed"] = run.seed;
    manifest["anneal"] = {{"initial_temperature", anneal.initial_temperature},
                          {"cooling", anneal.cooling},
                          {"sweeps", anneal.sweeps},
                          {"amplitude_scale", anneal.amplitude_scale},
                          {"phase_scale", anneal.phase_scale},
                          {"chains", anneal.chains},
                          {"tolerance_margin", anneal.tolerance_margin}};
    write_manifest(artifacts.manifest_json, std::move(manifest));
    return artifacts;
}

std::string manifest_text(const ExperimentConfig& config) {
    json m;
    m["config"] = config_json(config);
    m["version"] = kVersion;
    return m.dump(2) + "\n";
}

}  // namespace qwalk
