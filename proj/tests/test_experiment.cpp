#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qwalk/experiment.hpp"

using namespace qwalk;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int line_count(const std::string& text) {
    int n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "qwalk-tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("preset catalog") {
    CHECK(preset_names().size() == 7);
    for (const std::string& name : preset_names()) {
        const ExperimentConfig c = preset(name);
        CHECK(c.name == name);
        CHECK_NOTHROW(c.validate());
    }
    CHECK_THROWS_AS(preset("fig9"), std::invalid_argument);

    ExperimentConfig bad = preset("fig1");
    bad.kgrid = 64;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = preset("fig1");
    bad.dt = 0.7;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("band export") {
    SUBCASE("flat parameters give a constant epsilon column") {
        const fs::path dir = fresh_dir("band-flat");
        const fs::path csv =
            run_band({Angle(8.0 * kPi / 9.0), Angle(kPi)}, 256, dir);
        const std::string text = slurp(csv);
        CHECK(line_count(text) == 257);  // header + one row per grid point
        CHECK(text.substr(0, text.find('\n')) == "k,epsilon,nx,ny,nz");
        std::istringstream in(text);
        std::string line;
        std::getline(in, line);
        double first_eps = -1.0;
        while (std::getline(in, line)) {
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream row(line);
            double k, eps;
            row >> k >> eps;
            if (first_eps < 0.0)
                first_eps = eps;
            else
                CHECK(eps == doctest::Approx(first_eps).epsilon(1e-12));
        }
        CHECK(fs::exists(dir / "manifest.json"));
    }
    SUBCASE("free walk band is |k|") {
        const fs::path dir = fresh_dir("band-free");
        const fs::path csv = run_band({Angle(0.0), Angle(0.0)}, 128, dir);
        std::istringstream in(slurp(csv));
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream row(line);
            double k, eps;
            row >> k >> eps;
            CHECK(eps == doctest::Approx(std::abs(k)).epsilon(1e-12));
        }
    }
}

TEST_CASE("phase diagram export") {
    const fs::path dir = fresh_dir("diagram");
    const fs::path csv = run_phase_diagram(32, dir);
    const std::string text = slurp(csv);
    CHECK(line_count(text) == 32 * 32 + 1);
    CHECK(text.substr(0, text.find('\n')) == "theta1,theta2,nu0_x2,nuPi_x2,gapless");
}

TEST_CASE("quench trace and exports") {
    ExperimentConfig config = preset("fig1");
    config.kgrid = 512;
    const QuenchTrace trace = compute_quench_trace(config);

    SUBCASE("critical structure matches the reference transition time") {
        REQUIRE(trace.critical.momenta.size() == 1);
        CHECK(trace.critical.times[0][0] == doctest::Approx(1.513).epsilon(0.005));
    }
    SUBCASE("plateaus climb one unit at a time") {
        REQUIRE(trace.plateaus.size() >= 4);
        for (size_t i = 0; i < trace.plateaus.size(); ++i)
            CHECK(trace.plateaus[i].value == static_cast<int>(i));
    }
    SUBCASE("stroboscopic rows agree with the continuous ones at integer times") {
        for (size_t i = 0; i < trace.strobo_steps.size(); ++i) {
            const double t = trace.strobo_steps[i];
            for (size_t j = 0; j < trace.times.size(); ++j)
                if (trace.times[j] == t) CHECK(trace.dtop[j] == trace.strobo_dtop[i]);
        }
    }
    SUBCASE("files are written and deterministic") {
        const fs::path dir_a = fresh_dir("quench-a");
        const fs::path dir_b = fresh_dir("quench-b");
        const QuenchArtifacts a = write_quench_outputs(config, trace, dir_a);
        const QuenchArtifacts b = write_quench_outputs(config, trace, dir_b);
        for (const fs::path* p : {&a.pgp_csv, &a.dtop_csv, &a.lambda_csv,
                                  &a.critical_json, &a.manifest_json})
            CHECK(fs::exists(*p));
        CHECK(slurp(a.manifest_json) == slurp(b.manifest_json));
        CHECK(slurp(a.pgp_csv) == slurp(b.pgp_csv));
        CHECK(slurp(a.critical_json) == slurp(b.critical_json));

        const auto crit = nlohmann::json::parse(slurp(a.critical_json));
        CHECK(crit["times"][0][0].get<double>() ==
              doctest::Approx(1.513).epsilon(0.005));
        const auto manifest = nlohmann::json::parse(slurp(a.manifest_json));
        CHECK(manifest["config"]["name"] == "fig1");
        CHECK(manifest.contains("version"));
    }
}

TEST_CASE("null quench exports all-zero dtop") {
    ExperimentConfig config = preset("fig2-star");
    config.kgrid = 512;
    const QuenchTrace trace = compute_quench_trace(config);
    for (int w : trace.dtop) CHECK(w == 0);
    for (int w : trace.strobo_dtop) CHECK(w == 0);
    CHECK(trace.critical.momenta.empty());

    const fs::path dir = fresh_dir("quench-star");
    const QuenchArtifacts files = write_quench_outputs(config, trace, dir);
    std::istringstream in(slurp(files.dtop_csv));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line))
        CHECK(line.substr(line.rfind(',') + 1) == "0");
}

TEST_CASE("frame quench trace is monotone nondecreasing") {
    ExperimentConfig config = preset("fig4");
    config.kgrid = 512;
    const QuenchTrace trace = compute_quench_trace(config);
    for (size_t i = 1; i < trace.dtop.size(); ++i)
        CHECK(trace.dtop[i] >= trace.dtop[i - 1]);
    CHECK(trace.dtop.back() >= 2);
}

TEST_CASE("reconstruction run artifacts") {
    ReconstructionRun run;
    run.preset_name = "fig1";
    run.steps = 3;
    run.shots = 0;
    run.seed = 17;

    const fs::path dir_a = fresh_dir("recon-a");
    const ReconstructionArtifacts a = run_reconstruction(run, dir_a);
    CHECK(a.fidelity >= 0.999);
    CHECK(a.converged);

    const auto rep = nlohmann::json::parse(slurp(a.report_json));
    CHECK(rep["fidelity"].get<double>() == doctest::Approx(a.fidelity));
    CHECK(rep["truth"].size() == rep["reconstruction"].size());

    SUBCASE("reruns are byte identical") {
        const fs::path dir_b = fresh_dir("recon-b");
        const ReconstructionArtifacts b = run_reconstruction(run, dir_b);
        CHECK(slurp(a.report_json) == slurp(b.report_json));
        CHECK(slurp(a.manifest_json) == slurp(b.manifest_json));
    }
}

TEST_CASE("manifest text pins the full configuration") {
    const std::string text = manifest_text(preset("fig3"));
    const auto m = nlohmann::json::parse(text);
    CHECK(m["config"]["init"]["variant"] == "adiabatic");
    CHECK(m["config"]["final"]["frame"] == "symmetric-a");
    CHECK(m["config"]["init"]["path"].size() == 2);
    CHECK(manifest_text(preset("fig3")) == text);
}
