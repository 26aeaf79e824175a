#pragma once

// Trace computation and machine-readable exports for the CLI: CSV for grids
// and series, JSON for structured results, and a manifest per run that pins
// the full configuration, seed and artifact version.

#include <filesystem>
#include <string>
#include <vector>

#include "qwalk/presets.hpp"
#include "qwalk/tomography.hpp"

namespace qwalk {

struct QuenchTrace {
    std::vector<double> half_zone_k;

    // The rate function exists at every sample; DTOP and PGP rows only where
    // the geometric phase is defined on the whole grid.
    std::vector<double> sample_times;
    std::vector<double> lambda;
    std::vector<uint8_t> near_critical;

    std::vector<double> times;
    std::vector<int> dtop;
    std::vector<std::vector<double>> pgp;  // per kept time, over half_zone_k

    std::vector<double> skipped_times;  // PGP undefined at some grid point

    std::vector<int> strobo_steps;
    std::vector<int> strobo_dtop;

    CriticalStructure critical;

    struct Plateau {
        double t_begin;
        double t_end;
        int value;
    };
    std::vector<Plateau> plateaus;
};

QuenchTrace compute_quench_trace(const ExperimentConfig& config);

/// File names written by a quench run inside the output directory.
struct QuenchArtifacts {
    std::filesystem::path pgp_csv;
    std::filesystem::path dtop_csv;
    std::filesystem::path lambda_csv;
    std::filesystem::path critical_json;
    std::filesystem::path manifest_json;
};

QuenchArtifacts write_quench_outputs(const ExperimentConfig& config,
                                     const QuenchTrace& trace,
                                     const std::filesystem::path& outdir);

/// band.csv with columns k, epsilon, nx, ny, nz plus a manifest.
std::filesystem::path run_band(const WalkParams& p, int kgrid,
                               const std::filesystem::path& outdir);

/// phase_diagram.csv with columns theta1, theta2, 2nu0, 2nuPi, gapless.
std::filesystem::path run_phase_diagram(int res, const std::filesystem::path& outdir);

struct ReconstructionRun {
    std::string preset_name;
    int steps = 3;
    long long shots = 0;  // 0: exact counts
    uint64_t seed = 1;
    AnnealConfig anneal{};
};

struct ReconstructionArtifacts {
    std::filesystem::path report_json;
    std::filesystem::path manifest_json;
    double fidelity = 0.0;
    bool converged = false;
};

ReconstructionArtifacts run_reconstruction(const ReconstructionRun& run,
                                           const std::filesystem::path& outdir);

/// Serialize a configuration to the manifest JSON text (used by tests to
/// check byte-level reproducibility).
std::string manifest_text(const ExperimentConfig& config);

}  // namespace qwalk
