#pragma once

// Projective count synthesis and maximum-likelihood reconstruction of a pure
// lattice wave function by simulated annealing. Two count families are used:
// S from sitewise coin projections on the state itself and S~ from the same
// projections after the spin-up components are shifted one site back.

#include <cstdint>
#include <vector>

#include "qwalk/lattice.hpp"

namespace qwalk {

/// Sitewise coin projectors: up, down, (up+down)/sqrt(2), (up+i down)/sqrt(2).
enum class CoinProjector { Up = 0, Down = 1, Diagonal = 2, Circular = 3 };

inline constexpr int kProjectorCount = 4;

/// Tallies per (site, projector) for both count families. In exact mode the
/// tallies are outcome probabilities; otherwise hit counts out of `shots`
/// Bernoulli trials per setting.
struct CountSets {
    int support_min = 0;
    int sites = 0;
    long long shots = 0;  // 0 in exact mode
    bool exact = false;
    std::vector<double> direct;   // sites * 4, row-major (site, projector)
    std::vector<double> shifted;  // same layout, after the up back-shift

    int settings_per_family() const { return sites * kProjectorCount; }
    double& tally(bool shifted_family, int site_index, CoinProjector proj);
    double tally(bool shifted_family, int site_index, CoinProjector proj) const;
};

/// The state with every spin-up component moved one site back (T_up^{-1}).
LatticeState back_shift_up(const LatticeState& s);

/// Outcome probability of a coin projector on the (unnormalized) sitewise
/// spinor of a normalized state.
double projector_probability(const Spinor& site_amp, CoinProjector proj);

CountSets synthesize_counts_exact(const LatticeState& truth);
CountSets synthesize_counts(const LatticeState& truth, long long shots, uint64_t seed);

/// Binomial negative log-likelihood of both count families under the
/// candidate's predicted probabilities, with a 1e-12 probability floor.
double negative_log_likelihood(const LatticeState& candidate, const CountSets& counts);

/// Smallest achievable objective: the likelihood of the empirical frequencies
/// themselves (entropy floor).
double objective_floor(const CountSets& counts);

double fidelity(const LatticeState& a, const LatticeState& b);

struct SiteRange {
    int min_site = 0;
    int count = 0;
};

/// Sites carrying any tally mass (exact mode: above 1e-12).
SiteRange support_of(const CountSets& counts);

struct AnnealConfig {
    double initial_temperature = 0.0;  // 0: set from the spread of 50 random candidates
    double cooling = 0.97;             // per sweep
    int sweeps = 400;
    double amplitude_scale = 0.12;
    double phase_scale = 0.9;
    uint64_t seed = 1;
    int chains = 1;
    double tolerance_margin = 0.05;  // relative nonconvergence margin over the floor
};

struct ReconstructionReport {
    LatticeState state;
    double objective = 0.0;
    double floor = 0.0;
    bool converged = false;
    long long proposals = 0;
    long long accepted = 0;
    int free_parameters = 0;      // 2 * (2 * sites) - 2: amplitudes and phases
    int settings_per_family = 0;  // 4 * sites
};

/// Simulated-annealing maximum-likelihood search over amplitude and phase of
/// every (site, spin) amplitude on the support, global phase fixed by making
/// the largest component real positive. Deterministic for a fixed seed.
ReconstructionReport reconstruct(const CountSets& counts, SiteRange support,
                                 const AnnealConfig& cfg);

/// Throws NonConvergenceError when the report missed the objective floor by
/// more than the configured margin.
void ensure_converged(const ReconstructionReport& report);

}  // namespace qwalk
