#pragma once

// Quench protocol engine: momentum-space initial states, continuous and
// stroboscopic evolution under a post-quench walk, Loschmidt amplitudes,
// dynamical phase, Pancharatnam geometric phase, the dynamical topological
// order parameter (DTOP), the rate function and the DQPT critical structure.

#include <map>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "qwalk/floquet.hpp"

namespace qwalk {

/// Normalized two-component state per momentum-grid point. weights carries
/// the pre-normalization norms when the field came from a lattice transform;
/// it is metadata only and may be empty.
struct MomentumField {
    MomentumGrid grid;
    std::vector<Spinor> spinors;
    std::vector<double> weights{};
};

/// Ground state of a trivial flat band: the localized |x=0, down_y> state,
/// spinor (1, -i)/sqrt(2) at every k.
struct FlatTrivial {
    Angle theta1{};
};

/// Ground state of the nontrivial flat-band family (theta1 = pi): the lower
/// band of H_F(pi, theta2), spinor (1, -i e^{+ik})/sqrt(2), which is the
/// momentum representation of (|0 up> - i |-1 down>)/sqrt(2).
struct FlatNontrivial {
    Angle theta2{};
};

/// Exact lower-band eigenstate of the given walk, gauge fixed: the
/// larger-modulus component is made real positive, ties broken toward up.
struct ExactLowerBand {
    WalkParams params;
};

/// Slow parameter ramp starting from the flat-band ground state of path[0]
/// (which must be a flat-band point); every leg is interpolated linearly in
/// (theta1, theta2) with steps_per_leg walk applications. All path points
/// must share one time frame.
struct AdiabaticPrep {
    std::vector<WalkParams> path;
    int steps_per_leg = 200;
};

using InitialSpec =
    std::variant<FlatTrivial, FlatNontrivial, ExactLowerBand, AdiabaticPrep>;

/// Lower/upper band eigenvectors of H_F(k) in the documented gauge.
Spinor lower_band_spinor(const WalkParams& p, double k);
Spinor upper_band_spinor(const WalkParams& p, double k);

/// Validates an initial spec once and prepares per-momentum spinors on
/// demand. All preparation variants act independently per k.
class InitialPreparer {
public:
    explicit InitialPreparer(InitialSpec spec);
    Spinor at(double k) const;
    const InitialSpec& spec() const { return spec_; }
    /// The ramp parameter sequence (empty unless adiabatic).
    const std::vector<WalkParams>& ramp() const { return ramp_; }

private:
    InitialSpec spec_;
    std::vector<WalkParams> ramp_;
};

/// Prepare the state on a grid. For AdiabaticPrep this enforces the
/// min-over-k fidelity floor of 0.999 against the exact lower band of the
/// final path point and throws AdiabaticFailureError with the worst k if
/// the ramp was too fast.
MomentumField prepare_initial(const InitialSpec& spec, const MomentumGrid& g);
Spinor prepare_spinor(const InitialSpec& spec, double k);

MomentumField evolve_continuous(const MomentumField& psi0, const WalkParams& p, double t);
MomentumField evolve_stroboscopic(const MomentumField& psi0, const WalkParams& p, int steps);
Spinor evolve_spinor_continuous(const WalkParams& p, double k, const Spinor& s, double t);

struct LoschmidtSample {
    double k;
    complexd g;
    double r;
    double phi;
};

std::vector<LoschmidtSample> loschmidt_field(const MomentumField& psi0,
                                             const MomentumField& psit);

struct BandOverlap {
    double k;
    double g_amp2;
    double e_amp2;
    double eps_f;
};

BandOverlap band_overlap_at(const WalkParams& p, double k, const Spinor& psi0k);
std::vector<BandOverlap> band_overlaps(const MomentumField& psi0, const WalkParams& p);

/// phi_dyn(k) = eps_f t (|g|^2 - |e|^2), the overlap form.
std::vector<double> dynamical_phase(const MomentumField& psi0, const WalkParams& p, double t);
/// phi_dyn(k) = -t <psi_t | H_F | psi_t>, evaluated by explicit evolution and
/// matrix sandwich; an independent route that must agree with the overlap form.
std::vector<double> dynamical_phase_expectation(const MomentumField& psi0,
                                                const WalkParams& p, double t);

struct PgpSample {
    double k;
    double phi_g = 0.0;   // in (-pi, pi]
    bool defined = true;  // false at exact Loschmidt zeros (|G| < 1e-9)
};

std::vector<PgpSample> pgp_field(const MomentumField& psi0, const WalkParams& p, double t);

struct DtopResult {
    int value;
    double residual;
};

/// Winding of the geometric phase along k = 0 .. pi (inclusive endpoints).
DtopResult dtop_from_phases(std::span<const double> half_zone_phases);

struct RateSample {
    double lambda;
    bool near_critical;  // a per-k contribution hit the log clamp
};

RateSample rate_function(const MomentumField& psi0, const WalkParams& p, double t);

struct CriticalStructure {
    std::vector<double> momenta;        // k* in (0, pi), ascending
    std::vector<double> quasienergies;  // eps_f(k*)
    std::vector<std::vector<double>> times;  // per momentum: (n + 1/2) pi / eps
    std::vector<double> all_times() const;   // merged, ascending
};

/// Critical momenta are the roots of |e_k|^2 - 1/2 located by sign-change
/// bracketing plus bisection to 1e-10; critical times are listed up to the
/// horizon. Empty results mean the quench supports no DQPT.
CriticalStructure critical_structure(const InitialSpec& init, const WalkParams& p,
                                     double horizon);

struct FitResult {
    double amplitude = 0.0;
    double omega = 0.0;
    bool degenerate = false;
};

/// Least-squares fit of Im G_k(t) to A sin(w t). Degenerate (w unidentifiable)
/// when the imaginary part vanishes identically.
FitResult fit_dynamical_phase(std::span<const double> times,
                              std::span<const complexd> amplitudes);

/// Owns the initial spec and final parameters so the momentum grid can be
/// refined on demand (DTOP unwrap refinement re-prepares the state). Caches
/// the per-momentum band data (eps_f, |g|^2 - |e|^2) of the prepared state,
/// which fixes the whole time dependence in closed form.
class QuenchEngine {
public:
    QuenchEngine(InitialSpec init, WalkParams final_params, int grid_count);

    const WalkParams& final_params() const { return final_; }
    int base_grid() const { return base_count_; }
    const MomentumField& field(int count) const;

    std::vector<PgpSample> pgp_at(double t) const;
    /// DTOP at time t; nullopt when the PGP is undefined at some grid point
    /// (the caller should shift the sample). Doubles the k grid up to 2^16 on
    /// unwrap-residual failure, then throws UnwrapFailureError.
    std::optional<DtopResult> dtop_at(double t) const;
    RateSample rate_at(double t) const;
    CriticalStructure critical(double horizon) const;

private:
    struct GridData {
        MomentumField field;
        std::vector<double> eps;    // eps_f(k)
        std::vector<double> delta;  // |g_k|^2 - |e_k|^2
    };
    const GridData& data(int count) const;

    InitialPreparer preparer_;
    WalkParams final_;
    int base_count_;
    mutable std::map<int, GridData> cache_;
};

}  // namespace qwalk
