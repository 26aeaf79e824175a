#pragma once

// Real-space split-step walker with a dynamically growing support window,
// and the discrete-Fourier bridge to the momentum engine.

#include <vector>

#include "qwalk/quench.hpp"

namespace qwalk {

/// Wave function on the integer lattice: amps[i] lives on site offset + i.
struct LatticeState {
    int offset = 0;
    std::vector<Spinor> amps;

    int min_site() const { return offset; }
    int max_site() const { return offset + static_cast<int>(amps.size()) - 1; }
    double norm2() const;
    Spinor at(int site) const;
};

LatticeState localized(int site, const Spinor& s);

complexd lattice_inner(const LatticeState& a, const LatticeState& b);

/// One full walk cycle in the frame of p; the support window grows by one
/// site per conditional shift and is never truncated.
LatticeState step(const LatticeState& s, const WalkParams& p);

LatticeState apply_factor(const LatticeState& s, const WalkFactor& f);

/// Sitewise coin rotation about z: diag(e^{-i a/2}, e^{+i a/2}).
LatticeState apply_sigma_z_rotation(const LatticeState& s, double angle);

/// Trajectory of length steps + 1 including the initial state.
std::vector<LatticeState> run(const LatticeState& init, const WalkParams& p, int steps);

/// psi(k, mu) = sum_x exp(-i k x) psi(x, mu) without normalization.
Spinor momentum_amplitude(const LatticeState& s, double k);

/// Per-k normalized spinors with the pre-normalization norms kept as weights.
/// Throws ZeroWeightError if some grid momentum carries no weight.
MomentumField to_momentum(const LatticeState& s, const MomentumGrid& g);

/// The localized flat-band ground state used to seed ramps: the single-site
/// |0, down_y> state for theta2-flat parameters, or the two-site state
/// produced by the preparation gate sequence for theta1-flat parameters.
/// Symmetric frames pick up the corresponding sitewise half rotation.
LatticeState flat_band_seed(const WalkParams& flat_params);

/// Lattice-side realization of an initial spec (FlatTrivial, FlatNontrivial
/// or AdiabaticPrep; exact band states have no finite support).
LatticeState lattice_initial_state(const InitialSpec& spec);

/// Maximum modulus difference, over all steps and momenta, between the
/// Fourier transform of the lattice trajectory and the momentum-evolved
/// amplitudes; both sides unnormalized so exact zeros are comparable.
double consistency_report(const WalkParams& p, const LatticeState& init, int steps,
                          const MomentumGrid& g);

}  // namespace qwalk
