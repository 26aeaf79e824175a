#pragma once

// Chiral-frame winding numbers and the invariant doublet (nu0, nuPi) attached
// to the quasienergy gaps, plus static phase diagrams over (theta1, theta2).

#include <vector>

#include "qwalk/floquet.hpp"

namespace qwalk {

/// Half-integer invariants stored doubled so they stay integers.
struct InvariantDoublet {
    int nu0_x2 = 0;
    int nuPi_x2 = 0;
    friend bool operator==(const InvariantDoublet&, const InvariantDoublet&) = default;
};

enum class Z2Class { Trivial, Nontrivial };

/// Trivial iff nu0 * nuPi < 0.
Z2Class z2_class(const InvariantDoublet& d);

/// Unit vector orthogonal to n(k) for all k. Exists for the symmetric frames
/// of gapped parameters (it is the x axis there); the construction is generic:
/// the best cross product of two grid Bloch vectors, verified against the
/// whole grid. Throws NoChiralAxisError when no such axis exists.
BlochVector chiral_axis(const WalkParams& p);

/// Winding of n(k) about the chiral axis over one Brillouin-zone loop.
/// Integer-quantized; refines the grid up to 2^16 points before giving up
/// with UnwrapFailureError.
int winding_number(const WalkParams& p);

/// (nu0, nuPi) from the two symmetric-frame windings W_A, W_B:
/// nu0 = (sA W_A + sB W_B)/2, nuPi = (sA W_A - sB W_B)/2 with the global sign
/// calibration (sA, sB) fixed once against the reference doublets and frozen.
/// The frame tag of p is ignored; the doublet depends on the angles only.
InvariantDoublet invariant_doublet(const WalkParams& p);

/// Straight lines a1*theta1 + a2*theta2 = rhs where a gap closes, together
/// with the momentum and quasienergy of the closing.
struct BoundaryLine {
    double a1, a2, rhs;
    double closing_momentum;     // 0 or pi
    double closing_quasienergy;  // 0 or pi
};

std::vector<BoundaryLine> gap_closing_boundaries();

/// Smallest Euclidean distance from (theta1, theta2) to any boundary line.
double distance_to_boundary(Angle theta1, Angle theta2);

/// Signature of the analytic region containing (theta1, theta2): the sign
/// pattern of the boundary line functionals. Equal signatures mean the two
/// points can be joined without closing a gap.
std::vector<int> region_signature(Angle theta1, Angle theta2);

struct PhaseCell {
    double theta1, theta2;
    bool gapless = false;
    InvariantDoublet doublet{};
};

struct PhaseDiagram {
    int resolution;
    std::vector<PhaseCell> cells;  // row-major over (theta1 index, theta2 index)
};

/// Doublet on a res x res grid of cell centers over (-pi, pi]^2. Cells whose
/// numerical gap is below 1e-3 are marked gapless and carry no doublet.
PhaseDiagram phase_diagram(int res);

}  // namespace qwalk
