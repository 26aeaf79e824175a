#pragma once

// Momentum-space walk unitaries for the six time frames and the Floquet band
// structure eps(k), n(k) defined through U = exp(-i H_F) with
// H_F(k) = eps(k) n(k).sigma.

#include <string>
#include <vector>

#include "qwalk/core.hpp"

namespace qwalk {

/// Where the stroboscopic period starts within the four-operation cycle.
/// Standard is T_down R(theta2) T_up R(theta1); ShiftM rotates that operator
/// string cyclically to the left by M sub-operations. The symmetric frames
/// split one rotation across the period boundary and carry an exact chiral
/// symmetry about the x axis.
enum class TimeFrame { Standard, Shift1, Shift2, Shift3, SymmetricA, SymmetricB };

std::string to_string(TimeFrame f);
TimeFrame time_frame_from_string(const std::string& name);

struct WalkParams {
    Angle theta1{};
    Angle theta2{};
    TimeFrame frame = TimeFrame::Standard;
};

/// One primitive operation of a walk cycle, in temporal order.
struct WalkFactor {
    enum class Kind { Rotation, ShiftUp, ShiftDown };
    Kind kind;
    double angle = 0.0;  // rotations only
};

/// The frame's operation sequence in temporal order (first applied first).
std::vector<WalkFactor> frame_sequence(const WalkParams& p);

Unitary2 factor_matrix(const WalkFactor& f, double k);

/// Product of the frame's factors at momentum k; always in SU(2).
Unitary2 walk_unitary(const WalkParams& p, double k);

/// Closed form cos eps(k) = cos(t1/2) cos(t2/2) cos k - sin(t1/2) sin(t2/2);
/// valid in the Standard frame only (the spectrum is frame independent so it
/// doubles as a check for every frame).
double quasienergy_trace_identity(const WalkParams& p, double k);

struct FloquetMode {
    double epsilon = 0.0;
    BlochVector axis{};
    bool degenerate = false;
};

FloquetMode floquet_mode(const WalkParams& p, double k);

struct BandStructure {
    MomentumGrid grid;
    std::vector<FloquetMode> modes;
};

BandStructure band_structure(const WalkParams& p, const MomentumGrid& g);

/// True when eps(k) is k independent, i.e. theta1 or theta2 equals pi mod 2pi.
bool is_flat_band(const WalkParams& p);

/// Smallest distance of the spectrum to the gap-closing values 0 and pi,
/// scanned on a grid: min over k of min(eps, pi - eps).
double min_quasienergy_gap(const WalkParams& p, int grid_count = 512);

}  // namespace qwalk
