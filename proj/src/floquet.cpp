#include "qwalk/floquet.hpp"

#include <algorithm>
#include <stdexcept>

namespace qwalk {

std::string to_string(TimeFrame f) {
    switch (f) {
        case TimeFrame::Standard: return "standard";
        case TimeFrame::Shift1: return "shift1";
        case TimeFrame::Shift2: return "shift2";
        case TimeFrame::Shift3: return "shift3";
        case TimeFrame::SymmetricA: return "symmetric-a";
        case TimeFrame::SymmetricB: return "symmetric-b";
    }
    return "standard";
}

TimeFrame time_frame_from_string(const std::string& name) {
    if (name == "standard") return TimeFrame::Standard;
    if (name == "shift1") return TimeFrame::Shift1;
    if (name == "shift2") return TimeFrame::Shift2;
    if (name == "shift3") return TimeFrame::Shift3;
    if (name == "symmetric-a") return TimeFrame::SymmetricA;
    if (name == "symmetric-b") return TimeFrame::SymmetricB;
    throw std::invalid_argument("unknown time frame: " + name);
}

std::vector<WalkFactor> frame_sequence(const WalkParams& p) {
    using K = WalkFactor::Kind;
    const double t1 = p.theta1.radians();
    const double t2 = p.theta2.radians();
    const WalkFactor r1{K::Rotation, t1};
    const WalkFactor r2{K::Rotation, t2};
    const WalkFactor up{K::ShiftUp};
    const WalkFactor down{K::ShiftDown};
    switch (p.frame) {
        case TimeFrame::Standard:
            return {r1, up, r2, down};
        case TimeFrame::Shift1:
            return {down, r1, up, r2};
        case TimeFrame::Shift2:
            return {r2, down, r1, up};
        case TimeFrame::Shift3:
            return {up, r2, down, r1};
        case TimeFrame::SymmetricA:
            return {{K::Rotation, t1 / 2.0}, up, r2, down, {K::Rotation, t1 / 2.0}};
        case TimeFrame::SymmetricB:
            return {{K::Rotation, t2 / 2.0}, down, r1, up, {K::Rotation, t2 / 2.0}};
    }
    throw std::logic_error("unreachable");
}

Unitary2 factor_matrix(const WalkFactor& f, double k) {
    switch (f.kind) {
        case WalkFactor::Kind::Rotation: {
            const double c = std::cos(f.angle / 2.0);
            const double s = std::sin(f.angle / 2.0);
            return {c, -s, s, c};
        }
        case WalkFactor::Kind::ShiftUp:
            return make_shift_up(k);
        case WalkFactor::Kind::ShiftDown:
            return make_shift_down(k);
    }
    throw std::logic_error("unreachable");
}

Unitary2 walk_unitary(const WalkParams& p, double k) {
    Unitary2 u = Unitary2::identity();
    for (const WalkFactor& f : frame_sequence(p)) u = factor_matrix(f, k) * u;
    return u;
}

double quasienergy_trace_identity(const WalkParams& p, double k) {
    if (p.frame != TimeFrame::Standard)
        throw std::invalid_argument("trace identity is stated in the standard frame");
    const double c1 = std::cos(p.theta1.half());
    const double s1 = std::sin(p.theta1.half());
    const double c2 = std::cos(p.theta2.half());
    const double s2 = std::sin(p.theta2.half());
    return c1 * c2 * std::cos(k) - s1 * s2;
}

FloquetMode floquet_mode(const WalkParams& p, double k) {
    const Su2Decomposition d = su2_decompose(walk_unitary(p, k));
    return {d.epsilon, d.axis, d.degenerate};
}

BandStructure band_structure(const WalkParams& p, const MomentumGrid& g) {
    std::vector<FloquetMode> modes;
    modes.reserve(g.count());
    for (int j = 0; j < g.count(); ++j) modes.push_back(floquet_mode(p, g.k(j)));
    return {g, std::move(modes)};
}

bool is_flat_band(const WalkParams& p) {
    const double d1 = std::abs(canonical_angle(p.theta1.radians() - kPi));
    const double d2 = std::abs(canonical_angle(p.theta2.radians() - kPi));
    return d1 < 1e-12 || d2 < 1e-12;
}

double min_quasienergy_gap(const WalkParams& p, int grid_count) {
    const MomentumGrid g(grid_count);
    double gap = kPi;
    for (int j = 0; j < g.count(); ++j) {
        const double eps = floquet_mode(p, g.k(j)).epsilon;
        gap = std::min(gap, std::min(eps, kPi - eps));
    }
    return gap;
}

}  // namespace qwalk
