#include "qwalk/topology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qwalk {

namespace {

// Global orientation calibration of the two symmetric-frame windings,
// fixed once against the reference doublets and frozen (see tests).
constexpr int kWindingSignA = +1;
constexpr int kWindingSignB = -1;

BlochVector canonical_sign(BlochVector a) {
    // Deterministic orientation: first component of meaningful size decides.
    const double tol = 1e-12;
    double lead = std::abs(a.x) > tol ? a.x : (std::abs(a.y) > tol ? a.y : a.z);
    if (lead < 0.0) return -a;
    return a;
}

std::vector<BlochVector> grid_axes(const WalkParams& p, int count) {
    const MomentumGrid g(count);
    std::vector<BlochVector> n;
    n.reserve(count);
    for (int j = 0; j < count; ++j) {
        const FloquetMode m = floquet_mode(p, g.k(j));
        if (m.degenerate)
            throw NoChiralAxisError("gap closing on the momentum grid: axis undefined");
        n.push_back(m.axis);
    }
    return n;
}

int winding_in_frame(WalkParams p, TimeFrame frame) {
    p.frame = frame;
    const BlochVector axis = chiral_axis(p);
    // Right-handed basis (e1, e2, axis) in the winding plane.
    BlochVector ref{0.0, 1.0, 0.0};
    if (std::abs(axis.dot(ref)) > 0.9) ref = {0.0, 0.0, 1.0};
    BlochVector e1 = ref;
    const double proj = e1.dot(axis);
    e1 = BlochVector{e1.x - proj * axis.x, e1.y - proj * axis.y, e1.z - proj * axis.z}
             .normalized();
    const BlochVector e2 = axis.cross(e1);

    for (int count = 256; count <= (1 << 16); count *= 2) {
        const std::vector<BlochVector> n = grid_axes(p, count);
        double total = 0.0;
        bool ok = true;
        for (int j = 0; j < count; ++j) {
            const BlochVector& cur = n[j];
            const BlochVector& nxt = n[(j + 1) % count];
            const double phi_cur = std::atan2(cur.dot(e2), cur.dot(e1));
            const double phi_nxt = std::atan2(nxt.dot(e2), nxt.dot(e1));
            const double step = canonical_angle(phi_nxt - phi_cur);
            if (std::abs(step) >= kPi / 2.0) {
                ok = false;
                break;
            }
            total += step;
        }
        if (!ok) continue;
        const double raw = total / (2.0 * kPi);
        const int w = static_cast<int>(std::lround(raw));
        if (std::abs(raw - w) < 0.01) return w;
    }
    throw UnwrapFailureError("winding unwrap failed at maximum grid refinement");
}

}  // namespace

Z2Class z2_class(const InvariantDoublet& d) {
    return d.nu0_x2 * d.nuPi_x2 < 0 ? Z2Class::Trivial : Z2Class::Nontrivial;
}

BlochVector chiral_axis(const WalkParams& p) {
    // The doublet construction relies on the symmetric frames; other frames
    // are rejected up front (their coplanar plane, where one exists, winds
    // differently and would silently miscalibrate the invariants).
    if (p.frame != TimeFrame::SymmetricA && p.frame != TimeFrame::SymmetricB)
        throw NoChiralAxisError("chiral axis is defined in the symmetric frames");
    constexpr int kCount = 256;
    const std::vector<BlochVector> n = grid_axes(p, kCount);

    double best = 0.0;
    BlochVector axis{};
    for (int a = 0; a < kCount; a += 5) {
        for (int b = a + 1; b < kCount; b += 7) {
            const BlochVector c = n[a].cross(n[b]);
            const double m = c.norm();
            if (m > best) {
                best = m;
                axis = c;
            }
        }
    }
    if (best < 1e-6) {
        // Constant Bloch field (flat bands): any direction orthogonal to it
        // qualifies; take a deterministic one.
        BlochVector ref{1.0, 0.0, 0.0};
        if (std::abs(ref.dot(n[0])) > 0.9) ref = {0.0, 1.0, 0.0};
        const double proj = ref.dot(n[0]);
        axis = BlochVector{ref.x - proj * n[0].x, ref.y - proj * n[0].y,
                           ref.z - proj * n[0].z};
    }
    axis = canonical_sign(axis.normalized());
    for (const BlochVector& v : n) {
        if (std::abs(axis.dot(v)) >= 1e-8)
            throw NoChiralAxisError("Bloch field is not coplanar: no chiral axis");
    }
    return axis;
}

int winding_number(const WalkParams& p) { return winding_in_frame(p, p.frame); }

InvariantDoublet invariant_doublet(const WalkParams& p) {
    if (min_quasienergy_gap(p) < 1e-9)
        throw GaplessError("invariant doublet undefined at a gap closing");
    const int wa = kWindingSignA * winding_in_frame(p, TimeFrame::SymmetricA);
    const int wb = kWindingSignB * winding_in_frame(p, TimeFrame::SymmetricB);
    return {wa + wb, wa - wb};  // stores 2*nu0, 2*nuPi
}

std::vector<BoundaryLine> gap_closing_boundaries() {
    return {
        {1.0, 1.0, 0.0, 0.0, 0.0},          // theta1 + theta2 = 0: eps(0) = 0
        {1.0, 1.0, 2.0 * kPi, 0.0, kPi},    // theta1 + theta2 = +2pi: eps(0) = pi
        {1.0, 1.0, -2.0 * kPi, 0.0, kPi},   // theta1 + theta2 = -2pi: eps(0) = pi
        {1.0, -1.0, 0.0, kPi, kPi},         // theta1 - theta2 = 0: eps(pi) = pi
        {1.0, -1.0, 2.0 * kPi, kPi, 0.0},   // theta1 - theta2 = +2pi: eps(pi) = 0
        {1.0, -1.0, -2.0 * kPi, kPi, 0.0},  // theta1 - theta2 = -2pi: eps(pi) = 0
    };
}

double distance_to_boundary(Angle theta1, Angle theta2) {
    double best = std::numeric_limits<double>::infinity();
    for (const BoundaryLine& l : gap_closing_boundaries()) {
        const double num =
            std::abs(l.a1 * theta1.radians() + l.a2 * theta2.radians() - l.rhs);
        best = std::min(best, num / std::hypot(l.a1, l.a2));
    }
    return best;
}

std::vector<int> region_signature(Angle theta1, Angle theta2) {
    std::vector<int> sig;
    for (const BoundaryLine& l : gap_closing_boundaries()) {
        const double v = l.a1 * theta1.radians() + l.a2 * theta2.radians() - l.rhs;
        sig.push_back(v > 0.0 ? 1 : (v < 0.0 ? -1 : 0));
    }
    return sig;
}

PhaseDiagram phase_diagram(int res) {
    if (res < 32) throw std::invalid_argument("phase diagram resolution must be >= 32");
    PhaseDiagram out{res, {}};
    out.cells.reserve(static_cast<size_t>(res) * res);
    const double h = 2.0 * kPi / res;
    for (int i = 0; i < res; ++i) {
        for (int j = 0; j < res; ++j) {
            PhaseCell cell{};
            cell.theta1 = -kPi + (i + 0.5) * h;
            cell.theta2 = -kPi + (j + 0.5) * h;
            const WalkParams p{Angle(cell.theta1), Angle(cell.theta2)};
            if (min_quasienergy_gap(p, 256) < 1e-3) {
                cell.gapless = true;
            } else {
                cell.doublet = invariant_doublet(p);
            }
            out.cells.push_back(cell);
        }
    }
    return out;
}

}  // namespace qwalk
