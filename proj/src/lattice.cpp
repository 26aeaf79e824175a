#include "qwalk/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

namespace {
constexpr complexd kI{0.0, 1.0};
}

double LatticeState::norm2() const {
    double n = 0.0;
    for (const Spinor& s : amps) n += s.norm2();
    return n;
}

Spinor LatticeState::at(int site) const {
    const int i = site - offset;
    if (i < 0 || i >= static_cast<int>(amps.size())) return {};
    return amps[i];
}

LatticeState localized(int site, const Spinor& s) { return {site, {s}}; }

complexd lattice_inner(const LatticeState& a, const LatticeState& b) {
    const int lo = std::min(a.min_site(), b.min_site());
    const int hi = std::max(a.max_site(), b.max_site());
    complexd acc = 0.0;
    for (int x = lo; x <= hi; ++x) acc += inner(a.at(x), b.at(x));
    return acc;
}

LatticeState apply_factor(const LatticeState& s, const WalkFactor& f) {
    const int n = static_cast<int>(s.amps.size());
    switch (f.kind) {
        case WalkFactor::Kind::Rotation: {
            const double c = std::cos(f.angle / 2.0);
            const double sn = std::sin(f.angle / 2.0);
            LatticeState out = s;
            for (Spinor& a : out.amps)
                a = {c * a.up - sn * a.down, sn * a.up + c * a.down};
            return out;
        }
        case WalkFactor::Kind::ShiftUp: {
            LatticeState out{s.offset, std::vector<Spinor>(n + 1)};
            for (int i = 0; i < n; ++i) {
                out.amps[i].down = s.amps[i].down;
                out.amps[i + 1].up = s.amps[i].up;
            }
            return out;
        }
        case WalkFactor::Kind::ShiftDown: {
            LatticeState out{s.offset - 1, std::vector<Spinor>(n + 1)};
            for (int i = 0; i < n; ++i) {
                out.amps[i + 1].up = s.amps[i].up;
                out.amps[i].down = s.amps[i].down;
            }
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

LatticeState step(const LatticeState& s, const WalkParams& p) {
    LatticeState out = s;
    for (const WalkFactor& f : frame_sequence(p)) out = apply_factor(out, f);
    return out;
}

LatticeState apply_sigma_z_rotation(const LatticeState& s, double angle) {
    const complexd up_phase = std::exp(-kI * (angle / 2.0));
    const complexd down_phase = std::exp(kI * (angle / 2.0));
    LatticeState out = s;
    for (Spinor& a : out.amps) a = {up_phase * a.up, down_phase * a.down};
    return out;
}

std::vector<LatticeState> run(const LatticeState& init, const WalkParams& p, int steps) {
    if (steps < 0) throw std::invalid_argument("step count must be nonnegative");
    std::vector<LatticeState> traj;
    traj.reserve(steps + 1);
    traj.push_back(init);
    for (int t = 0; t < steps; ++t) traj.push_back(step(traj.back(), p));
    return traj;
}

Spinor momentum_amplitude(const LatticeState& s, double k) {
    Spinor acc{};
    for (int i = 0; i < static_cast<int>(s.amps.size()); ++i) {
        const double x = s.offset + i;
        const complexd w = std::exp(-kI * (k * x));
        acc.up += w * s.amps[i].up;
        acc.down += w * s.amps[i].down;
    }
    return acc;
}

MomentumField to_momentum(const LatticeState& s, const MomentumGrid& g) {
    if (g.count() < static_cast<int>(s.amps.size()))
        throw std::invalid_argument("momentum grid is smaller than the lattice support");
    MomentumField f{g, {}, {}};
    f.spinors.reserve(g.count());
    f.weights.reserve(g.count());
    for (int j = 0; j < g.count(); ++j) {
        const Spinor raw = momentum_amplitude(s, g.k(j));
        const double w = std::sqrt(raw.norm2());
        if (w < 1e-12)
            throw ZeroWeightError("momentum component carries no weight", g.k(j));
        f.spinors.push_back({raw.up / w, raw.down / w});
        f.weights.push_back(w);
    }
    return f;
}

LatticeState flat_band_seed(const WalkParams& flat_params) {
    if (!is_flat_band(flat_params))
        throw std::invalid_argument("flat_band_seed requires flat-band parameters");

    // Each symmetric frame conjugates a standard-frame product by a half
    // rotation; SymmetricB conjugates the angle-swapped one. The seed is the
    // localized lower band of that inner system, rotated sitewise.
    double inner1 = flat_params.theta1.radians();
    double inner2 = flat_params.theta2.radians();
    double conj_angle = 0.0;
    switch (flat_params.frame) {
        case TimeFrame::Standard:
            break;
        case TimeFrame::SymmetricA:
            conj_angle = inner1 / 2.0;
            break;
        case TimeFrame::SymmetricB:
            conj_angle = inner2 / 2.0;
            std::swap(inner1, inner2);
            break;
        default:
            throw std::invalid_argument(
                "flat-band seeds are defined for the standard and symmetric frames");
    }

    LatticeState seed;
    if (std::abs(canonical_angle(inner2 - kPi)) < 1e-12) {
        const double r = 1.0 / std::sqrt(2.0);
        seed = localized(0, {complexd(r, 0.0), complexd(0.0, -r)});
    } else {
        // Gate-sequence preparation: one (pi, pi/2) cycle from |0 up>, then a
        // sigma_z rotation by pi/2, giving (|0 up> - i |-1 down>)/sqrt(2) --
        // the lower band of every walk with the first angle at pi.
        seed = localized(0, {1.0, 0.0});
        seed = step(seed, {Angle(kPi), Angle(kPi / 2.0), TimeFrame::Standard});
        seed = apply_sigma_z_rotation(seed, kPi / 2.0);
    }
    if (conj_angle != 0.0)
        seed = apply_factor(seed, {WalkFactor::Kind::Rotation, conj_angle});
    return seed;
}

LatticeState lattice_initial_state(const InitialSpec& spec) {
    if (const auto* ft = std::get_if<FlatTrivial>(&spec)) {
        return flat_band_seed({ft->theta1, Angle(kPi), TimeFrame::Standard});
    }
    if (const auto* fn = std::get_if<FlatNontrivial>(&spec)) {
        return flat_band_seed({Angle(kPi), fn->theta2, TimeFrame::Standard});
    }
    if (const auto* ad = std::get_if<AdiabaticPrep>(&spec)) {
        const InitialPreparer prep(*ad);  // validates the path
        LatticeState s = flat_band_seed(ad->path.front());
        for (const WalkParams& q : prep.ramp()) s = step(s, q);
        return s;
    }
    throw std::invalid_argument("exact band states have no finite lattice support");
}

double consistency_report(const WalkParams& p, const LatticeState& init, int steps,
                          const MomentumGrid& g) {
    const std::vector<LatticeState> traj = run(init, p, steps);

    std::vector<Spinor> momentum(g.count());
    for (int j = 0; j < g.count(); ++j) momentum[j] = momentum_amplitude(init, g.k(j));

    double worst = 0.0;
    for (int t = 0; t <= steps; ++t) {
        for (int j = 0; j < g.count(); ++j) {
            const Spinor bridged = momentum_amplitude(traj[t], g.k(j));
            worst = std::max(worst, std::abs(bridged.up - momentum[j].up));
            worst = std::max(worst, std::abs(bridged.down - momentum[j].down));
        }
        if (t < steps) {
            for (int j = 0; j < g.count(); ++j)
                momentum[j] = walk_unitary(p, g.k(j)).apply(momentum[j]);
        }
    }
    return worst;
}

}  // namespace qwalk
