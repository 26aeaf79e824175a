#include "qwalk/quench.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qwalk {

namespace {

constexpr complexd kI{0.0, 1.0};
constexpr double kUndefinedPhaseFloor = 1e-9;
constexpr double kLogClamp = -34.538776394910684;  // ln(1e-15)

Spinor gauge_fixed(Spinor v) {
    const double au = std::abs(v.up);
    const double ad = std::abs(v.down);
    const complexd lead = (au + 1e-9 >= ad) ? v.up : v.down;
    const double m = std::abs(lead);
    if (m < 1e-15) return v;
    const complexd phase = std::conj(lead) / m;
    return {v.up * phase, v.down * phase};
}

Spinor band_spinor(const WalkParams& p, double k, int band_sign) {
    const FloquetMode m = floquet_mode(p, k);
    const BlochVector n = band_sign < 0 ? m.axis : -m.axis;
    // Eigenvector of n.sigma with eigenvalue -1, branch chosen away from the pole.
    Spinor v;
    if (n.z <= 0.0) {
        v = {complexd(1.0 - n.z, 0.0), complexd(-n.x, -n.y)};
    } else {
        v = {complexd(n.x, -n.y), complexd(-(1.0 + n.z), 0.0)};
    }
    return gauge_fixed(v.normalized());
}

std::vector<WalkParams> build_ramp(const AdiabaticPrep& spec) {
    if (spec.path.size() < 2)
        throw std::invalid_argument("adiabatic path needs at least two points");
    if (spec.steps_per_leg < 1)
        throw std::invalid_argument("adiabatic ramp needs at least one step per leg");
    const TimeFrame frame = spec.path.front().frame;
    for (const WalkParams& q : spec.path)
        if (q.frame != frame)
            throw std::invalid_argument("adiabatic path must stay in one time frame");
    if (!is_flat_band(spec.path.front()))
        throw std::invalid_argument("adiabatic path must start on a flat band");

    std::vector<WalkParams> ramp;
    ramp.reserve((spec.path.size() - 1) * spec.steps_per_leg);
    for (size_t leg = 0; leg + 1 < spec.path.size(); ++leg) {
        const double a1 = spec.path[leg].theta1.radians();
        const double a2 = spec.path[leg].theta2.radians();
        const double b1 = spec.path[leg + 1].theta1.radians();
        const double b2 = spec.path[leg + 1].theta2.radians();
        // Within the canonical angle square the closings lie on the two
        // diagonals; a leg whose sum or difference functional changes sign
        // crosses one regardless of how finely it is sampled.
        if ((a1 + a2) * (b1 + b2) < 0.0 || (a1 - a2) * (b1 - b2) < 0.0)
            throw PathCrossesBoundaryError("adiabatic leg crosses a gap closing");
        for (int i = 1; i <= spec.steps_per_leg; ++i) {
            const double s = static_cast<double>(i) / spec.steps_per_leg;
            ramp.push_back({Angle(a1 + s * (b1 - a1)), Angle(a2 + s * (b2 - a2)), frame});
        }
    }
    for (const WalkParams& q : ramp) {
        if (min_quasienergy_gap(q, 128) < 1e-3)
            throw PathCrossesBoundaryError("adiabatic path passes a gap closing");
    }
    return ramp;
}

}  // namespace

Spinor lower_band_spinor(const WalkParams& p, double k) { return band_spinor(p, k, -1); }
Spinor upper_band_spinor(const WalkParams& p, double k) { return band_spinor(p, k, +1); }

InitialPreparer::InitialPreparer(InitialSpec spec) : spec_(std::move(spec)) {
    if (const auto* ad = std::get_if<AdiabaticPrep>(&spec_)) ramp_ = build_ramp(*ad);
}

Spinor InitialPreparer::at(double k) const {
    if (const auto* ft = std::get_if<FlatTrivial>(&spec_)) {
        (void)ft;
        const double r = 1.0 / std::sqrt(2.0);
        return {complexd(r, 0.0), complexd(0.0, -r)};
    }
    if (const auto* fn = std::get_if<FlatNontrivial>(&spec_)) {
        return lower_band_spinor({Angle(kPi), fn->theta2, TimeFrame::Standard}, k);
    }
    if (const auto* lb = std::get_if<ExactLowerBand>(&spec_)) {
        return lower_band_spinor(lb->params, k);
    }
    const auto& ad = std::get<AdiabaticPrep>(spec_);
    Spinor s = lower_band_spinor(ad.path.front(), k);
    for (const WalkParams& q : ramp_) s = walk_unitary(q, k).apply(s);
    return s;
}

MomentumField prepare_initial(const InitialSpec& spec, const MomentumGrid& g) {
    const InitialPreparer prep(spec);
    MomentumField f{g, {}, {}};
    f.spinors.reserve(g.count());
    for (int j = 0; j < g.count(); ++j) f.spinors.push_back(prep.at(g.k(j)));

    if (const auto* ad = std::get_if<AdiabaticPrep>(&spec)) {
        double worst_fid = 1.0;
        double worst_k = 0.0;
        for (int j = 0; j < g.count(); ++j) {
            const Spinor target = lower_band_spinor(ad->path.back(), g.k(j));
            const double fid = std::norm(inner(target, f.spinors[j]));
            if (fid < worst_fid) {
                worst_fid = fid;
                worst_k = g.k(j);
            }
        }
        if (worst_fid < 0.999)
            throw AdiabaticFailureError("adiabatic ramp missed the target band",
                                        worst_k, worst_fid);
    }
    return f;
}

Spinor prepare_spinor(const InitialSpec& spec, double k) {
    return InitialPreparer(spec).at(k);
}

Spinor evolve_spinor_continuous(const WalkParams& p, double k, const Spinor& s, double t) {
    const FloquetMode m = floquet_mode(p, k);
    return Unitary2::exp_pauli(m.epsilon * t, m.axis).apply(s);
}

MomentumField evolve_continuous(const MomentumField& psi0, const WalkParams& p, double t) {
    MomentumField out = psi0;
    for (int j = 0; j < psi0.grid.count(); ++j)
        out.spinors[j] = evolve_spinor_continuous(p, psi0.grid.k(j), psi0.spinors[j], t);
    return out;
}

MomentumField evolve_stroboscopic(const MomentumField& psi0, const WalkParams& p, int steps) {
    if (steps < 0) throw std::invalid_argument("step count must be nonnegative");
    MomentumField out = psi0;
    for (int j = 0; j < psi0.grid.count(); ++j) {
        const Unitary2 u = walk_unitary(p, psi0.grid.k(j));
        Spinor s = psi0.spinors[j];
        for (int n = 0; n < steps; ++n) s = u.apply(s);
        out.spinors[j] = s;
    }
    return out;
}

std::vector<LoschmidtSample> loschmidt_field(const MomentumField& psi0,
                                             const MomentumField& psit) {
    if (psi0.grid.count() != psit.grid.count())
        throw std::invalid_argument("loschmidt_field: grids differ");
    std::vector<LoschmidtSample> out;
    out.reserve(psi0.spinors.size());
    for (size_t j = 0; j < psi0.spinors.size(); ++j) {
        const complexd g = inner(psi0.spinors[j], psit.spinors[j]);
        out.push_back({psi0.grid.k(static_cast<int>(j)), g, std::abs(g), std::arg(g)});
    }
    return out;
}

BandOverlap band_overlap_at(const WalkParams& p, double k, const Spinor& psi0k) {
    const FloquetMode m = floquet_mode(p, k);
    if (m.degenerate) throw GaplessError("band overlap undefined at a gap closing");
    const Spinor lo = lower_band_spinor(p, k);
    const Spinor hi = upper_band_spinor(p, k);
    return {k, std::norm(inner(lo, psi0k)), std::norm(inner(hi, psi0k)), m.epsilon};
}

std::vector<BandOverlap> band_overlaps(const MomentumField& psi0, const WalkParams& p) {
    std::vector<BandOverlap> out;
    out.reserve(psi0.spinors.size());
    for (int j = 0; j < psi0.grid.count(); ++j)
        out.push_back(band_overlap_at(p, psi0.grid.k(j), psi0.spinors[j]));
    return out;
}

std::vector<double> dynamical_phase(const MomentumField& psi0, const WalkParams& p,
                                    double t) {
    std::vector<double> out;
    out.reserve(psi0.spinors.size());
    for (int j = 0; j < psi0.grid.count(); ++j) {
        const BandOverlap o = band_overlap_at(p, psi0.grid.k(j), psi0.spinors[j]);
        out.push_back(o.eps_f * t * (o.g_amp2 - o.e_amp2));
    }
    return out;
}

std::vector<double> dynamical_phase_expectation(const MomentumField& psi0,
                                                const WalkParams& p, double t) {
    std::vector<double> out;
    out.reserve(psi0.spinors.size());
    for (int j = 0; j < psi0.grid.count(); ++j) {
        const double k = psi0.grid.k(j);
        const FloquetMode m = floquet_mode(p, k);
        const Spinor st = evolve_spinor_continuous(p, k, psi0.spinors[j], t);
        // H_F = eps (n . sigma); <psi|H|psi> = eps (n . bloch(psi)).
        const double energy = m.epsilon * m.axis.dot(bloch_of(st));
        out.push_back(-t * energy);
    }
    return out;
}

std::vector<PgpSample> pgp_field(const MomentumField& psi0, const WalkParams& p, double t) {
    std::vector<PgpSample> out;
    out.reserve(psi0.spinors.size());
    for (int j = 0; j < psi0.grid.count(); ++j) {
        const double k = psi0.grid.k(j);
        const Spinor st = evolve_spinor_continuous(p, k, psi0.spinors[j], t);
        const complexd g = inner(psi0.spinors[j], st);
        PgpSample s{k, 0.0, true};
        if (std::abs(g) < kUndefinedPhaseFloor) {
            s.defined = false;
        } else {
            const BandOverlap o = band_overlap_at(p, k, psi0.spinors[j]);
            const double dyn = o.eps_f * t * (o.g_amp2 - o.e_amp2);
            s.phi_g = canonical_angle(std::arg(g) - dyn);
        }
        out.push_back(s);
    }
    return out;
}

DtopResult dtop_from_phases(std::span<const double> half_zone_phases) {
    if (half_zone_phases.size() < 2)
        throw std::invalid_argument("dtop needs at least two phase samples");
    double total = 0.0;
    for (size_t j = 0; j + 1 < half_zone_phases.size(); ++j)
        total += canonical_angle(half_zone_phases[j + 1] - half_zone_phases[j]);
    const double raw = total / (2.0 * kPi);
    const int value = static_cast<int>(std::lround(raw));
    return {value, std::abs(raw - value)};
}

RateSample rate_function(const MomentumField& psi0, const WalkParams& p, double t) {
    double sum = 0.0;
    bool clamped = false;
    for (int j = 0; j < psi0.grid.count(); ++j) {
        const double k = psi0.grid.k(j);
        const Spinor st = evolve_spinor_continuous(p, k, psi0.spinors[j], t);
        const double r = std::abs(inner(psi0.spinors[j], st));
        double lg = std::log(std::max(r, 0.0));
        if (!(lg > kLogClamp)) {
            lg = kLogClamp;
            clamped = true;
        }
        sum += lg;
    }
    return {-2.0 * sum / psi0.grid.count(), clamped};
}

std::vector<double> CriticalStructure::all_times() const {
    std::vector<double> out;
    for (const auto& ts : times) out.insert(out.end(), ts.begin(), ts.end());
    std::sort(out.begin(), out.end());
    return out;
}

CriticalStructure critical_structure(const InitialSpec& init, const WalkParams& p,
                                     double horizon) {
    const InitialPreparer prep(init);
    const auto excess = [&](double k) {
        return band_overlap_at(p, k, prep.at(k)).e_amp2 - 0.5;
    };

    CriticalStructure out;
    constexpr int kScan = 2048;
    double prev_k = kPi / kScan * 1e-3;  // stay inside the open interval
    double prev_f = excess(prev_k);
    for (int j = 1; j <= kScan; ++j) {
        const double k = kPi * j / kScan - (j == kScan ? kPi / kScan * 1e-3 : 0.0);
        const double f = excess(k);
        if ((prev_f < 0.0) != (f < 0.0) && prev_f != 0.0) {
            double lo = prev_k, hi = k, flo = prev_f;
            while (hi - lo > 1e-10) {
                const double mid = 0.5 * (lo + hi);
                const double fm = excess(mid);
                if ((flo < 0.0) != (fm < 0.0)) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            const double kstar = 0.5 * (lo + hi);
            out.momenta.push_back(kstar);
            out.quasienergies.push_back(floquet_mode(p, kstar).epsilon);
        }
        prev_k = k;
        prev_f = f;
    }
    for (const double eps : out.quasienergies) {
        std::vector<double> ts;
        for (int n = 0;; ++n) {
            const double t = (kPi / eps) * (n + 0.5);
            if (t > horizon) break;
            ts.push_back(t);
        }
        out.times.push_back(std::move(ts));
    }
    return out;
}

FitResult fit_dynamical_phase(std::span<const double> times,
                              std::span<const complexd> amplitudes) {
    if (times.size() != amplitudes.size() || times.size() < 6)
        throw std::invalid_argument("fit needs at least six matched samples");
    std::vector<double> y(times.size());
    double ymax = 0.0;
    for (size_t j = 0; j < times.size(); ++j) {
        y[j] = amplitudes[j].imag();
        ymax = std::max(ymax, std::abs(y[j]));
    }
    if (ymax < 1e-9) return {0.0, 0.0, true};

    const auto sse = [&](double w, double* amp_out) {
        double sy = 0.0, ss = 0.0;
        for (size_t j = 0; j < times.size(); ++j) {
            const double s = std::sin(w * times[j]);
            sy += y[j] * s;
            ss += s * s;
        }
        if (ss < 1e-12) return std::numeric_limits<double>::infinity();
        const double a = sy / ss;
        if (amp_out) *amp_out = a;
        double e = 0.0;
        for (size_t j = 0; j < times.size(); ++j) {
            const double r = y[j] - a * std::sin(w * times[j]);
            e += r * r;
        }
        return e;
    };

    constexpr int kScan = 6000;
    double best_w = 0.0, best_e = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= kScan; ++i) {
        const double w = kPi * i / kScan;
        const double e = sse(w, nullptr);
        if (e < best_e) {
            best_e = e;
            best_w = w;
        }
    }
    // Golden-section refinement around the scan minimum.
    double lo = std::max(1e-6, best_w - kPi / kScan);
    double hi = std::min(kPi + 1e-6, best_w + kPi / kScan);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = sse(c, nullptr), fd = sse(d, nullptr);
    for (int it = 0; it < 120; ++it) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = sse(c, nullptr);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = sse(d, nullptr);
        }
    }
    double amp = 0.0;
    const double w = 0.5 * (lo + hi);
    sse(w, &amp);
    return {amp, w, false};
}

QuenchEngine::QuenchEngine(InitialSpec init, WalkParams final_params, int grid_count)
    : preparer_(std::move(init)), final_(final_params), base_count_(grid_count) {
    if (grid_count < 128) throw std::invalid_argument("quench grid must be >= 128");
    data(base_count_);  // validates the preparation up front
}

const QuenchEngine::GridData& QuenchEngine::data(int count) const {
    auto it = cache_.find(count);
    if (it != cache_.end()) return it->second;
    GridData d{prepare_initial(preparer_.spec(), MomentumGrid(count)), {}, {}};
    d.eps.reserve(count);
    d.delta.reserve(count);
    for (int j = 0; j < count; ++j) {
        const BandOverlap o =
            band_overlap_at(final_, d.field.grid.k(j), d.field.spinors[j]);
        d.eps.push_back(o.eps_f);
        d.delta.push_back(o.g_amp2 - o.e_amp2);
    }
    return cache_.emplace(count, std::move(d)).first->second;
}

const MomentumField& QuenchEngine::field(int count) const { return data(count).field; }

namespace {

// Two-level closed form: G_k(t) = cos(eps t) + i Delta sin(eps t) and
// phi_dyn = eps t Delta, for any normalized initial spinor.
PgpSample pgp_sample_closed_form(double k, double eps, double delta, double t) {
    const complexd g{std::cos(eps * t), delta * std::sin(eps * t)};
    if (std::abs(g) < kUndefinedPhaseFloor) return {k, 0.0, false};
    return {k, canonical_angle(std::arg(g) - eps * t * delta), true};
}

}  // namespace

std::vector<PgpSample> QuenchEngine::pgp_at(double t) const {
    const GridData& d = data(base_count_);
    std::vector<PgpSample> out;
    out.reserve(base_count_);
    for (int j = 0; j < base_count_; ++j)
        out.push_back(pgp_sample_closed_form(d.field.grid.k(j), d.eps[j], d.delta[j], t));
    return out;
}

std::optional<DtopResult> QuenchEngine::dtop_at(double t) const {
    for (int count = base_count_; count <= (1 << 16); count *= 2) {
        const GridData& d = data(count);
        std::vector<double> half;
        half.reserve(count / 2 + 1);
        bool defined = true;
        for (int j : d.field.grid.half_zone_indices()) {
            const PgpSample s =
                pgp_sample_closed_form(d.field.grid.k(j), d.eps[j], d.delta[j], t);
            if (!s.defined) {
                defined = false;
                break;
            }
            half.push_back(s.phi_g);
        }
        if (!defined) return std::nullopt;
        const DtopResult r = dtop_from_phases(half);
        if (r.residual < 0.05) return r;
    }
    throw UnwrapFailureError("dtop unwrap residual persisted at maximum refinement");
}

RateSample QuenchEngine::rate_at(double t) const {
    const GridData& d = data(base_count_);
    double sum = 0.0;
    bool clamped = false;
    for (int j = 0; j < base_count_; ++j) {
        const double c = std::cos(d.eps[j] * t);
        const double s = d.delta[j] * std::sin(d.eps[j] * t);
        double lg = 0.5 * std::log(c * c + s * s);
        if (!(lg > kLogClamp)) {
            lg = kLogClamp;
            clamped = true;
        }
        sum += lg;
    }
    return {-2.0 * sum / base_count_, clamped};
}

CriticalStructure QuenchEngine::critical(double horizon) const {
    return critical_structure(preparer_.spec(), final_, horizon);
}

}  // namespace qwalk
