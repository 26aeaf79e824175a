// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qwalk/experiment.hpp"
#include "qwalk/topology.hpp"

using namespace qwalk;

namespace {

struct Reporter {
    bool ok = true;
    std::vector<std::string> notes;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            notes.push_back("failed: " + what);
        }
    }
    void note(const std::string& text) { notes.push_back(text); }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

const char* kScenarioPresets[] = {"fig1", "fig2-star", "fig3", "fig4"};

// ---------------------------------------------------------------------------

void criterion_1_critical_time(Reporter& r) {
    const auto start = std::chrono::steady_clock::now();
    const ExperimentConfig c = preset("fig1");
    const CriticalStructure crit = critical_structure(c.init, c.final_params, 10.0);
    const double elapsed = seconds_since(start);
    r.require(crit.momenta.size() == 1, "exactly one critical momentum");
    if (!crit.momenta.empty()) {
        r.require(std::abs(crit.times[0][0] - 1.513) <= 0.005,
                  "first critical time within 1.513 +- 0.005");
        char buf[128];
        std::snprintf(buf, sizeof(buf), "k* = %.6f, t0 = %.6f", crit.momenta[0],
                      crit.times[0][0]);
        r.note(buf);
    }
    r.require(elapsed < 1.0, "runtime under one second");
}

void criterion_2_plateaus(Reporter& r) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentConfig c = preset("fig1");
    c.dt = 0.05;
    c.kgrid = 1024;
    const QuenchEngine engine(c.init, c.final_params, c.kgrid);
    const double t0 = engine.critical(10.0).all_times().front();
    for (double t = 0.05; t <= 10.0 + 1e-9; t += 0.05) {
        const auto w = engine.dtop_at(t);
        if (!w) continue;
        int want = -1;
        if (t < t0 - 1e-9)
            want = 0;
        else if (t > t0 + 1e-9 && t < 3.0 * t0 - 1e-9)
            want = 1;
        else if (t > 3.0 * t0 + 1e-9 && t < 5.0 * t0 - 1e-9)
            want = 2;
        else if (t > 5.0 * t0 + 1e-9 && t < 7.0 * t0 - 1e-9)
            want = 3;  // engine-side prediction past the published window
        if (want >= 0 && w->value != want) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "dtop at t = %.2f is %d, expected %d", t,
                          w->value, want);
            r.require(false, buf);
            return;
        }
    }
    const double elapsed = seconds_since(start);
    r.note("plateau sequence 0, 1, 2 confirmed; value 3 holds past 5 t0");
    r.require(elapsed < 10.0, "runtime under ten seconds");
}

void criterion_3_phase_line(Reporter& r) {
    for (const char* name : {"fig2-star", "fig2-square"}) {
        ExperimentConfig c = preset(name);
        const QuenchEngine engine(c.init, c.final_params, 1024);
        r.require(engine.critical(10.0).momenta.empty(),
                  std::string(name) + " has an empty critical structure");
        for (double t = 0.0; t <= 10.0 + 1e-9; t += 0.1) {
            const auto w = engine.dtop_at(t);
            if (w && w->value != 0) {
                r.require(false, std::string(name) + " dtop stays zero");
                return;
            }
        }
    }
    for (const char* name : {"fig2-diamond", "fig2-circle"}) {
        ExperimentConfig c = preset(name);
        const QuenchEngine engine(c.init, c.final_params, 1024);
        r.require(!engine.critical(10.0).momenta.empty(),
                  std::string(name) + " has critical momenta");
        int prev = 0;
        for (double t = 0.0; t <= 10.0 + 1e-9; t += 0.1) {
            const auto w = engine.dtop_at(t);
            if (!w) continue;
            if (w->value < prev) {
                r.require(false, std::string(name) + " dtop is monotone nondecreasing");
                return;
            }
            prev = w->value;
        }
        r.require(prev >= 1, std::string(name) + " dtop eventually jumps");
    }
}

void criterion_4_accidental(Reporter& r) {
    const ExperimentConfig c = preset("fig3");
    const QuenchEngine engine(c.init, c.final_params, 1024);
    const CriticalStructure crit = engine.critical(10.0);
    r.require(crit.momenta.size() >= 2, "at least two critical momentum families");
    int families_in_window = 0;
    for (const auto& times : crit.times)
        if (!times.empty()) ++families_in_window;
    r.require(families_in_window >= 2, "two families contribute times within 10 steps");
    bool nonmonotone = false;
    int prev = 0;
    for (double t = 0.0; t <= 10.0 + 1e-9; t += 0.05) {
        const auto w = engine.dtop_at(t);
        if (!w) continue;
        if (w->value < prev) nonmonotone = true;
        prev = w->value;
    }
    r.require(nonmonotone, "dtop sequence is not monotone");
}

void criterion_5_invariants(Reporter& r) {
    const auto check = [&](double t1, double t2, InvariantDoublet want,
                           const std::string& label) {
        const InvariantDoublet got = invariant_doublet({Angle(t1), Angle(t2)});
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s: got (%+d/2, %+d/2), reference (%+d/2, %+d/2)",
                      label.c_str(), got.nu0_x2, got.nuPi_x2, want.nu0_x2, want.nuPi_x2);
        if (got == want) {
            r.note(buf);
        } else {
            r.require(false, buf);
        }
    };
    check(8.0 * kPi / 9.0, kPi, {-1, 1}, "trivial flat band (8pi/9, pi)");
    check(8.0 * kPi / 9.0, -kPi / 3.0, {1, 1}, "fig1 target (8pi/9, -pi/3)");
    check(8.6 * kPi / 9.0, kPi / 3.0, {1, 1}, "fig3 start (8.6pi/9, pi/3)");
    check(-7.0 * kPi / 9.0, kPi / 2.0, {-1, -1}, "fig3 target (-7pi/9, pi/2)");
    check(7.0 * kPi / 9.0, 6.0 * kPi / 9.0, {1, 1}, "fig2 crossed-side region");
    check(5.0 * kPi / 9.0, 8.0 * kPi / 9.0, {1, -1}, "fig2 same-side region");
    if (!r.ok)
        r.note("note: the same-side region reference (+1/2, -1/2) contradicts the "
               "(8pi/9, pi) anchor (-1/2, +1/2); both parameter points sit in one "
               "gapped region, so no calibration satisfies both (see project notes)");

    // Constancy per analytic region, sampled away from the boundary lines.
    const double offsets[][2] = {{0.3, 0.1}, {-0.2, 0.25}, {0.15, -0.3}};
    const double centers[][2] = {{0.0, kPi / 2.0},
                                 {kPi / 2.0, 0.0},
                                 {0.0, -kPi / 2.0},
                                 {-kPi / 2.0, 0.0}};
    for (const auto& c : centers) {
        const InvariantDoublet ref = invariant_doublet({Angle(c[0]), Angle(c[1])});
        for (const auto& o : offsets) {
            const Angle t1(c[0] + o[0]);
            const Angle t2(c[1] + o[1]);
            if (distance_to_boundary(t1, t2) < 0.1) continue;
            r.require(invariant_doublet({t1, t2}) == ref,
                      "doublet constant within each analytic region");
        }
    }
}

void criterion_6_cusp_jump(Reporter& r) {
    for (const std::string name : preset_names()) {
        const ExperimentConfig c = preset(name);
        const QuenchEngine engine(c.init, c.final_params, 1024);
        const std::vector<double> tn = engine.critical(10.0).all_times();

        const double dt = 0.01;
        std::vector<double> ts, lam;
        std::vector<int> dtop;
        std::vector<bool> have;
        for (double t = 0.0; t <= 10.0 + 1e-9; t += dt) {
            ts.push_back(t);
            lam.push_back(engine.rate_at(t).lambda);
            const auto w = engine.dtop_at(t);
            have.push_back(w.has_value());
            dtop.push_back(w ? w->value : 0);
        }

        // Every integer change sits within one sample of a critical time.
        int prev = dtop[0];
        for (size_t i = 1; i < ts.size(); ++i) {
            if (!have[i]) continue;
            if (dtop[i] != prev) {
                bool matched = false;
                for (double tc : tn)
                    if (tc >= ts[i] - dt - 1e-9 && tc <= ts[i] + 1e-9) matched = true;
                r.require(matched, name + ": dtop change at t = " +
                                       std::to_string(ts[i]) +
                                       " lies within 0.01 of a critical time");
            }
            if (have[i]) prev = dtop[i];
        }

        // Second-difference peaks of the rate function match the same times.
        std::vector<double> dd(ts.size(), 0.0);
        for (size_t i = 1; i + 1 < ts.size(); ++i)
            dd[i] = lam[i + 1] - 2.0 * lam[i] + lam[i - 1];
        std::vector<double> mags;
        for (size_t i = 1; i + 1 < ts.size(); ++i) {
            bool near = false;
            for (double tc : tn)
                if (std::abs(ts[i] - tc) < 0.2) near = true;
            if (!near) mags.push_back(std::abs(dd[i]));
        }
        std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
        const double baseline = mags[mags.size() / 2];
        const double threshold = std::max(12.0 * baseline, 1e-4);

        for (double tc : tn) {
            if (tc < 0.06 || tc > 9.94) continue;
            double best = 0.0;
            for (size_t i = 1; i + 1 < ts.size(); ++i)
                if (std::abs(ts[i] - tc) <= 0.05) best = std::max(best, dd[i]);
            r.require(best > threshold,
                      name + ": rate-function curvature peaks within 0.05 of t = " +
                          std::to_string(tc));
        }
        for (size_t i = 2; i + 2 < ts.size(); ++i) {
            const bool local_max = dd[i] > dd[i - 1] && dd[i] >= dd[i + 1];
            if (!local_max || dd[i] <= threshold) continue;
            bool matched = false;
            for (double tc : tn)
                if (std::abs(ts[i] - tc) <= 0.05) matched = true;
            r.require(matched, name + ": curvature peak at t = " + std::to_string(ts[i]) +
                                   " has a critical time within 0.05");
        }
    }
}

void criterion_7_engine_equivalence(Reporter& r) {
    for (const std::string name : preset_names()) {
        const ExperimentConfig c = preset(name);
        const LatticeState init = lattice_initial_state(c.init);
        const MomentumGrid grid(1024);
        const double deviation = consistency_report(c.final_params, init, 10, grid);
        r.require(deviation < 1e-10,
                  name + ": lattice/momentum bridge deviation " +
                      std::to_string(deviation) + " < 1e-10");

        const MomentumField psi0 = prepare_initial(c.init, MomentumGrid(512));
        for (int t : {1, 5, 10}) {
            const MomentumField a = evolve_continuous(psi0, c.final_params, t);
            const MomentumField b = evolve_stroboscopic(psi0, c.final_params, t);
            double worst = 0.0;
            for (size_t j = 0; j < a.spinors.size(); ++j) {
                worst = std::max(worst, std::abs(a.spinors[j].up - b.spinors[j].up));
                worst = std::max(worst, std::abs(a.spinors[j].down - b.spinors[j].down));
            }
            r.require(worst < 1e-9, name + ": continuous matches stroboscopic at t = " +
                                        std::to_string(t));
        }
    }
}

void criterion_8_conservation(Reporter& r) {
    // Exact band-state initial conditions for every scenario's systems.
    struct Case {
        const char* label;
        InitialSpec init;
        WalkParams final_params;
    };
    const std::vector<Case> cases = {
        {"fig1", FlatTrivial{Angle(8.0 * kPi / 9.0)},
         {Angle(8.0 * kPi / 9.0), Angle(-kPi / 3.0)}},
        {"fig2-circle", FlatTrivial{Angle(8.0 * kPi / 9.0)},
         {Angle(8.0 * kPi / 9.0), Angle(5.0 * kPi / 9.0)}},
        {"fig3-exact",
         ExactLowerBand{{Angle(8.6 * kPi / 9.0), Angle(kPi / 3.0), TimeFrame::SymmetricA}},
         {Angle(-7.0 * kPi / 9.0), Angle(kPi / 2.0), TimeFrame::SymmetricA}},
        {"fig4-exact",
         ExactLowerBand{{Angle(-kPi / 3.0), Angle(8.8 * kPi / 9.0), TimeFrame::Standard}},
         {Angle(-kPi / 3.0), Angle(8.8 * kPi / 9.0), TimeFrame::Shift1}},
    };

    for (const Case& c : cases) {
        const MomentumGrid grid(512);
        const MomentumField psi0 = prepare_initial(c.init, grid);

        // Energy expectation drift.
        for (int j = 0; j < grid.count(); j += 29) {
            const double k = grid.k(j);
            const FloquetMode m = floquet_mode(c.final_params, k);
            const double e0 = m.epsilon * m.axis.dot(bloch_of(psi0.spinors[j]));
            for (double t : {2.7, 8.1}) {
                const Spinor st =
                    evolve_spinor_continuous(c.final_params, k, psi0.spinors[j], t);
                const double et = m.epsilon * m.axis.dot(bloch_of(st));
                r.require(std::abs(et - e0) < 1e-12,
                          std::string(c.label) + ": energy drift below 1e-12");
            }
        }

        // Geometric-phase endpoint identity.
        for (double t : {1.3, 4.9, 9.2}) {
            const auto pgp = pgp_field(psi0, c.final_params, t);
            if (!pgp[grid.index_of_zero()].defined || !pgp[0].defined) continue;
            const double mismatch = std::abs(canonical_angle(
                pgp[grid.index_of_zero()].phi_g - pgp[0].phi_g));
            r.require(mismatch < 1e-6,
                      std::string(c.label) + ": endpoint identity within 1e-6");
        }

        // Winding residual before rounding.
        const QuenchEngine engine(c.init, c.final_params, 512);
        for (double t = 0.25; t <= 10.0; t += 0.25) {
            const auto w = engine.dtop_at(t);
            if (w) r.require(w->residual < 0.05, "dtop residual below 0.05");
        }

        // Global-phase gauge invariance.
        MomentumField rotated = psi0;
        const complexd phase = std::polar(1.0, 2.5);
        for (Spinor& s : rotated.spinors) s = {s.up * phase, s.down * phase};
        for (double t : {1.7, 6.2}) {
            const auto a = pgp_field(psi0, c.final_params, t);
            const auto b = pgp_field(rotated, c.final_params, t);
            double worst = 0.0;
            for (size_t j = 0; j < a.size(); ++j)
                if (a[j].defined && b[j].defined)
                    worst = std::max(worst,
                                     std::abs(canonical_angle(a[j].phi_g - b[j].phi_g)));
            const double dl = std::abs(rate_function(psi0, c.final_params, t).lambda -
                                       rate_function(rotated, c.final_params, t).lambda);
            r.require(worst < 1e-10 && dl < 1e-10,
                      std::string(c.label) + ": gauge invariance to 1e-10");
        }
    }
}

void criterion_9_tomography(Reporter& r) {
    const auto reconstruct_state = [&](const LatticeState& truth, long long shots,
                                       uint64_t seed) {
        const CountSets counts =
            shots > 0 ? synthesize_counts(truth, shots, seed) : synthesize_counts_exact(truth);
        AnnealConfig cfg;
        cfg.seed = seed;
        return reconstruct(counts, support_of(counts), cfg);
    };

    for (const char* name : kScenarioPresets) {
        const ExperimentConfig c = preset(name);
        LatticeState state = lattice_initial_state(c.init);
        for (int t = 0; t <= 5; ++t) {
            const auto start = std::chrono::steady_clock::now();
            const ReconstructionReport rep = reconstruct_state(state, 0, 7);
            const double fid = fidelity(state, rep.state);
            const double elapsed = seconds_since(start);
            char buf[128];
            std::snprintf(buf, sizeof(buf), "%s step %d: exact fidelity %.6f (%.1fs)",
                          name, t, fid, elapsed);
            if (fid < 0.999)
                r.require(false, buf);
            r.require(elapsed < 60.0, "reconstruction under sixty seconds");
            if (t < 5) state = step(state, c.final_params);
        }
    }

    {
        const ExperimentConfig c = preset("fig1");
        LatticeState truth = lattice_initial_state(c.init);
        for (int t = 0; t < 5; ++t) truth = step(truth, c.final_params);
        const ReconstructionReport rep = reconstruct_state(truth, 100000, 11);
        const double fid = fidelity(truth, rep.state);
        char buf[96];
        std::snprintf(buf, sizeof(buf), "five-step state at 1e5 shots: fidelity %.6f",
                      fid);
        r.note(buf);
        r.require(fid >= 0.99, "sampled-count fidelity at least 0.99");

        const ReconstructionReport again = reconstruct_state(truth, 100000, 11);
        bool identical = rep.objective == again.objective &&
                         rep.state.amps.size() == again.state.amps.size();
        if (identical)
            for (size_t i = 0; i < rep.state.amps.size(); ++i)
                identical = identical &&
                            rep.state.amps[i].up == again.state.amps[i].up &&
                            rep.state.amps[i].down == again.state.amps[i].down;
        r.require(identical, "seeded reruns are identical");
    }
}

void criterion_10_preparation_gate(Reporter& r) {
    LatticeState s = localized(0, {1.0, 0.0});
    s = step(s, {Angle(kPi), Angle(kPi / 2.0), TimeFrame::Standard});
    s = apply_sigma_z_rotation(s, kPi / 2.0);

    const double amp = 1.0 / std::sqrt(2.0);
    LatticeState reference{-1, std::vector<Spinor>(2)};
    reference.amps[0].up = amp;                    // site -1, up
    reference.amps[1].down = complexd(0.0, -amp);  // site 0, down

    const double deficit = 1.0 - fidelity(reference, s);
    char buf[96];
    std::snprintf(buf, sizeof(buf),
                  "overlap deficit against (|-1 up> - i |0 down>)/sqrt(2): %.6f",
                  deficit);
    r.require(deficit < 1e-10, buf);

    LatticeState mirrored{-1, std::vector<Spinor>(2)};
    mirrored.amps[0].down = complexd(0.0, -amp);  // site -1, down
    mirrored.amps[1].up = amp;                    // site 0, up
    const double mirrored_deficit = 1.0 - fidelity(mirrored, s);
    std::snprintf(buf, sizeof(buf),
                  "produced state matches (|0 up> - i |-1 down>)/sqrt(2), deficit %.2g",
                  mirrored_deficit);
    r.note(buf);
    const MomentumGrid g(128);
    const MomentumField f = to_momentum(s, g);
    double worst = 1.0;
    for (int j = 0; j < g.count(); ++j) {
        const Spinor lo = lower_band_spinor({Angle(kPi), Angle(kPi / 2.0)}, g.k(j));
        worst = std::min(worst, std::abs(inner(lo, f.spinors[j])));
    }
    std::snprintf(buf, sizeof(buf),
                  "it is the nontrivial flat-band lower band (min overlap %.12f)", worst);
    r.note(buf);
    if (deficit >= 1e-10)
        r.note("note: under the fixed shift conventions the gate sequence yields the "
               "mirrored labeling of the reference ket; see project notes");
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<void(Reporter&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "critical time of the flat-to-nontrivial quench", criterion_1_critical_time},
        {2, "dtop plateau sequence", criterion_2_plateaus},
        {3, "same-class null result and crossed-boundary jumps", criterion_3_phase_line},
        {4, "accidental transition is nonmonotone with two families",
         criterion_4_accidental},
        {5, "invariant doublet calibration", criterion_5_invariants},
        {6, "cusp and jump coincidence on fine scans", criterion_6_cusp_jump},
        {7, "lattice and momentum engines are equivalent", criterion_7_engine_equivalence},
        {8, "conservation and quantization suite", criterion_8_conservation},
        {9, "state reconstruction fidelity and determinism", criterion_9_tomography},
        {10, "preparation gate sequence", criterion_10_preparation_gate},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        Reporter r;
        try {
            c.run(r);
        } catch (const std::exception& e) {
            r.ok = false;
            r.notes.push_back(std::string("exception: ") + e.what());
        }
        std::printf("[%s] criterion %d: %s\n", r.ok ? "PASS" : "FAIL", c.id, c.title);
        for (const std::string& n : r.notes) std::printf("    %s\n", n.c_str());
        if (!r.ok) ++failures;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
