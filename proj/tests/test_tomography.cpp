#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "qwalk/presets.hpp"
#include "qwalk/tomography.hpp"

using namespace qwalk;

namespace {

LatticeState preset_state(const std::string& name, int steps) {
    const ExperimentConfig c = preset(name);
    LatticeState s = lattice_initial_state(c.init);
    for (int i = 0; i < steps; ++i) s = step(s, c.final_params);
    return s;
}

LatticeState prep_b_ket() {
    const double r = 1.0 / std::sqrt(2.0);
    LatticeState s{-1, std::vector<Spinor>(2)};
    s.amps[0].down = complexd(0.0, -r);  // site -1, down
    s.amps[1].up = r;                    // site 0, up
    return s;
}

}  // namespace

TEST_CASE("count synthesis") {
    SUBCASE("single up walker in exact mode") {
        const CountSets c = synthesize_counts_exact(localized(0, {1.0, 0.0}));
        const int i0 = 0 - c.support_min;
        CHECK(c.tally(false, i0, CoinProjector::Up) == doctest::Approx(1.0));
        CHECK(c.tally(false, i0, CoinProjector::Down) == doctest::Approx(0.0));
        CHECK(c.tally(false, i0, CoinProjector::Diagonal) == doctest::Approx(0.5));
        CHECK(c.tally(false, i0, CoinProjector::Circular) == doctest::Approx(0.5));
        double elsewhere = 0.0;
        for (int i = 0; i < c.sites; ++i)
            if (i != i0)
                for (int pj = 0; pj < kProjectorCount; ++pj)
                    elsewhere += c.tally(false, i, static_cast<CoinProjector>(pj));
        CHECK(elsewhere == doctest::Approx(0.0));
    }
    SUBCASE("the back-shifted family exposes the bridged relative phase") {
        // two-site state with up at 0 and down at -1: after the up back-shift
        // both live on site -1 and the circular projector interferes them.
        const double r = 1.0 / std::sqrt(2.0);
        LatticeState s{-1, std::vector<Spinor>(2)};
        s.amps[0].down = complexd(0.0, -r);
        s.amps[1].up = r;
        const CountSets c = synthesize_counts_exact(s);
        const int im1 = -1 - c.support_min;
        // shifted spinor at -1 is (1, -i)/sqrt(2): circular projection empty,
        // diagonal at one half
        CHECK(c.tally(true, im1, CoinProjector::Circular) ==
              doctest::Approx(0.0).epsilon(1e-12));
        CHECK(c.tally(true, im1, CoinProjector::Diagonal) == doctest::Approx(0.5));
        CHECK(c.tally(true, im1, CoinProjector::Up) == doctest::Approx(0.5));
        CHECK(c.tally(true, im1, CoinProjector::Down) == doctest::Approx(0.5));
    }
    SUBCASE("sampled tallies stay within the shot budget and are deterministic") {
        const LatticeState s = preset_state("fig1", 2);
        const CountSets a = synthesize_counts(s, 5000, 99);
        const CountSets b = synthesize_counts(s, 5000, 99);
        CHECK(a.direct == b.direct);
        CHECK(a.shifted == b.shifted);
        for (double n : a.direct) {
            CHECK(n >= 0.0);
            CHECK(n <= 5000.0);
        }
        const CountSets other = synthesize_counts(s, 5000, 100);
        CHECK(other.direct != a.direct);
    }
    SUBCASE("settings count is four per site and family") {
        const CountSets c = synthesize_counts_exact(preset_state("fig1", 3));
        CHECK(c.settings_per_family() == 4 * c.sites);
    }
}

TEST_CASE("likelihood") {
    const LatticeState truth = preset_state("fig1", 2);
    const CountSets counts = synthesize_counts_exact(truth);

    SUBCASE("truth attains the entropy floor and beats random candidates") {
        const double at_truth = negative_log_likelihood(truth, counts);
        CHECK(at_truth == doctest::Approx(objective_floor(counts)).epsilon(1e-12));
        std::mt19937_64 rng(47);
        std::normal_distribution<double> nd;
        for (int i = 0; i < 1000; ++i) {
            LatticeState cand = truth;
            for (Spinor& a : cand.amps)
                a = {complexd(nd(rng), nd(rng)), complexd(nd(rng), nd(rng))};
            const double norm = std::sqrt(cand.norm2());
            for (Spinor& a : cand.amps) a = {a.up / norm, a.down / norm};
            CHECK(negative_log_likelihood(cand, counts) > at_truth);
        }
    }
    SUBCASE("invariant under a global phase") {
        LatticeState rotated = truth;
        const complexd phase = std::polar(1.0, 0.7331);
        for (Spinor& a : rotated.amps) a = {a.up * phase, a.down * phase};
        CHECK(negative_log_likelihood(rotated, counts) ==
              doctest::Approx(negative_log_likelihood(truth, counts)).epsilon(1e-12));
    }
    SUBCASE("improves monotonically as a wrong site phase is corrected") {
        const int site = 2;
        double prev = std::numeric_limits<double>::infinity();
        for (double err : {1.2, 0.9, 0.6, 0.3, 0.0}) {
            LatticeState cand = truth;
            const complexd off = std::polar(1.0, err);
            Spinor& a = cand.amps[site - cand.offset];
            a = {a.up * off, a.down * off};
            const double nll = negative_log_likelihood(cand, counts);
            CHECK(nll < prev + 1e-12);
            prev = nll;
        }
    }
}

TEST_CASE("fidelity") {
    const LatticeState a = preset_state("fig1", 2);
    CHECK(fidelity(a, a) == doctest::Approx(1.0));
    CHECK(fidelity(localized(0, {1.0, 0.0}), localized(0, {0.0, 1.0})) ==
          doctest::Approx(0.0));
    CHECK(fidelity(localized(0, {1.0, 0.0}), localized(3, {1.0, 0.0})) ==
          doctest::Approx(0.0));
    LatticeState b = a;
    const complexd phase = std::polar(1.0, -2.1);
    for (Spinor& s : b.amps) s = {s.up * phase, s.down * phase};
    CHECK(fidelity(a, b) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reconstruction") {
    SUBCASE("single-site state recovers essentially exactly") {
        const LatticeState truth =
            localized(0, Spinor{complexd(0.8, 0.0), complexd(-0.36, 0.48)});
        const CountSets counts = synthesize_counts_exact(truth);
        AnnealConfig cfg;
        cfg.seed = 5;
        const ReconstructionReport rep = reconstruct(counts, support_of(counts), cfg);
        CHECK(rep.converged);
        CHECK(fidelity(truth, rep.state) >= 1.0 - 1e-6);
    }
    SUBCASE("three-step exact counts reach fidelity 0.999") {
        const LatticeState truth = preset_state("fig1", 3);
        const CountSets counts = synthesize_counts_exact(truth);
        AnnealConfig cfg;
        cfg.seed = 7;
        const ReconstructionReport rep = reconstruct(counts, support_of(counts), cfg);
        CHECK(rep.converged);
        CHECK(fidelity(truth, rep.state) >= 0.999);
        CHECK(rep.settings_per_family == 4 * (truth.max_site() - truth.min_site() + 2));
    }
    SUBCASE("five steps at one hundred thousand shots reach 0.99") {
        const LatticeState truth = preset_state("fig1", 5);
        const CountSets counts = synthesize_counts(truth, 100000, 11);
        AnnealConfig cfg;
        cfg.seed = 11;
        const ReconstructionReport rep = reconstruct(counts, support_of(counts), cfg);
        CHECK(rep.converged);
        CHECK(fidelity(truth, rep.state) >= 0.99);
    }
    SUBCASE("same seed reproduces the identical state") {
        const LatticeState truth = preset_state("fig1", 3);
        const CountSets counts = synthesize_counts_exact(truth);
        AnnealConfig cfg;
        cfg.seed = 21;
        const ReconstructionReport a = reconstruct(counts, support_of(counts), cfg);
        const ReconstructionReport b = reconstruct(counts, support_of(counts), cfg);
        CHECK(a.objective == b.objective);
        REQUIRE(a.state.amps.size() == b.state.amps.size());
        for (size_t i = 0; i < a.state.amps.size(); ++i) {
            CHECK(a.state.amps[i].up == b.state.amps[i].up);
            CHECK(a.state.amps[i].down == b.state.amps[i].down);
        }
    }
    SUBCASE("an impossible margin flags nonconvergence") {
        const LatticeState truth = preset_state("fig1", 3);
        const CountSets counts = synthesize_counts(truth, 200, 3);
        AnnealConfig cfg;
        cfg.seed = 3;
        cfg.sweeps = 2;
        cfg.tolerance_margin = -1.0;  // floor cannot be beaten
        const ReconstructionReport rep = reconstruct(counts, support_of(counts), cfg);
        CHECK(!rep.converged);
        CHECK_THROWS_AS(ensure_converged(rep), NonConvergenceError);
    }
    SUBCASE("free parameter count matches the amplitude-and-phase budget") {
        const LatticeState truth = preset_state("fig1", 2);
        const CountSets counts = synthesize_counts_exact(truth);
        const SiteRange sup = support_of(counts);
        AnnealConfig cfg;
        cfg.sweeps = 1;
        const ReconstructionReport rep = reconstruct(counts, sup, cfg);
        CHECK(rep.free_parameters == 2 * (2 * sup.count) - 2);
    }
}

TEST_CASE("back shift") {
    const LatticeState s = prep_b_ket();
    const LatticeState shifted = back_shift_up(s);
    // up amplitude formerly at site 0 now sits at site -1
    CHECK(std::abs(shifted.at(-1).up - s.at(0).up) < 1e-15);
    CHECK(std::abs(shifted.at(-1).down - s.at(-1).down) < 1e-15);
    CHECK(shifted.norm2() == doctest::Approx(s.norm2()));
}
