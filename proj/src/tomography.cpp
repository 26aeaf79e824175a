#include "qwalk/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qwalk {

namespace {

constexpr double kProbFloor = 1e-12;

// Portable deterministic generator (xoshiro256++ seeded via splitmix64).
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& word : s_) {
            x += 0x9e3779b97f4a7c15ULL;
            uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    double uniform() { return (next() >> 11) * 0x1.0p-53; }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * kPi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * kPi * u2);
    }

private:
    static uint64_t rotl(uint64_t v, int b) { return (v << b) | (v >> (64 - b)); }
    uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

double setting_probability(const LatticeState& state, bool shifted_family, int site,
                           CoinProjector proj) {
    Spinor amp;
    if (shifted_family) {
        amp = {state.at(site + 1).up, state.at(site).down};
    } else {
        amp = state.at(site);
    }
    return projector_probability(amp, proj);
}

double binomial_term(double hits, double total, double p) {
    p = std::clamp(p, kProbFloor, 1.0 - kProbFloor);
    double term = 0.0;
    if (hits > 0.0) term -= hits * std::log(p);
    if (total - hits > 0.0) term -= (total - hits) * std::log(1.0 - p);
    return term;
}

struct Parameterization {
    std::vector<double> amps;    // 2 * sites, alternating (up, down) per site
    std::vector<double> phases;  // same layout

    LatticeState to_state(int min_site) const {
        const int sites = static_cast<int>(amps.size()) / 2;
        LatticeState s{min_site, std::vector<Spinor>(sites)};
        for (int i = 0; i < sites; ++i) {
            s.amps[i].up = std::polar(amps[2 * i], phases[2 * i]);
            s.amps[i].down = std::polar(amps[2 * i + 1], phases[2 * i + 1]);
        }
        const double n = std::sqrt(s.norm2());
        if (n > 0.0)
            for (Spinor& a : s.amps) a = {a.up / n, a.down / n};
        return s;
    }
};

LatticeState gauge_fix_global_phase(LatticeState s) {
    double best = 0.0;
    complexd lead = 1.0;
    for (const Spinor& a : s.amps) {
        if (std::abs(a.up) > best) {
            best = std::abs(a.up);
            lead = a.up;
        }
        if (std::abs(a.down) > best) {
            best = std::abs(a.down);
            lead = a.down;
        }
    }
    if (best == 0.0) return s;
    const complexd phase = std::conj(lead) / std::abs(lead);
    for (Spinor& a : s.amps) a = {phase * a.up, phase * a.down};
    return s;
}

}  // namespace

double& CountSets::tally(bool shifted_family, int site_index, CoinProjector proj) {
    auto& v = shifted_family ? shifted : direct;
    return v[site_index * kProjectorCount + static_cast<int>(proj)];
}

double CountSets::tally(bool shifted_family, int site_index, CoinProjector proj) const {
    const auto& v = shifted_family ? shifted : direct;
    return v[site_index * kProjectorCount + static_cast<int>(proj)];
}

LatticeState back_shift_up(const LatticeState& s) {
    LatticeState out{s.offset - 1, std::vector<Spinor>(s.amps.size() + 1)};
    for (size_t i = 0; i < s.amps.size(); ++i) {
        out.amps[i].up = s.amps[i].up;
        out.amps[i + 1].down = s.amps[i].down;
    }
    return out;
}

double projector_probability(const Spinor& a, CoinProjector proj) {
    constexpr complexd kI{0.0, 1.0};
    switch (proj) {
        case CoinProjector::Up: return std::norm(a.up);
        case CoinProjector::Down: return std::norm(a.down);
        case CoinProjector::Diagonal: return 0.5 * std::norm(a.up + a.down);
        case CoinProjector::Circular: return 0.5 * std::norm(a.up - kI * a.down);
    }
    throw std::logic_error("unreachable");
}

namespace {

CountSets layout_for(const LatticeState& truth) {
    CountSets c;
    // The shifted family moves up components one site left, so widen by one.
    c.support_min = truth.min_site() - 1;
    c.sites = truth.max_site() - c.support_min + 1;
    c.direct.assign(static_cast<size_t>(c.sites) * kProjectorCount, 0.0);
    c.shifted.assign(static_cast<size_t>(c.sites) * kProjectorCount, 0.0);
    return c;
}

}  // namespace

CountSets synthesize_counts_exact(const LatticeState& truth) {
    CountSets c = layout_for(truth);
    c.exact = true;
    for (int i = 0; i < c.sites; ++i) {
        const int site = c.support_min + i;
        for (int pj = 0; pj < kProjectorCount; ++pj) {
            const auto proj = static_cast<CoinProjector>(pj);
            c.tally(false, i, proj) = setting_probability(truth, false, site, proj);
            c.tally(true, i, proj) = setting_probability(truth, true, site, proj);
        }
    }
    return c;
}

CountSets synthesize_counts(const LatticeState& truth, long long shots, uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    CountSets c = layout_for(truth);
    c.shots = shots;
    Rng rng(seed);
    for (int family = 0; family < 2; ++family) {
        for (int i = 0; i < c.sites; ++i) {
            const int site = c.support_min + i;
            for (int pj = 0; pj < kProjectorCount; ++pj) {
                const auto proj = static_cast<CoinProjector>(pj);
                const double p = setting_probability(truth, family == 1, site, proj);
                long long hits = 0;
                for (long long n = 0; n < shots; ++n)
                    if (rng.uniform() < p) ++hits;
                c.tally(family == 1, i, proj) = static_cast<double>(hits);
            }
        }
    }
    return c;
}

double negative_log_likelihood(const LatticeState& candidate, const CountSets& counts) {
    const double total = counts.exact ? 1.0 : static_cast<double>(counts.shots);
    double nll = 0.0;
    for (int family = 0; family < 2; ++family) {
        for (int i = 0; i < counts.sites; ++i) {
            const int site = counts.support_min + i;
            for (int pj = 0; pj < kProjectorCount; ++pj) {
                const auto proj = static_cast<CoinProjector>(pj);
                const double p = setting_probability(candidate, family == 1, site, proj);
                nll += binomial_term(counts.tally(family == 1, i, proj), total, p);
            }
        }
    }
    return nll;
}

double objective_floor(const CountSets& counts) {
    const double total = counts.exact ? 1.0 : static_cast<double>(counts.shots);
    double nll = 0.0;
    for (int family = 0; family < 2; ++family) {
        for (int i = 0; i < counts.sites; ++i) {
            for (int pj = 0; pj < kProjectorCount; ++pj) {
                const double hits = counts.tally(family == 1, i,
                                                 static_cast<CoinProjector>(pj));
                nll += binomial_term(hits, total, hits / total);
            }
        }
    }
    return nll;
}

double fidelity(const LatticeState& a, const LatticeState& b) {
    const double na = a.norm2();
    const double nb = b.norm2();
    if (na <= 0.0 || nb <= 0.0)
        throw std::invalid_argument("fidelity of a zero state is undefined");
    return std::norm(lattice_inner(a, b)) / (na * nb);
}

SiteRange support_of(const CountSets& counts) {
    // The direct family alone fixes the support: every occupied site shows
    // up in its own up/down tallies.
    const double floor = counts.exact ? 1e-12 : 0.5;
    int lo = counts.sites;
    int hi = -1;
    for (int i = 0; i < counts.sites; ++i) {
        const double mass = counts.tally(false, i, CoinProjector::Up) +
                            counts.tally(false, i, CoinProjector::Down);
        if (mass > floor) {
            lo = std::min(lo, i);
            hi = std::max(hi, i);
        }
    }
    if (hi < lo) throw std::invalid_argument("count sets carry no mass");
    return {counts.support_min + lo, hi - lo + 1};
}

namespace {

// Initial candidate: moduli from the up/down tallies, phases chained through
// the within-site (diagonal/circular) and neighbor (shifted family) terms.
// Settings with vanishing mass leave their links at zero; the annealer owns
// those directions.
Parameterization warm_start(const CountSets& counts, SiteRange support) {
    const int sites = support.count;
    const double total = counts.exact ? 1.0 : static_cast<double>(counts.shots);
    Parameterization par;
    par.amps.assign(2 * sites, 1e-4);
    par.phases.assign(2 * sites, 0.0);

    const auto tally = [&](bool family, int site, CoinProjector proj) {
        const int ci = site - counts.support_min;
        if (ci < 0 || ci >= counts.sites) return 0.0;
        return counts.tally(family, ci, proj) / total;
    };
    const auto interference = [&](bool family, int site) {
        // Re and Im of conj(u) d for the measured spinor of this setting.
        const double occ = tally(family, site, CoinProjector::Up) +
                           tally(family, site, CoinProjector::Down);
        return complexd{tally(family, site, CoinProjector::Diagonal) - 0.5 * occ,
                        tally(family, site, CoinProjector::Circular) - 0.5 * occ};
    };

    for (int i = 0; i < sites; ++i) {
        const int site = support.min_site + i;
        par.amps[2 * i] += std::sqrt(std::max(0.0, tally(false, site, CoinProjector::Up)));
        par.amps[2 * i + 1] +=
            std::sqrt(std::max(0.0, tally(false, site, CoinProjector::Down)));
    }
    for (int i = 0; i < sites; ++i) {
        const int site = support.min_site + i;
        const complexd within = interference(false, site);  // phi_d - phi_u
        if (std::abs(within) > 1e-9)
            par.phases[2 * i + 1] = par.phases[2 * i] + std::arg(within);
        if (i + 1 < sites) {
            // Shifted family at this site pairs u(site+1) with d(site):
            // arg = phi_d(site) - phi_u(site+1).
            const complexd bridge = interference(true, site);
            if (std::abs(bridge) > 1e-9)
                par.phases[2 * (i + 1)] = par.phases[2 * i + 1] - std::arg(bridge);
            else
                par.phases[2 * (i + 1)] = par.phases[2 * i];
        }
    }
    return par;
}

}  // namespace

ReconstructionReport reconstruct(const CountSets& counts, SiteRange support,
                                 const AnnealConfig& cfg) {
    if (support.count < 1) throw std::invalid_argument("empty reconstruction support");
    if (cfg.cooling <= 0.0 || cfg.cooling >= 1.0)
        throw std::invalid_argument("cooling factor must lie in (0, 1)");
    if (cfg.sweeps < 1) throw std::invalid_argument("sweep count must be >= 1");

    const int sites = support.count;
    const int params = 2 * sites;
    const double floor = objective_floor(counts);

    const auto objective = [&](const Parameterization& par) {
        return negative_log_likelihood(par.to_state(support.min_site), counts);
    };

    const Parameterization start = warm_start(counts, support);

    Parameterization global_best;
    double global_best_obj = std::numeric_limits<double>::infinity();
    long long proposals = 0;
    long long accepted = 0;

    for (int chain = 0; chain < std::max(1, cfg.chains); ++chain) {
        Rng rng(cfg.seed + 0x9e3779b9ULL * static_cast<uint64_t>(chain));

        Parameterization cur = start;
        double cur_obj = objective(cur);
        Parameterization best = cur;
        double best_obj = cur_obj;

        double t0 = cfg.initial_temperature;
        if (t0 <= 0.0) {
            // Scale the schedule by the objective spread of 50 candidates one
            // proposal away from the start, so acceptance begins permissive at
            // every shot count.
            double mean = 0.0, m2 = 0.0;
            constexpr int kSamples = 50;
            for (int s = 0; s < kSamples; ++s) {
                Parameterization rp = cur;
                const int i = static_cast<int>(rng.next() % params);
                rp.amps[i] = std::abs(rp.amps[i] + rng.normal() * cfg.amplitude_scale);
                rp.phases[i] += rng.normal() * cfg.phase_scale;
                const double o = objective(rp);
                const double d = o - mean;
                mean += d / (s + 1);
                m2 += d * (o - mean);
            }
            t0 = std::max(1e-6, 2.0 * std::sqrt(m2 / kSamples));
        }

        const auto sweep_once = [&](double temp, double scale) {
            const auto metropolis = [&](Parameterization&& prop) {
                const double obj = objective(prop);
                ++proposals;
                const double delta = obj - cur_obj;
                if (delta <= 0.0 ||
                    (temp > 0.0 && rng.uniform() < std::exp(-delta / temp))) {
                    cur = std::move(prop);
                    cur_obj = obj;
                    ++accepted;
                    if (cur_obj < best_obj) {
                        best = cur;
                        best_obj = cur_obj;
                    }
                }
            };
            for (int i = 0; i < params; ++i) {
                Parameterization prop = cur;
                prop.amps[i] = std::abs(prop.amps[i] +
                                        rng.normal() * cfg.amplitude_scale * scale);
                prop.phases[i] += rng.normal() * cfg.phase_scale * scale;
                metropolis(std::move(prop));
            }
            // Collective moves: rotate the phases of every site from a cut
            // onward. Weak inter-site links make the relative phase of whole
            // blocks the slowest coordinate; these moves walk it directly.
            for (int site = 1; site < sites; ++site) {
                Parameterization prop = cur;
                const double delta_phi = rng.normal() * cfg.phase_scale * scale;
                for (int i = 2 * site; i < params; ++i) prop.phases[i] += delta_phi;
                metropolis(std::move(prop));
            }
        };

        double temp = t0;
        for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
            sweep_once(temp, std::max(0.02, std::sqrt(temp / t0)));
            temp *= cfg.cooling;
        }
        // Greedy polish: zero temperature, geometrically shrinking step.
        double scale = 0.02;
        for (int sweep = 0; sweep < 80; ++sweep) {
            cur = best;
            cur_obj = best_obj;
            sweep_once(0.0, scale);
            scale *= 0.85;
        }

        if (best_obj < global_best_obj) {
            global_best_obj = best_obj;
            global_best = best;
        }
    }

    ReconstructionReport report;
    report.state = gauge_fix_global_phase(global_best.to_state(support.min_site));
    report.objective = global_best_obj;
    report.floor = floor;
    report.proposals = proposals;
    report.accepted = accepted;
    report.free_parameters = 2 * params - 2;
    report.settings_per_family = counts.settings_per_family();
    report.converged =
        global_best_obj <= floor + cfg.tolerance_margin * (std::abs(floor) + 1.0);
    return report;
}

void ensure_converged(const ReconstructionReport& report) {
    if (!report.converged)
        throw NonConvergenceError("annealing missed the objective floor",
                                  report.objective, report.floor);
}

}  // namespace qwalk
