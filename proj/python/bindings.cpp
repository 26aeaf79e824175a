#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qwalk/experiment.hpp"
#include "qwalk/topology.hpp"
#include "qwalk/version.hpp"

namespace py = pybind11;
using namespace qwalk;

namespace {

WalkParams make_params(double theta1, double theta2, const std::string& frame) {
    return {Angle(theta1), Angle(theta2), time_frame_from_string(frame)};
}

InitialSpec init_from_dict(const py::dict& d) {
    const std::string variant = d["variant"].cast<std::string>();
    if (variant == "flat-trivial")
        return FlatTrivial{Angle(d["theta1"].cast<double>())};
    if (variant == "flat-nontrivial")
        return FlatNontrivial{Angle(d["theta2"].cast<double>())};
    if (variant == "lower-band") {
        const auto p = d["params"].cast<py::tuple>();
        return ExactLowerBand{make_params(p[0].cast<double>(), p[1].cast<double>(),
                                          p[2].cast<std::string>())};
    }
    if (variant == "adiabatic") {
        AdiabaticPrep prep;
        for (const auto& item : d["path"].cast<py::list>()) {
            const auto p = item.cast<py::tuple>();
            prep.path.push_back(make_params(p[0].cast<double>(), p[1].cast<double>(),
                                            p[2].cast<std::string>()));
        }
        if (d.contains("steps_per_leg"))
            prep.steps_per_leg = d["steps_per_leg"].cast<int>();
        return prep;
    }
    throw std::invalid_argument("unknown initial variant: " + variant);
}

py::list matrix_to_list(const Unitary2& u) {
    py::list rows;
    rows.append(py::make_tuple(u.a, u.b));
    rows.append(py::make_tuple(u.c, u.d));
    return rows;
}

}  // namespace

PYBIND11_MODULE(_qwalk, m) {
    m.doc() = "split-step discrete-time quantum walk simulator";
    m.attr("__version__") = kVersion;

    m.def("canonical_angle", &canonical_angle, py::arg("radians"));

    m.def(
        "make_rotation",
        [](double theta) { return matrix_to_list(make_rotation(Angle(theta))); },
        py::arg("theta"));
    m.def(
        "make_shift_up", [](double k) { return matrix_to_list(make_shift_up(k)); },
        py::arg("k"));
    m.def(
        "make_shift_down", [](double k) { return matrix_to_list(make_shift_down(k)); },
        py::arg("k"));

    m.def(
        "walk_unitary",
        [](double theta1, double theta2, const std::string& frame, double k) {
            return matrix_to_list(walk_unitary(make_params(theta1, theta2, frame), k));
        },
        py::arg("theta1"), py::arg("theta2"), py::arg("frame"), py::arg("k"));

    m.def(
        "floquet_mode",
        [](double theta1, double theta2, const std::string& frame, double k) {
            const FloquetMode f = floquet_mode(make_params(theta1, theta2, frame), k);
            return py::make_tuple(f.epsilon,
                                  py::make_tuple(f.axis.x, f.axis.y, f.axis.z),
                                  f.degenerate);
        },
        py::arg("theta1"), py::arg("theta2"), py::arg("frame"), py::arg("k"));

    m.def(
        "band_structure",
        [](double theta1, double theta2, const std::string& frame, int kgrid) {
            const BandStructure b =
                band_structure(make_params(theta1, theta2, frame), MomentumGrid(kgrid));
            py::list rows;
            for (int j = 0; j < b.grid.count(); ++j)
                rows.append(py::make_tuple(b.grid.k(j), b.modes[j].epsilon,
                                           b.modes[j].axis.x, b.modes[j].axis.y,
                                           b.modes[j].axis.z));
            return rows;
        },
        py::arg("theta1"), py::arg("theta2"), py::arg("frame") = "standard",
        py::arg("kgrid") = 256);

    m.def(
        "is_flat_band",
        [](double theta1, double theta2) {
            return is_flat_band({Angle(theta1), Angle(theta2)});
        },
        py::arg("theta1"), py::arg("theta2"));

    m.def(
        "invariant_doublet",
        [](double theta1, double theta2) {
            const InvariantDoublet d = invariant_doublet({Angle(theta1), Angle(theta2)});
            return py::make_tuple(d.nu0_x2, d.nuPi_x2);
        },
        py::arg("theta1"), py::arg("theta2"),
        "doubled invariants (2 nu0, 2 nuPi) of the gapped walk");

    m.def(
        "z2_class",
        [](int nu0_x2, int nuPi_x2) {
            return z2_class({nu0_x2, nuPi_x2}) == Z2Class::Trivial
                       ? std::string("trivial")
                       : std::string("nontrivial");
        },
        py::arg("nu0_x2"), py::arg("nuPi_x2"));

    m.def("preset_names", &preset_names);

    m.def(
        "critical_structure",
        [](const py::dict& init, double theta1, double theta2, const std::string& frame,
           double horizon) {
            const CriticalStructure c = critical_structure(
                init_from_dict(init), make_params(theta1, theta2, frame), horizon);
            return py::make_tuple(c.momenta, c.quasienergies, c.times);
        },
        py::arg("init"), py::arg("theta1"), py::arg("theta2"),
        py::arg("frame") = "standard", py::arg("horizon") = 10.0);

    m.def(
        "quench_trace",
        [](const std::string& preset_name, int steps, double dt, int kgrid) {
            ExperimentConfig c = preset(preset_name);
            c.steps = steps;
            c.dt = dt;
            c.kgrid = kgrid;
            const QuenchTrace t = compute_quench_trace(c);
            py::dict out;
            out["sample_times"] = t.sample_times;
            out["lambda"] = t.lambda;
            out["times"] = t.times;
            out["dtop"] = t.dtop;
            out["strobo_steps"] = t.strobo_steps;
            out["strobo_dtop"] = t.strobo_dtop;
            out["critical_momenta"] = t.critical.momenta;
            out["critical_times"] = t.critical.all_times();
            return out;
        },
        py::arg("preset"), py::arg("steps") = 10, py::arg("dt") = 0.05,
        py::arg("kgrid") = 1024);

    m.def(
        "reconstruct_demo",
        [](const std::string& preset_name, int steps, long long shots, uint64_t seed) {
            const ExperimentConfig config = preset(preset_name);
            LatticeState state = lattice_initial_state(config.init);
            for (int s = 0; s < steps; ++s) state = step(state, config.final_params);
            const CountSets counts = shots > 0
                                         ? synthesize_counts(state, shots, seed)
                                         : synthesize_counts_exact(state);
            AnnealConfig cfg;
            cfg.seed = seed;
            const ReconstructionReport rep = reconstruct(counts, support_of(counts), cfg);
            return py::make_tuple(fidelity(state, rep.state), rep.objective, rep.floor);
        },
        py::arg("preset") = "fig1", py::arg("steps") = 3, py::arg("shots") = 0,
        py::arg("seed") = 7,
        "synthesize counts from a preset trajectory state and reconstruct it; "
        "returns (fidelity, objective, floor)");
}
