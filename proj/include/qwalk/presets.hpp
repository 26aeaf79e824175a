#pragma once

// Named experiment configurations covering the four quench scenarios, plus
// the shared run configuration type used by the CLI and the test suites.

#include <string>
#include <vector>

#include "qwalk/quench.hpp"

namespace qwalk {

struct ExperimentConfig {
    std::string name = "custom";
    InitialSpec init = FlatTrivial{Angle(8.0 * kPi / 9.0)};
    WalkParams final_params{};
    bool frame_quench = false;  // final frame differs from the preparation frame
    int steps = 10;             // time horizon in walk periods
    double dt = 0.05;           // continuous sampling interval
    int kgrid = 1024;
    uint64_t seed = 1;

    void validate() const;
};

/// fig1            trivial flat band (8pi/9, pi) quenched to (8pi/9, -pi/3)
/// fig2-star       same initial state, target (5pi/9, 8pi/9)   (same class)
/// fig2-square     target (6pi/9, 7pi/9)                        (same class)
/// fig2-diamond    target (7pi/9, 6pi/9)                        (crossed)
/// fig2-circle     target (8pi/9, 5pi/9)                        (crossed)
/// fig3            adiabatic start at (8.6pi/9, pi/3), target (-7pi/9, pi/2),
///                 run in the symmetric-A frame where both systems are chiral
/// fig4            adiabatic start at (-pi/3, 8.8pi/9), time-frame quench
///                 standard -> shift1 at fixed parameters
ExperimentConfig preset(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace qwalk
