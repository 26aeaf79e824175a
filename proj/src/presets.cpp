#include "qwalk/presets.hpp"

#include <stdexcept>

namespace qwalk {

void ExperimentConfig::validate() const {
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    if (kgrid < 128) throw std::invalid_argument("momentum grid must be >= 128");
    if (!(dt > 0.0 && dt <= 0.5)) throw std::invalid_argument("dt must lie in (0, 0.5]");
}

namespace {

ExperimentConfig flat_quench(const std::string& name, double final_t1, double final_t2) {
    ExperimentConfig c;
    c.name = name;
    c.init = FlatTrivial{Angle(8.0 * kPi / 9.0)};
    c.final_params = {Angle(final_t1), Angle(final_t2), TimeFrame::Standard};
    return c;
}

}  // namespace

ExperimentConfig preset(const std::string& name) {
    if (name == "fig1") return flat_quench(name, 8.0 * kPi / 9.0, -kPi / 3.0);
    if (name == "fig2-star") return flat_quench(name, 5.0 * kPi / 9.0, 8.0 * kPi / 9.0);
    if (name == "fig2-square") return flat_quench(name, 6.0 * kPi / 9.0, 7.0 * kPi / 9.0);
    if (name == "fig2-diamond") return flat_quench(name, 7.0 * kPi / 9.0, 6.0 * kPi / 9.0);
    if (name == "fig2-circle") return flat_quench(name, 8.0 * kPi / 9.0, 5.0 * kPi / 9.0);
    if (name == "fig3") {
        // An accidental transition between two nontrivial classes: both
        // windings flip. The quench is run in the symmetric-A frame, where
        // initial and final systems share the chiral axis; the standard-frame
        // protocol at these angles supports no Loschmidt zero at all.
        ExperimentConfig c;
        c.name = name;
        c.init = AdiabaticPrep{
            {{Angle(kPi), Angle(kPi / 3.0), TimeFrame::SymmetricA},
             {Angle(8.6 * kPi / 9.0), Angle(kPi / 3.0), TimeFrame::SymmetricA}},
            200};
        c.final_params = {Angle(-7.0 * kPi / 9.0), Angle(kPi / 2.0),
                          TimeFrame::SymmetricA};
        return c;
    }
    if (name == "fig4") {
        ExperimentConfig c;
        c.name = name;
        c.init = AdiabaticPrep{
            {{Angle(-kPi / 3.0), Angle(kPi), TimeFrame::Standard},
             {Angle(-kPi / 3.0), Angle(8.8 * kPi / 9.0), TimeFrame::Standard}},
            200};
        c.final_params = {Angle(-kPi / 3.0), Angle(8.8 * kPi / 9.0), TimeFrame::Shift1};
        c.frame_quench = true;
        return c;
    }
    throw std::invalid_argument("unknown preset: " + name);
}

std::vector<std::string> preset_names() {
    return {"fig1",        "fig2-star",   "fig2-square", "fig2-diamond",
            "fig2-circle", "fig3",        "fig4"};
}

}  // namespace qwalk
