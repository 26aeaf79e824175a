"""Split-step discrete-time quantum walk simulator.

Python bindings for the C++ core: walk unitaries, Floquet band structure,
topological invariants, quench traces (geometric phase, DTOP, rate function)
and simulated-annealing state reconstruction.
"""

from ._qwalk import (
    __version__,
    band_structure,
    canonical_angle,
    critical_structure,
    floquet_mode,
    invariant_doublet,
    is_flat_band,
    make_rotation,
    make_shift_down,
    make_shift_up,
    preset_names,
    quench_trace,
    reconstruct_demo,
    walk_unitary,
    z2_class,
)

__all__ = [
    "__version__",
    "band_structure",
    "canonical_angle",
    "critical_structure",
    "floquet_mode",
    "invariant_doublet",
    "is_flat_band",
    "make_rotation",
    "make_shift_down",
    "make_shift_up",
    "preset_names",
    "quench_trace",
    "reconstruct_demo",
    "walk_unitary",
    "z2_class",
]
