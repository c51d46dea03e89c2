"""Phonon quantum memory simulator.

Stores a Josephson phase-qubit state in a piezoelectric resonator and
retrieves it, by direct integration of the bias-driven Schrodinger equation
in the instantaneous interaction representation.
"""

from .basis import ProductBasis
from .device import (BiasPoint, DeviceParams, ResonanceUnreachableError,
                     dipole_element, level_spacing, oscillator_length,
                     plasma_frequency, rabi_frequency, resonant_bias)
from .propagator import (AmplitudeState, IntegratorOptions, PropagationError,
                         Trajectory, propagate, propagate_lab_frame,
                         propagate_reversed)
from .protocol import (DetuningOptimum, MemoryResult, MemorySchedule,
                       QubitState, build_memory_schedule, fidelity_squared,
                       initial_amplitudes, optimize_detuning, run_memory,
                       stored_occupation)
from .rwa import RwaAmplitudes, protocol_amplitudes, rwa_retrieval, rwa_storage
from .schedule import BiasSchedule, Segment, hold, ramp
from .sweeps import SweepRow, SweepSpec, sweep_bloch, sweep_coupling

__version__ = "0.1.0"

__all__ = [
    "AmplitudeState",
    "BiasPoint",
    "BiasSchedule",
    "DetuningOptimum",
    "DeviceParams",
    "IntegratorOptions",
    "MemoryResult",
    "MemorySchedule",
    "ProductBasis",
    "PropagationError",
    "QubitState",
    "ResonanceUnreachableError",
    "RwaAmplitudes",
    "Segment",
    "SweepRow",
    "SweepSpec",
    "Trajectory",
    "__version__",
    "build_memory_schedule",
    "dipole_element",
    "fidelity_squared",
    "hold",
    "initial_amplitudes",
    "level_spacing",
    "optimize_detuning",
    "oscillator_length",
    "plasma_frequency",
    "propagate",
    "propagate_lab_frame",
    "propagate_reversed",
    "protocol_amplitudes",
    "rabi_frequency",
    "ramp",
    "resonant_bias",
    "run_memory",
    "rwa_retrieval",
    "rwa_storage",
    "stored_occupation",
    "sweep_bloch",
    "sweep_coupling",
]
