"""Cavity-assisted temperature control of a two-level atom.

A small simulation library for the resonant interaction of one two-level
atom with a coherent cavity field: exact truncated-space dynamics, the
collapse-era closed forms, a phase-locked half-pulse protocol that converts
the revived coherence into a tunable effective temperature, and the
floor/ceiling temperature bounds of that protocol. A CLI (``cavitytherm``)
wraps single runs, sweeps, figure data, and a self-validation battery.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .analytic import (
    CollapseTime,
    TemperatureReading,
    Timescales,
    ValidityWarning,
    collapse_condition_time,
    collapse_envelope,
    coupling_from_dipole,
    lambert_w0,
    pe_after_pulse_analytic,
    pe_half_revival,
    rabi_difference_approx,
    rho01_analytic,
    rho11_analytic,
    sqrt_n_expansion,
    t_max,
    t_min,
    temperature_from_pe,
)
from .dynamics import (
    IntegrationError,
    StepControl,
    apply_hamiltonian,
    coherence_from_propagator,
    dressed_pair,
    energy_expectation,
    evolve_atom_field_mixture,
    hamiltonian_matrix,
    propagate,
    propagate_ode,
    rabi_splitting,
    rho01_exact_sum,
    rho01_exact_summand,
)
from .hilbert import (
    LEVEL_E,
    LEVEL_G,
    AtomDensity,
    CoherentPrep,
    FockCutoff,
    JointPureState,
    PhysicalParams,
    TruncationError,
    atom_density_from_bloch,
    bloch_vector,
    coherent_amplitudes,
    coherent_joint_state,
    coherent_tail_mass,
    default_cutoff,
    mix_densities,
    partial_trace_field,
    poisson_weight,
    product_state,
    required_cutoff,
    thermal_atom,
    trace_distance,
)
from .protocol import (
    ProtocolConfig,
    ProtocolResult,
    SweepPoint,
    ValidityFlags,
    cooling_axis_azimuth,
    initial_state_independence,
    pi_half_pulse,
    run_protocol,
    sweep_interaction_time,
)
from .validation import CheckResult, ValidationReport, run_all_checks

__all__ = [
    "__version__",
    "AtomDensity", "CheckResult", "CoherentPrep", "CollapseTime",
    "FockCutoff", "IntegrationError", "JointPureState", "LEVEL_E", "LEVEL_G",
    "PhysicalParams", "ProtocolConfig", "ProtocolResult", "StepControl",
    "SweepPoint", "TemperatureReading", "Timescales", "TruncationError",
    "ValidationReport", "ValidityFlags", "ValidityWarning",
    "apply_hamiltonian", "atom_density_from_bloch", "bloch_vector",
    "coherence_from_propagator", "coherent_amplitudes",
    "coherent_joint_state", "coherent_tail_mass", "collapse_condition_time",
    "collapse_envelope", "cooling_axis_azimuth", "coupling_from_dipole",
    "default_cutoff", "dressed_pair", "energy_expectation",
    "evolve_atom_field_mixture", "hamiltonian_matrix",
    "initial_state_independence", "lambert_w0", "mix_densities",
    "partial_trace_field", "pe_after_pulse_analytic", "pe_half_revival",
    "pi_half_pulse", "poisson_weight", "product_state", "propagate",
    "propagate_ode", "rabi_difference_approx", "rabi_splitting",
    "required_cutoff", "rho01_analytic", "rho01_exact_sum",
    "rho01_exact_summand", "rho11_analytic", "run_all_checks",
    "run_protocol", "sqrt_n_expansion", "sweep_interaction_time", "t_max",
    "t_min", "temperature_from_pe", "thermal_atom", "trace_distance",
]
