"""The end-to-end temperature-control procedure.

Pipeline: prepare a (by default thermal) atom and a coherent cavity field,
let them interact for a chosen time, trace out the field, apply an
instantaneous lossless half pulse phase-locked to the drive, and read the
resulting diagonal state out as a temperature. Sweeping the interaction
time tunes the readout temperature between a floor near the half-revival
time and a ceiling at the collapse-condition time.

Orientation convention (fixed project-wide): Bloch components are
``(x, y, z) = (2 Re rho01, 2 Im rho01, 2 rho11 - 1)`` with
``rho01 = <g|rho|e>``, rotations are right-handed about their axis, and a
quarter turn about the equatorial axis at azimuth ``a`` sends an equatorial
Bloch vector at azimuth ``psi`` to ``z = |r| sin(psi - a)``. The
post-collapse coherence sits at azimuth ``omega t - phi + pi/2``, so the
cooling pulse axis is ``omega t - phi + pi``, which lands the state on the
south pole (minimum excited population).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .analytic import TemperatureReading, Timescales, temperature_from_pe
from .dynamics import evolve_atom_field_mixture
from .hilbert import (
    AtomDensity,
    CoherentPrep,
    PhysicalParams,
    thermal_atom,
    trace_distance,
)

PULSE_MODES = ("explicit_unitary", "diagonalize")

# Pauli triple in (g, e) row/column ordering, chosen so expectation values
# reproduce the Bloch convention above and the algebra is right-handed
# (sigma_x sigma_y = i sigma_z).
_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
_SIGMA_Y = np.array([[0.0, 1.0j], [-1.0j, 0.0]], dtype=np.complex128)

_EIGENVALUE_SLACK = 1e-12


def pi_half_pulse(rho: AtomDensity, axis_angle: float) -> AtomDensity:
    """Quarter-turn rotation of the atom about an equatorial Bloch axis.

    Conjugates ``rho`` by ``U = exp(-i (pi/4) n.sigma)`` with
    ``n = (cos(axis_angle), sin(axis_angle), 0)``: a right-handed rotation
    of the Bloch sphere by ``pi/2``. Unitary, so the eigenvalues (and Bloch
    length) are preserved to rounding; an equatorial Bloch vector
    perpendicular to the axis is carried onto a pole, making the result
    diagonal.
    """
    axis = math.cos(axis_angle) * _SIGMA_X + math.sin(axis_angle) * _SIGMA_Y
    u = math.cos(math.pi / 4.0) * np.eye(2) - 1j * math.sin(math.pi / 4.0) * axis
    rotated = u @ rho.as_matrix() @ u.conj().T
    return AtomDensity(rho11=float(rotated[1, 1].real), rho01=complex(rotated[0, 1]))


def cooling_axis_azimuth(t: float, phi: float = 0.0,
                         params: PhysicalParams | None = None) -> float:
    """Pulse axis azimuth that rotates the post-collapse coherence to -z.

    The experimenter knows the lab-frame phase of the slow coherence
    (azimuth ``omega t - phi + pi/2``) without measuring the state; the
    right-handed quarter turn about the equatorial axis a quarter turn
    ahead, ``omega t - phi + pi``, sends it to the south pole.
    """
    params = params or PhysicalParams()
    return params.omega * t - phi + math.pi


@dataclass(frozen=True)
class ValidityFlags:
    """Where the interaction time sits relative to the protocol's window."""

    collapse_completed: bool
    within_half_revival: bool
    pulse_residual_ok: bool = True

    @property
    def in_window(self) -> bool:
        return self.collapse_completed and self.within_half_revival


@dataclass(frozen=True)
class ProtocolConfig:
    """Complete description of one protocol run.

    Exactly one of ``initial_pe`` (diagonal atom with that excited
    population) and ``initial_beta`` (thermal atom at that inverse
    temperature) must be given. ``pulse_mode`` selects between physically
    applying the phase-locked pulse (``explicit_unitary``) and the axis-free
    reference that diagonalizes the pre-pulse state (``diagonalize``);
    ``pulse_residual_tolerance`` bounds the leftover off-diagonal magnitude
    the explicit pulse may leave before the result is flagged.
    """

    prep: CoherentPrep
    interaction_time: float
    physical: PhysicalParams = field(default_factory=PhysicalParams)
    initial_pe: float | None = None
    initial_beta: float | None = None
    pulse_mode: str = "explicit_unitary"
    pulse_residual_tolerance: float = 0.05

    def __post_init__(self) -> None:
        if (self.initial_pe is None) == (self.initial_beta is None):
            raise ValueError(
                "exactly one of initial_pe and initial_beta must be set"
            )
        if self.initial_pe is not None and not 0.0 <= self.initial_pe <= 1.0:
            raise ValueError(f"initial_pe must lie in [0, 1], got {self.initial_pe}")
        if self.interaction_time < 0:
            raise ValueError(
                f"interaction_time must be non-negative, got {self.interaction_time}"
            )
        if self.pulse_mode not in PULSE_MODES:
            raise ValueError(
                f"pulse_mode must be one of {PULSE_MODES}, got {self.pulse_mode!r}"
            )
        if self.pulse_residual_tolerance <= 0:
            raise ValueError("pulse_residual_tolerance must be positive")

    def initial_atom(self) -> AtomDensity:
        if self.initial_pe is not None:
            return AtomDensity(rho11=self.initial_pe)
        return thermal_atom(self.initial_beta, self.physical.delta_e)

    def timescales(self) -> Timescales:
        return Timescales(self.prep.n_bar, self.physical.g)


@dataclass(frozen=True)
class ProtocolResult:
    """Outcome of one protocol run.

    ``rho_post_pulse`` is the physical post-pulse state of the selected
    mode; ``reading.pe`` is its smallest eigenvalue (which the unitary pulse
    cannot change), so ``reading.pe <= 1/2`` always and equals the excited
    population whenever the pulse diagonalized the state.
    ``pulse_residual`` is the off-diagonal magnitude the pulse left behind
    (exactly 0 in diagonalize mode).
    """

    rho_pre_pulse: AtomDensity
    rho_post_pulse: AtomDensity
    reading: TemperatureReading
    validity: ValidityFlags
    pulse_residual: float


def run_protocol(config: ProtocolConfig) -> ProtocolResult:
    """Execute the pipeline: interact, trace, pulse, read out.

    The readout converts the smallest eigenvalue of the post-pulse state to
    a temperature; validity flags report whether the interaction time falls
    inside ``[3 tau_collapse, tau_revival / 2]`` and (in explicit mode)
    whether the phase-locked pulse left the state diagonal to within the
    configured tolerance.
    """
    t = config.interaction_time
    prep = config.prep
    rho_pre = evolve_atom_field_mixture(
        config.initial_atom(), prep.alpha, t, config.physical, prep.n_max
    )

    if config.pulse_mode == "explicit_unitary":
        axis = cooling_axis_azimuth(t, prep.phi, config.physical)
        rho_post = pi_half_pulse(rho_pre, axis)
    else:
        rho_post = AtomDensity(rho11=rho_pre.eigenvalues()[0], rho01=0j)
    residual = abs(rho_post.rho01)

    pe = rho_post.eigenvalues()[0]
    if pe < 0.0:
        if pe < -_EIGENVALUE_SLACK:
            raise ValueError(f"post-pulse state has negative eigenvalue {pe}")
        pe = 0.0
    reading = temperature_from_pe(pe, config.physical.delta_e)

    scales = config.timescales()
    validity = ValidityFlags(
        collapse_completed=t >= scales.collapse_complete,
        within_half_revival=t <= scales.half_revival,
        pulse_residual_ok=residual <= config.pulse_residual_tolerance,
    )
    return ProtocolResult(
        rho_pre_pulse=rho_pre,
        rho_post_pulse=rho_post,
        reading=reading,
        validity=validity,
        pulse_residual=residual,
    )


@dataclass(frozen=True)
class SweepPoint:
    """One grid point of an interaction-time sweep.

    ``error`` carries the failure message when the point could not be
    evaluated; the sweep continues past failed points.
    """

    t: float
    result: ProtocolResult | None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def sweep_interaction_time(config: ProtocolConfig,
                           t_grid: Sequence[float]) -> list[SweepPoint]:
    """Run the protocol over an ascending grid of interaction times."""
    t_grid = [float(t) for t in t_grid]
    if not t_grid:
        raise ValueError("t_grid must be nonempty")
    if any(b < a for a, b in zip(t_grid, t_grid[1:])):
        raise ValueError("t_grid must be ascending")
    points: list[SweepPoint] = []
    for t in t_grid:
        try:
            result = run_protocol(replace(config, interaction_time=t))
            points.append(SweepPoint(t=t, result=result))
        except Exception as exc:  # noqa: BLE001 - per-point errors are data
            points.append(SweepPoint(t=t, result=None, error=str(exc)))
    return points


def initial_state_independence(config: ProtocolConfig, t: float,
                               probe_pes: Sequence[float]) -> float:
    """Max pairwise trace distance of pre-pulse states over probe atoms.

    Runs the interaction (no pulse) from each diagonal initial atom in
    ``probe_pes`` and returns the largest trace distance between any two of
    the reduced states: near zero in the collapse window, where the atom has
    forgotten its initial state, and large at ``t = 0`` or near revivals.
    """
    if len(probe_pes) < 2:
        raise ValueError("need at least two probe populations")
    reduced = [
        evolve_atom_field_mixture(
            AtomDensity(rho11=float(pe)), config.prep.alpha, t,
            config.physical, config.prep.n_max,
        )
        for pe in probe_pes
    ]
    return max(
        trace_distance(a, b)
        for i, a in enumerate(reduced)
        for b in reduced[i + 1:]
    )
