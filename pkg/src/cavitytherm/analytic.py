"""Closed-form approximations for the collapse-phase protocol.

Everything here is algebra on top of the exact dynamics: Gaussian collapse
envelopes, the slow post-collapse coherence, the pulse-floor population, the
temperature map, and the reachable-temperature bounds built from them. Each
formula carries a validity window (post-collapse, pre-half-revival) exposed
through :class:`Timescales`; outside the window the functions still return
values (figures deliberately plot them through the collapse) and callers
attach flags instead of raising.

Temperatures are reported in units of ``delta_e`` (equivalently
``delta_e / k_B`` with Boltzmann's constant set to 1).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .hilbert import LEVEL_E, LEVEL_G, PhysicalParams


class ValidityWarning(UserWarning):
    """A closed-form expression was evaluated outside its validity window."""


@dataclass(frozen=True)
class Timescales:
    """Collapse and revival timescales of a coherent field with mean ``n_bar``.

    The Gaussian collapse envelope is ``exp(-t^2 / tau_collapse^2)`` with
    ``tau_collapse = sqrt(2) / g``; revivals recur with period
    ``tau_revival = 2 pi sqrt(n_bar) / g``. The protocol's working window is
    ``[3 tau_collapse, tau_revival / 2]``: the envelope is below ``e^-9``
    after three collapse times, and the first revival's influence grows past
    the half-revival point.
    """

    n_bar: float
    g: float = 1.0

    def __post_init__(self) -> None:
        if self.n_bar <= 0:
            raise ValueError(f"n_bar must be positive, got {self.n_bar}")
        if self.g <= 0:
            raise ValueError(f"g must be positive, got {self.g}")

    @classmethod
    def from_params(cls, n_bar: float, params: PhysicalParams) -> "Timescales":
        return cls(n_bar=n_bar, g=params.g)

    @property
    def tau_collapse(self) -> float:
        return math.sqrt(2.0) / self.g

    @property
    def tau_revival(self) -> float:
        return 2.0 * math.pi * math.sqrt(self.n_bar) / self.g

    @property
    def collapse_complete(self) -> float:
        """Lower edge of the validity window, ``3 tau_collapse``."""
        return 3.0 * self.tau_collapse

    @property
    def half_revival(self) -> float:
        """Upper edge of the validity window, ``tau_revival / 2``."""
        return 0.5 * self.tau_revival

    def in_validity_window(self, t: float) -> bool:
        return self.collapse_complete <= t <= self.half_revival


def collapse_envelope(t, n_bar: float, g: float = 1.0):
    """Gaussian collapse factor ``exp(-t^2 / tau_collapse^2)``."""
    scales = Timescales(n_bar, g)
    t = np.asarray(t, dtype=float)
    out = np.exp(-((t / scales.tau_collapse) ** 2))
    return float(out) if out.ndim == 0 else out


def rho11_analytic(t, n_bar: float, params: PhysicalParams | None = None,
                   initial_level: int = LEVEL_E):
    """Collapse-era excited population for an initial product state.

    A half-half mixture plus a damped oscillation at the mean-weighted
    splitting of whichever exchange ladder the atom actually drives:
    ``1/2 + (1/2) cos(2 g sqrt(n_bar + 1) t) exp(-t^2/tau_c^2)`` for initial
    ``|e>`` (which exchanges with ``n -> n+1``, mean splitting
    ``2 g sqrt(n_bar + 1)``) and ``1/2 - (1/2) cos(2 g sqrt(n_bar) t)
    exp(-t^2/tau_c^2)`` for initial ``|g>`` (which exchanges with
    ``n -> n-1``, mean splitting ``2 g sqrt(n_bar)``). Crossing the carriers
    over dephases visibly from the exact numerics within three collapse
    times (deviation 0.06 instead of 0.01 at ``n_bar = 36``).

    Scalar or array ``t``; valid through the collapse, ``t`` up to a few
    ``tau_collapse``.
    """
    params = params or PhysicalParams()
    if initial_level not in (LEVEL_G, LEVEL_E):
        raise ValueError(f"initial_level must be 0 (g) or 1 (e), got {initial_level}")
    if n_bar < 0:
        raise ValueError(f"n_bar must be non-negative, got {n_bar}")
    t = np.asarray(t, dtype=float)
    if initial_level == LEVEL_E:
        sign, ladder_mean = 1.0, n_bar + 1.0
    else:
        sign, ladder_mean = -1.0, n_bar
    carrier = np.cos(2.0 * params.g * math.sqrt(ladder_mean) * t)
    out = 0.5 + sign * 0.5 * carrier * np.exp(-0.5 * (params.g * t) ** 2)
    return float(out) if out.ndim == 0 else out


def rho01_analytic(t, n_bar: float, params: PhysicalParams | None = None,
                   phi: float = 0.0):
    """Post-collapse reduced coherence ``<g|rho|e>`` (initial-state independent).

    The slow coherence that emerges once the fast oscillations have
    collapsed:

        rho01(t) = (i/2) exp(i (omega t - phi)) sin(g t / (2 sqrt(n_bar)))

    with ``phi`` the coherent field's phase. Its magnitude grows from 0 to
    the maximal 1/2 at the half-revival time, and its phase advances
    linearly at the carrier rate ``omega``. Valid on
    ``[3 tau_collapse, tau_revival / 2]``; scalar or array ``t``.
    """
    params = params or PhysicalParams()
    if n_bar <= 0:
        raise ValueError(f"n_bar must be positive, got {n_bar}")
    t = np.asarray(t, dtype=float)
    out = (0.5j * np.exp(1j * (params.omega * t - phi))
           * np.sin(params.g * t / (2.0 * math.sqrt(n_bar))))
    return complex(out) if out.ndim == 0 else out


def pe_after_pulse_analytic(t, n_bar: float,
                            params: PhysicalParams | None = None):
    """Closed-form excited population after an ideally phased half pulse.

    Equal to ``1/2 - |rho01_analytic(t)|`` identically (the smaller
    eigenvalue of a density matrix with diagonal 1/2), which inside the
    validity window reduces to ``(1/2)(1 - sin(g t / (2 sqrt(n_bar))))``.
    Emits :class:`ValidityWarning` outside ``[0, tau_revival / 2]``.
    """
    params = params or PhysicalParams()
    scales = Timescales(n_bar, params.g)
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0) or np.any(t_arr > scales.half_revival):
        warnings.warn(
            "pe_after_pulse_analytic evaluated outside [0, tau_revival/2]; "
            "the closed form is unreliable there",
            ValidityWarning,
            stacklevel=2,
        )
    out = 0.5 - np.abs(rho01_analytic(t_arr, n_bar, params))
    return float(out) if np.ndim(out) == 0 else out


def sqrt_n_expansion(n, n_bar: float):
    """First-order expansion of ``sqrt(n)`` about ``n = n_bar``.

    ``sqrt(n_bar) + (n - n_bar) / (2 sqrt(n_bar))``: the linearization that
    turns the photon-number spread into the Gaussian collapse envelope. Not
    guarded against evaluation far from the mean, where it is poor.
    """
    if n_bar <= 0:
        raise ValueError(f"n_bar must be positive, got {n_bar}")
    n = np.asarray(n, dtype=float)
    root = math.sqrt(n_bar)
    out = root + (n - n_bar) / (2.0 * root)
    return float(out) if out.ndim == 0 else out


def rabi_difference_approx(n, n_bar: float, g: float = 1.0,
                           order: str = "leading"):
    """Approximate adjacent-splitting gap ``2 g (sqrt(n+1) - sqrt(n))``.

    Expanded about the mean photon number: ``order='leading'`` gives the
    n-independent ``g / sqrt(n_bar)`` (the slow coherence frequency is half
    of it); ``order='next'`` adds the curvature and detuning corrections

        2 g (1/(2 sqrt(n_bar)) - 1/(8 n_bar^{3/2}) - (n - n_bar)/(4 n_bar^{3/2})).
    """
    if n_bar <= 0:
        raise ValueError(f"n_bar must be positive, got {n_bar}")
    n = np.asarray(n, dtype=float)
    root = math.sqrt(n_bar)
    if order == "leading":
        out = np.full_like(n, g / root)
    elif order == "next":
        out = 2.0 * g * (1.0 / (2.0 * root)
                         - 1.0 / (8.0 * n_bar * root)
                         - (n - n_bar) / (4.0 * n_bar * root))
    else:
        raise ValueError(f"order must be 'leading' or 'next', got {order!r}")
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class TemperatureReading:
    """A population readout converted to an effective temperature.

    ``temperature`` is in units of ``delta_e`` (equivalently
    ``delta_e / k_B``): 0 at ``pe = 0``, +inf at ``pe = 1/2``, and negative
    with ``inverted`` set for ``pe > 1/2``, where no non-negative
    temperature reproduces the populations.
    """

    pe: float
    temperature: float
    delta_e: float = 1.0

    @property
    def inverted(self) -> bool:
        return self.pe > 0.5

    @property
    def beta(self) -> float:
        if self.temperature == 0.0:
            return math.inf
        return 1.0 / self.temperature


def temperature_from_pe(pe: float, delta_e: float = 1.0) -> TemperatureReading:
    """Temperature whose Gibbs state has excited population ``pe``.

    ``T = delta_e / ln((1 - pe) / pe)``, packaged with the input population
    as a :class:`TemperatureReading`.
    """
    if not 0.0 <= pe <= 1.0:
        raise ValueError(f"pe must lie in [0, 1], got {pe}")
    if delta_e <= 0:
        raise ValueError(f"delta_e must be positive, got {delta_e}")
    if pe == 0.0:
        temperature = 0.0
    elif pe == 0.5:
        temperature = math.inf
    elif pe == 1.0:
        temperature = -0.0
    else:
        temperature = delta_e / math.log((1.0 - pe) / pe)
    return TemperatureReading(pe=pe, temperature=temperature, delta_e=delta_e)


def pe_half_revival(n_bar: float) -> float:
    """Closed-form pulse-floor population at the half-revival time.

    ``pi^2 / (32 n_bar)``: the residual excited population left by an ideal
    pulse at ``t = tau_revival / 2``, per the leading-order estimate. The
    exact pipeline value runs systematically below this estimate (the
    validation report quantifies the gap); the estimate remains the quoted
    floor.
    """
    if n_bar <= 0:
        raise ValueError(f"n_bar must be positive, got {n_bar}")
    return math.pi ** 2 / (32.0 * n_bar)


def t_min(n_bar: float, delta_e: float = 1.0) -> TemperatureReading:
    """Lowest reachable temperature: the half-revival floor as a temperature.

    Monotone decreasing in ``n_bar``.
    """
    return temperature_from_pe(pe_half_revival(n_bar), delta_e)


def lambert_w0(x: float, max_iter: int = 100) -> float:
    """Principal branch of the Lambert W function for ``x >= 0``.

    Halley iteration seeded with ``log1p(x)``; converges in a handful of
    steps on the whole non-negative axis with residual
    ``|W exp(W) - x| <= 1e-12 max(1, x)``. Raises ``ArithmeticError`` if the
    iteration has not converged after ``max_iter`` steps (unreachable for
    ``x >= 0``).
    """
    x = float(x)
    if not x >= 0.0:
        raise ValueError(f"lambert_w0 requires x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    w = math.log1p(x)
    for _ in range(max_iter):
        ew = math.exp(w)
        f = w * ew - x
        denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0)
        step = f / denom
        w -= step
        if abs(step) <= 1e-16 * (1.0 + abs(w)):
            break
    else:
        raise ArithmeticError(f"lambert_w0 did not converge for x={x}")
    return w


@dataclass(frozen=True)
class CollapseTime:
    """Solution of the collapse-completion condition.

    ``root`` solves ``safety_factor * exp(-t^2/tau_c^2) =
    sin(g t / (2 sqrt(n_bar)))`` by bracketing and bisection;
    ``linearized`` is the small-angle closed form
    ``g t = sqrt(W(4 safety_factor^2 n_bar))``; ``residual`` is the
    defining-equation mismatch at ``root``.
    """

    root: float
    linearized: float
    residual: float
    safety_factor: float


def collapse_condition_time(n_bar: float, params: PhysicalParams | None = None,
                            safety_factor: float = 10.0) -> CollapseTime:
    """Earliest time the slow coherence dominates the collapse transient.

    Solves ``safety_factor * exp(-t^2/tau_c^2) = sin(g t / (2 sqrt(n_bar)))``
    for the first crossing: before it the Gaussian transient (weighted by
    the safety factor) still exceeds the emergent coherence, after it the
    protocol may fire. Bisection runs to 1e-12 relative width; the
    Lambert-W linearization is returned alongside for comparison.
    """
    params = params or PhysicalParams()
    if n_bar <= 0:
        raise ValueError(f"n_bar must be positive, got {n_bar}")
    if safety_factor <= 0:
        raise ValueError(f"safety_factor must be positive, got {safety_factor}")
    g = params.g
    scales = Timescales(n_bar, g)

    def f(t: float) -> float:
        return (safety_factor * math.exp(-((t / scales.tau_collapse) ** 2))
                - math.sin(g * t / (2.0 * math.sqrt(n_bar))))

    lo, hi = 0.0, scales.half_revival
    if f(hi) > 0.0:
        raise ValueError(
            f"no bracket for the collapse condition in [0, {hi:.6g}] "
            f"(n_bar={n_bar}, safety_factor={safety_factor})"
        )
    while hi - lo > 1e-12 * max(hi, 1.0):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    linearized = math.sqrt(lambert_w0(4.0 * safety_factor ** 2 * n_bar)) / g
    return CollapseTime(root=root, linearized=linearized,
                        residual=abs(f(root)), safety_factor=safety_factor)


T_MAX_VARIANTS = ("numeric", "closed_form")


def t_max(n_bar: float, delta_e: float = 1.0, variant: str = "numeric",
          g: float = 1.0, safety_factor: float = 10.0) -> TemperatureReading:
    """Highest usable protocol temperature, reached at the collapse condition.

    ``variant='numeric'`` (reference): evaluate the pulse-floor population
    at the exact collapse-condition root and map it to a temperature.
    ``variant='closed_form'``: the historical closed form

        T = delta_e / ln( (4 sqrt(n_bar) + sqrt(W(400 n_bar)))
                        / (4 sqrt(n_bar) - sqrt(W(400 n_bar))) )

    kept verbatim for shape reproduction (the small-angle derivation gives a
    leading coefficient 2 rather than 4, so the variants differ by a roughly
    constant factor; the validation report records the ratio without judging
    it). Both variants are monotone increasing in ``n_bar``.
    """
    params = PhysicalParams(delta_e=delta_e, g=g)
    if variant == "numeric":
        ct = collapse_condition_time(n_bar, params, safety_factor)
        sin_val = math.sin(g * ct.root / (2.0 * math.sqrt(n_bar)))
        pe = 0.5 * (1.0 - sin_val)
        return temperature_from_pe(pe, delta_e)
    if variant == "closed_form":
        root_w = math.sqrt(lambert_w0(4.0 * safety_factor ** 2 * n_bar))
        four_root = 4.0 * math.sqrt(n_bar)
        if root_w >= four_root:
            raise ValueError(f"closed-form t_max undefined for n_bar={n_bar}")
        temperature = delta_e / math.log((four_root + root_w) / (four_root - root_w))
        pe = 0.5 * (1.0 - root_w / four_root)
        return TemperatureReading(pe=pe, temperature=temperature, delta_e=delta_e)
    raise ValueError(
        f"variant must be one of {T_MAX_VARIANTS}, got {variant!r}"
    )


def coupling_from_dipole(dipole: float, omega: float, volume: float,
                         permittivity: float = 1.0, hbar: float = 1.0) -> float:
    """Atom-field coupling from the dipole moment and mode volume.

    ``g = dipole * sqrt(omega / (hbar * permittivity * volume))``: the
    vacuum field amplitude of a mode of frequency ``omega`` confined to
    ``volume``, times the transition dipole.
    """
    if min(dipole, omega, volume, permittivity, hbar) <= 0:
        raise ValueError("all inputs must be positive")
    return dipole * math.sqrt(omega / (hbar * permittivity * volume))
