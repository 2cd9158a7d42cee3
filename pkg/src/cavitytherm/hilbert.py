"""State spaces for a two-level atom coupled to a single truncated field mode.

Conventions used across the package (natural units, hbar = k_B = 1):

* The atom levels are ``g`` (index 0) and ``e`` (index 1); on resonance the
  field frequency equals the atomic gap, ``omega = delta_e``.
* Joint pure states live on a Fock-truncated tensor product with amplitude
  layout ``index = 2 * n + level`` for photon number ``n``.
* The atomic coherence is stored as ``rho01 = <g|rho|e>``, so the Bloch
  components are ``x = 2 Re rho01``, ``y = 2 Im rho01``, ``z = 2 rho11 - 1``.
* Truncated coherent-state amplitude vectors are never renormalized; the
  missing tail mass is tracked explicitly and checked against a tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammainc, gammaln

LEVEL_G = 0
LEVEL_E = 1

DEFAULT_TAIL_TOLERANCE = 1e-12

_POSITIVITY_SLACK = 1e-12


class TruncationError(ValueError):
    """Raised when a Fock cutoff leaves more tail mass than tolerated."""


@dataclass(frozen=True)
class PhysicalParams:
    """Physical constants of the resonant atom-field system.

    Parameters
    ----------
    delta_e : float
        Atomic level splitting. Doubles as the field frequency because the
        package only treats the resonant case.
    g : float
        Atom-field coupling strength, real and positive. A complex coupling
        is equivalent to a real one with its phase absorbed into the field
        phase, so only the magnitude is accepted here.
    """

    delta_e: float = 1.0
    g: float = 1.0

    def __post_init__(self) -> None:
        if not self.delta_e > 0:
            raise ValueError(f"delta_e must be positive, got {self.delta_e}")
        if not self.g > 0:
            raise ValueError(f"g must be positive, got {self.g}")

    @property
    def omega(self) -> float:
        """Field frequency; equal to ``delta_e`` on resonance."""
        return self.delta_e


def default_cutoff(n_bar: float) -> int:
    """Default Fock cutoff for a coherent field of mean photon number ``n_bar``.

    Sized so the neglected Poisson tail is far below ``1e-12`` for any
    ``n_bar``: roughly twelve standard deviations past the mean, plus a
    constant floor that covers small ``n_bar``.
    """
    if n_bar < 0:
        raise ValueError(f"n_bar must be non-negative, got {n_bar}")
    return math.ceil(n_bar + 12.0 * math.sqrt(n_bar) + 20.0)


def coherent_tail_mass(n_bar: float, n_max: int) -> float:
    """Poisson probability mass above ``n_max`` for mean ``n_bar``.

    This is the norm deficit of a coherent amplitude vector truncated at
    ``n_max`` (survival function of a Poisson variable, evaluated via the
    regularized lower incomplete gamma function).
    """
    if n_bar == 0.0:
        return 0.0
    return float(gammainc(n_max + 1, n_bar))


def required_cutoff(n_bar: float, tail_tolerance: float = DEFAULT_TAIL_TOLERANCE) -> int:
    """Smallest cutoff whose coherent tail mass is within ``tail_tolerance``."""
    if not 0 < tail_tolerance < 1:
        raise ValueError(f"tail_tolerance must lie in (0, 1), got {tail_tolerance}")
    hi = max(default_cutoff(n_bar), 1)
    while coherent_tail_mass(n_bar, hi) > tail_tolerance:
        hi *= 2
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if coherent_tail_mass(n_bar, mid) <= tail_tolerance:
            hi = mid
        else:
            lo = mid + 1
    return hi


@dataclass(frozen=True)
class FockCutoff:
    """Validated Fock-space truncation for a given mean photon number."""

    n_max: int
    tail_tolerance: float = DEFAULT_TAIL_TOLERANCE

    def __post_init__(self) -> None:
        if self.n_max < 0:
            raise ValueError(f"n_max must be non-negative, got {self.n_max}")

    @classmethod
    def for_n_bar(
        cls, n_bar: float, tail_tolerance: float = DEFAULT_TAIL_TOLERANCE
    ) -> "FockCutoff":
        return cls(n_max=default_cutoff(n_bar), tail_tolerance=tail_tolerance)

    def check(self, n_bar: float) -> None:
        """Raise :class:`TruncationError` if the cutoff is too small for ``n_bar``."""
        tail = coherent_tail_mass(n_bar, self.n_max)
        if tail > self.tail_tolerance:
            raise TruncationError(
                f"insufficient truncation: n_max={self.n_max} leaves tail mass "
                f"{tail:.3e} > {self.tail_tolerance:.3e} for n_bar={n_bar}; "
                f"need n_max >= {required_cutoff(n_bar, self.tail_tolerance)}"
            )


def poisson_weight(n, n_bar: float):
    """Poisson weight ``w(n) = exp(-n_bar) n_bar**n / n!`` in log space.

    Accepts scalar or array ``n``; returns a float or float array.
    """
    n_arr = np.asarray(n)
    if n_bar < 0:
        raise ValueError(f"n_bar must be non-negative, got {n_bar}")
    if n_bar == 0.0:
        out = np.where(n_arr == 0, 1.0, 0.0)
        return float(out) if np.isscalar(n) else out
    log_w = n_arr * math.log(n_bar) - n_bar - gammaln(n_arr + 1.0)
    out = np.exp(log_w)
    return float(out) if np.isscalar(n) else out


def coherent_amplitudes(alpha: complex, n_max: int) -> np.ndarray:
    """Fock amplitudes ``c_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!)`` up to ``n_max``.

    Magnitudes are evaluated in log space so large ``n_bar`` cannot overflow
    a factorial; the truncated vector is returned as-is (not renormalized).
    """
    alpha = complex(alpha)
    n = np.arange(n_max + 1)
    n_bar = abs(alpha) ** 2
    if n_bar == 0.0:
        amps = np.zeros(n_max + 1, dtype=np.complex128)
        amps[0] = 1.0
        return amps
    log_mag = -0.5 * n_bar + n * math.log(abs(alpha)) - 0.5 * gammaln(n + 1.0)
    phase = np.exp(1j * n * np.angle(alpha))
    return np.exp(log_mag) * phase


@dataclass(frozen=True)
class CoherentPrep:
    """A coherent field preparation with a validated truncation.

    Parameters
    ----------
    alpha : complex
        Coherent amplitude; ``n_bar = |alpha|^2`` and ``phi = arg(alpha)``.
    cutoff : FockCutoff, optional
        Truncation to use. Defaults to :func:`default_cutoff` for ``n_bar``.
    """

    alpha: complex
    cutoff: FockCutoff = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", complex(self.alpha))
        if self.cutoff is None:
            object.__setattr__(self, "cutoff", FockCutoff.for_n_bar(self.n_bar))
        self.cutoff.check(self.n_bar)

    @property
    def n_bar(self) -> float:
        return abs(self.alpha) ** 2

    @property
    def phi(self) -> float:
        return float(np.angle(self.alpha))

    @property
    def n_max(self) -> int:
        return self.cutoff.n_max

    def field_amplitudes(self) -> np.ndarray:
        return coherent_amplitudes(self.alpha, self.n_max)

    def tail_mass(self) -> float:
        return coherent_tail_mass(self.n_bar, self.n_max)


@dataclass(frozen=True)
class JointPureState:
    """Pure state of atom plus truncated field mode.

    The amplitude vector has length ``2 * (n_max + 1)`` with layout
    ``index = 2 * n + level`` (level 0 = g, 1 = e) and is stored read-only.
    """

    amplitudes: np.ndarray
    params: PhysicalParams = field(default_factory=PhysicalParams)

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=np.complex128, copy=True)
        if amps.ndim != 1 or amps.size % 2 != 0 or amps.size == 0:
            raise ValueError(
                f"amplitudes must be a 1-d array of even length, got shape {amps.shape}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_max(self) -> int:
        return self.amplitudes.size // 2 - 1

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def amplitude(self, level: int, n: int) -> complex:
        return complex(self.amplitudes[2 * n + level])

    def level_amplitudes(self, level: int) -> np.ndarray:
        """All amplitudes for one atomic level, indexed by photon number."""
        return self.amplitudes[level::2]


def product_state(level: int, field_amps: np.ndarray,
                  params: PhysicalParams | None = None) -> JointPureState:
    """Joint state ``|level> (x) |field>`` from a field amplitude vector."""
    if level not in (LEVEL_G, LEVEL_E):
        raise ValueError(f"level must be 0 (g) or 1 (e), got {level}")
    field_amps = np.asarray(field_amps, dtype=np.complex128)
    amps = np.zeros(2 * field_amps.size, dtype=np.complex128)
    amps[level::2] = field_amps
    return JointPureState(amps, params or PhysicalParams())


def coherent_joint_state(level: int, alpha: complex,
                         params: PhysicalParams | None = None,
                         n_max: int | None = None,
                         tail_tolerance: float = DEFAULT_TAIL_TOLERANCE) -> JointPureState:
    """Atom level tensored with a truncation-validated coherent field state."""
    n_bar = abs(complex(alpha)) ** 2
    cutoff = (FockCutoff(n_max, tail_tolerance) if n_max is not None
              else FockCutoff(default_cutoff(n_bar), tail_tolerance))
    prep = CoherentPrep(alpha, cutoff)
    return product_state(level, prep.field_amplitudes(), params)


@dataclass(frozen=True)
class AtomDensity:
    """Reduced 2x2 atomic density matrix.

    Stored as the excited population ``rho11 = <e|rho|e>`` and the coherence
    ``rho01 = <g|rho|e>``; the trace is exactly 1 and Hermiticity is implied
    by the storage. Construction validates positivity.
    """

    rho11: float
    rho01: complex = 0j

    def __post_init__(self) -> None:
        object.__setattr__(self, "rho11", float(self.rho11))
        object.__setattr__(self, "rho01", complex(self.rho01))
        if not -_POSITIVITY_SLACK <= self.rho11 <= 1.0 + _POSITIVITY_SLACK:
            raise ValueError(f"rho11 must lie in [0, 1], got {self.rho11}")
        if self.determinant < -_POSITIVITY_SLACK:
            raise ValueError(
                f"density matrix is not positive semi-definite: "
                f"det = {self.determinant:.3e}"
            )

    @property
    def rho00(self) -> float:
        return 1.0 - self.rho11

    @property
    def determinant(self) -> float:
        return self.rho00 * self.rho11 - abs(self.rho01) ** 2

    @property
    def purity(self) -> float:
        return self.rho00 ** 2 + self.rho11 ** 2 + 2.0 * abs(self.rho01) ** 2

    def eigenvalues(self) -> tuple[float, float]:
        """Eigenvalue pair ``(smallest, largest)``; they sum to 1."""
        radius = math.hypot(self.rho11 - 0.5, abs(self.rho01))
        return 0.5 - radius, 0.5 + radius

    def as_matrix(self) -> np.ndarray:
        """2x2 matrix in (g, e) row/column ordering."""
        return np.array(
            [[self.rho00, self.rho01], [np.conj(self.rho01), self.rho11]],
            dtype=np.complex128,
        )


def partial_trace_field(state: JointPureState) -> AtomDensity:
    """Reduced atomic density of a joint pure state (field traced out)."""
    psi_g = state.level_amplitudes(LEVEL_G)
    psi_e = state.level_amplitudes(LEVEL_E)
    rho11 = float(np.sum(np.abs(psi_e) ** 2))
    rho01 = complex(np.sum(psi_g * np.conj(psi_e)))
    # A truncated input can be short of unit norm by the tail deficit; fold
    # the deficit into the ground population so the trace is exactly 1.
    deficit = 1.0 - float(np.sum(np.abs(psi_g) ** 2)) - rho11
    if deficit < -1e-9 or deficit > 1e-6:
        raise ValueError(
            f"joint state norm deviates from 1 by {deficit:.3e}; "
            "refusing to normalize silently"
        )
    return AtomDensity(rho11, rho01)


def mix_densities(weights, densities) -> AtomDensity:
    """Convex combination of atomic density matrices."""
    weights = np.asarray(weights, dtype=float)
    if weights.size == 0 or abs(weights.sum() - 1.0) > 1e-12 or np.any(weights < 0):
        raise ValueError("weights must be non-negative and sum to 1")
    rho11 = sum(w * d.rho11 for w, d in zip(weights, densities))
    rho01 = sum(w * d.rho01 for w, d in zip(weights, densities))
    return AtomDensity(rho11, rho01)


def thermal_atom(beta: float, delta_e: float = 1.0) -> AtomDensity:
    """Thermal (Gibbs) atomic state at inverse temperature ``beta``.

    ``beta`` may be ``inf`` (ground state). Negative ``beta`` encodes an
    inverted population and is accepted.
    """
    if delta_e <= 0:
        raise ValueError(f"delta_e must be positive, got {delta_e}")
    x = beta * delta_e
    if x > 700.0:
        pe = 0.0
    elif x < -700.0:
        pe = 1.0
    else:
        pe = 1.0 / (1.0 + math.exp(x))
    return AtomDensity(pe, 0j)


def bloch_vector(rho: AtomDensity) -> np.ndarray:
    """Bloch components ``(2 Re rho01, 2 Im rho01, 2 rho11 - 1)``."""
    return np.array(
        [2.0 * rho.rho01.real, 2.0 * rho.rho01.imag, 2.0 * rho.rho11 - 1.0]
    )


def atom_density_from_bloch(vec) -> AtomDensity:
    """Inverse of :func:`bloch_vector`."""
    x, y, z = (float(c) for c in vec)
    return AtomDensity(rho11=(1.0 + z) / 2.0, rho01=(x + 1j * y) / 2.0)


def trace_distance(a: AtomDensity, b: AtomDensity) -> float:
    """Trace distance between two atomic density matrices.

    For unit-trace 2x2 matrices the difference has eigenvalues ``+/- r`` with
    ``r = sqrt((d rho11)^2 + |d rho01|^2)``, so the trace distance is ``r``.
    """
    return math.hypot(a.rho11 - b.rho11, abs(a.rho01 - b.rho01))
