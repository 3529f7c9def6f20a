"""Shared domain types and the rate maps connecting the three engines.

The mode-mode coupling G sets the unit system: every frequency and rate is
quoted in units of G, times in 1/G. All spec classes therefore default
``g_coupling`` to 1.0 and the command line keeps it fixed there.

The three pictures of the same damped dynamics are linked by

    kappa = pi * gamma**2 / delta        (finite bath  -> master equation)
    gamma = sqrt(eta * delta * G / pi)   (dial eta     -> bath coupling)
    g     = sqrt(2 * eta * G / t_int)    (dial eta     -> atom coupling)
    kappa = g**2 * t_int / 2             (collisions   -> master equation)

so a single dimensionless dial eta means kappa = eta * G in every engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

ENGINE_TAGS = ("bath", "lindblad-closed", "lindblad-integrated", "collision")

LAYOUT_PAIRED = "paired-equispaced"
LAYOUT_RANDOM = "random-uniform"
LAYOUTS = (LAYOUT_PAIRED, LAYOUT_RANDOM)

#: values this far outside [0, 1] are treated as roundoff and clipped
PROBABILITY_SLACK = 1e-9


@dataclass(frozen=True)
class BathSpec:
    """Finite system+bath model: two coupled modes, one tied to n_total - 2
    environment oscillators through a common coupling gamma / sqrt(n_total - 2).

    ``layout`` selects how the environment frequencies fill the band
    [omega - delta/2, omega + delta/2]: ``paired-equispaced`` places them at
    omega +- j*delta/(n_total - 2), ``random-uniform`` draws them i.i.d.
    uniformly from the seeded generator.
    """

    n_total: int
    omega: float
    delta: float
    gamma: float
    g_coupling: float = 1.0
    layout: str = LAYOUT_PAIRED
    seed: int = 0

    def __post_init__(self):
        if self.layout not in LAYOUTS:
            raise ValueError(f"unknown layout {self.layout!r}; expected one of {LAYOUTS}")
        if self.layout == LAYOUT_PAIRED:
            if self.n_total < 4 or self.n_total % 2 != 0:
                raise ValueError(
                    "paired-equispaced layout needs an even oscillator count "
                    f"n_total >= 4 so the environment splits into +/- pairs, got {self.n_total}"
                )
        elif self.n_total < 3:
            raise ValueError(f"n_total must be >= 3, got {self.n_total}")
        if not self.delta > 0:
            raise ValueError(f"delta must be positive, got {self.delta}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be non-negative, got {self.gamma}")
        if self.g_coupling < 0:
            raise ValueError(f"g_coupling must be non-negative, got {self.g_coupling}")


@dataclass(frozen=True)
class MasterSpec:
    """Parameters of the amplitude-damped two-mode master equation."""

    kappa: float
    omega: float = 100.0
    g_coupling: float = 1.0

    def __post_init__(self):
        if self.kappa < 0:
            raise ValueError(f"kappa must be non-negative, got {self.kappa}")
        if self.g_coupling < 0:
            raise ValueError(f"g_coupling must be non-negative, got {self.g_coupling}")


@dataclass(frozen=True)
class CollisionSpec:
    """Repeated-interaction protocol: ground-state atoms hit mode 1 back to
    back, each for ``t_int``, so the simulated horizon is n_collisions * t_int.
    """

    g_atom: float
    t_int: float
    n_collisions: int
    omega: float = 100.0
    g_coupling: float = 1.0

    def __post_init__(self):
        if self.g_atom < 0:
            raise ValueError(f"g_atom must be non-negative, got {self.g_atom}")
        if not self.t_int > 0:
            raise ValueError(f"t_int must be positive, got {self.t_int}")
        if self.n_collisions < 1:
            raise ValueError(f"n_collisions must be >= 1, got {self.n_collisions}")
        if self.g_coupling < 0:
            raise ValueError(f"g_coupling must be non-negative, got {self.g_coupling}")

    @property
    def total_time(self) -> float:
        return self.n_collisions * self.t_int


@dataclass(frozen=True)
class TimeGrid:
    """Uniform sampling grid on [0, t_max] with ``samples`` points."""

    t_max: float
    samples: int

    def __post_init__(self):
        if not self.t_max > 0:
            raise ValueError(f"t_max must be positive, got {self.t_max}")
        if self.samples < 2:
            raise ValueError(f"samples must be >= 2, got {self.samples}")

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.samples)


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Sampled survival probability with engine and parameter provenance."""

    times: np.ndarray
    values: np.ndarray
    engine: str
    params_digest: str

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if times.ndim != 1 or values.shape != times.shape:
            raise ValueError("times and values must be 1-d arrays of equal length")
        if times.size > 1 and not np.all(np.diff(times) > 0):
            raise ValueError("times must be strictly increasing")
        if self.engine not in ENGINE_TAGS:
            raise ValueError(f"unknown engine tag {self.engine!r}; expected one of {ENGINE_TAGS}")
        if values.size and (values.min() < -PROBABILITY_SLACK or values.max() > 1 + PROBABILITY_SLACK):
            raise ValueError(
                f"probabilities out of [0, 1]: range [{values.min()}, {values.max()}]"
            )
        values = np.clip(values, 0.0, 1.0)
        times.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.times.size


def kappa_from_gamma(gamma: float, delta: float) -> float:
    """Effective damping rate pi * gamma**2 / delta of the finite-bath model."""
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if gamma < 0:
        raise ValueError(f"gamma must be non-negative, got {gamma}")
    return math.pi * gamma * gamma / delta


def gamma_from_kappa(kappa: float, delta: float) -> float:
    """Inverse of :func:`kappa_from_gamma`, handy for parameter sweeps."""
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if kappa < 0:
        raise ValueError(f"kappa must be non-negative, got {kappa}")
    return math.sqrt(kappa * delta / math.pi)


def gamma_from_eta(eta: float, delta: float, g_coupling: float = 1.0) -> float:
    """Bath coupling sqrt(eta * delta * G / pi); composes to kappa = eta * G."""
    if eta < 0:
        raise ValueError(f"eta must be non-negative, got {eta}")
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if not g_coupling > 0:
        raise ValueError(f"g_coupling must be positive, got {g_coupling}")
    return math.sqrt(eta * delta * g_coupling / math.pi)


def g_from_eta(eta: float, g_coupling: float, t_int: float) -> float:
    """Atom coupling sqrt(2 * eta * G / t_int); composes to kappa = eta * G."""
    if eta < 0:
        raise ValueError(f"eta must be non-negative, got {eta}")
    if not t_int > 0:
        raise ValueError(f"t_int must be positive, got {t_int}")
    if not g_coupling > 0:
        raise ValueError(f"g_coupling must be positive, got {g_coupling}")
    return math.sqrt(2.0 * eta * g_coupling / t_int)


def kappa_from_collision(g_atom: float, t_int: float, *, full_rate: bool = False) -> float:
    """Damping rate g**2 * t_int / 2 reached by the collision stream as t_int -> 0.

    The factor 1/2 matches the master-equation convention used throughout
    (dissipator kappa * (2 a rho a+ - a+ a rho - rho a+ a)) and makes
    ``kappa_from_collision(g_from_eta(eta, G, t), t) == eta * G`` hold exactly.
    ``full_rate=True`` drops the 1/2; it is exposed for exploration only and
    is never the default anywhere in the package.
    """
    if g_atom < 0:
        raise ValueError(f"g_atom must be non-negative, got {g_atom}")
    if not t_int > 0:
        raise ValueError(f"t_int must be positive, got {t_int}")
    rate = g_atom * g_atom * t_int
    return rate if full_rate else rate / 2.0


def master_from_bath(spec: BathSpec) -> MasterSpec:
    """Master-equation parameters equivalent to a bath spec."""
    return MasterSpec(
        kappa=kappa_from_gamma(spec.gamma, spec.delta),
        omega=spec.omega,
        g_coupling=spec.g_coupling,
    )


def master_from_collision(spec: CollisionSpec) -> MasterSpec:
    """Master-equation parameters targeted by a collision spec."""
    return MasterSpec(
        kappa=kappa_from_collision(spec.g_atom, spec.t_int),
        omega=spec.omega,
        g_coupling=spec.g_coupling,
    )


def format_number(value) -> str:
    """Canonical 12-significant-digit rendering used in digests and CSV."""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".12g")


def params_digest(engine: str, **params) -> str:
    """Deterministic provenance string, safe to embed in a CSV column."""
    parts = [f"engine={engine}"]
    for key in sorted(params):
        value = params[key]
        if isinstance(value, str):
            rendered = value
        else:
            rendered = format_number(value)
        parts.append(f"{key}={rendered}")
    digest = ";".join(parts)
    if "," in digest or "\n" in digest:
        raise ValueError(f"digest must stay comma- and newline-free: {digest!r}")
    return digest
