"""Exact single-excitation dynamics of the finite system+bath model.

Mode 2 starts with the one excitation; mode 1 carries the bath contact. The
survival probability is the modulus squared of a weighted sum of eigenmode
phases, with weights given by the squared second row of the eigenvector
matrix, so everything reduces to one dense symmetric eigenproblem per spec.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NumericalError
from .model import LAYOUT_PAIRED, LAYOUT_RANDOM, BathSpec, TimeGrid, TimeSeries, params_digest
from .symeig import ORTHOGONALITY_TOL, RESIDUAL_TOL, SpectralDecomposition, eigh_symmetric

#: fraction of the revival time beyond which series are flagged
RECURRENCE_GUARD = 0.5

#: tolerance on sum_j P[1, j]**2 == 1
WEIGHT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class CouplingMatrix:
    """Dense symmetric matrix of mode frequencies and couplings."""

    dimension: int
    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=float)
        if m.shape != (self.dimension, self.dimension):
            raise ValueError(f"expected shape {(self.dimension,) * 2}, got {m.shape}")
        if not np.array_equal(m, m.T):
            raise ValueError("coupling matrix must be exactly symmetric")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)


def environment_frequencies(spec: BathSpec) -> np.ndarray:
    """Diagonal frequencies of the n_total - 2 environment oscillators.

    Paired layout interleaves +1, -1, +2, -2, ... steps of delta/(n_total - 2)
    around omega; the ordering is physically irrelevant but fixed so the
    assembled matrix is byte-reproducible.
    """
    n_env = spec.n_total - 2
    if spec.layout == LAYOUT_PAIRED:
        step = spec.delta / n_env
        j = np.repeat(np.arange(1, n_env // 2 + 1), 2)
        signs = np.tile([1.0, -1.0], n_env // 2)
        return spec.omega + signs * j * step
    rng = np.random.default_rng(spec.seed)
    return rng.uniform(spec.omega - spec.delta / 2, spec.omega + spec.delta / 2, n_env)


def build_hamiltonian(spec: BathSpec) -> CouplingMatrix:
    """Assemble the arrowhead coupling matrix for a bath spec."""
    n = spec.n_total
    h = np.zeros((n, n))
    h[0, 0] = h[1, 1] = spec.omega
    h[0, 1] = h[1, 0] = spec.g_coupling
    coupling = spec.gamma / np.sqrt(n - 2)
    h[0, 2:] = h[2:, 0] = coupling
    h[np.arange(2, n), np.arange(2, n)] = environment_frequencies(spec)
    return CouplingMatrix(dimension=n, entries=h)


def eigendecompose(h: CouplingMatrix) -> SpectralDecomposition:
    """Diagonalize a coupling matrix and enforce the accuracy contract."""
    w, v = eigh_symmetric(h.entries)
    n = h.dimension
    orth = np.max(np.abs(v.T @ v - np.eye(n)))
    if orth > ORTHOGONALITY_TOL:
        raise NumericalError(f"eigenvector orthogonality residual {orth:.3e} exceeds {ORTHOGONALITY_TOL}")
    scale = np.max(np.abs(h.entries))
    residual = np.max(np.abs(h.entries @ v - v * w))
    if residual > RESIDUAL_TOL * max(scale, 1.0):
        raise NumericalError(f"eigen residual {residual:.3e} exceeds {RESIDUAL_TOL:.0e} * max|H|")
    return SpectralDecomposition(eigenvalues=w, eigenvectors=v)


@lru_cache(maxsize=64)
def decompose(spec: BathSpec) -> SpectralDecomposition:
    """Cached build + eigendecomposition for a spec (specs are immutable)."""
    return eigendecompose(build_hamiltonian(spec))


def mode2_weights(sd: SpectralDecomposition) -> np.ndarray:
    """Spectral weights P[1, j]**2 of the initially excited mode."""
    weights = sd.eigenvectors[1, :] ** 2
    total = weights.sum()
    if abs(total - 1.0) > WEIGHT_TOL:
        raise NumericalError(f"mode-2 spectral weights sum to {total}, expected 1")
    return weights


def survival_probability(sd: SpectralDecomposition, t) -> float | np.ndarray:
    """Probability that the excitation is still in mode 2 at time t.

    Accepts a scalar or an array of times; |sum_j w_j exp(-i lambda_j t)|**2
    with non-negative weights summing to one, so the result lies in [0, 1].
    """
    weights = mode2_weights(sd)
    t_arr = np.asarray(t, dtype=float)
    phases = np.exp(-1j * np.outer(sd.eigenvalues, np.atleast_1d(t_arr)))
    p = np.abs(weights @ phases) ** 2
    p = np.clip(p, 0.0, 1.0)
    return float(p[0]) if t_arr.ndim == 0 else p


def recurrence_time(spec: BathSpec) -> float:
    """Revival timescale 2 pi (n_total - 2) / delta set by the level spacing.

    Exact scale for the paired-equispaced layout; for the random layout the
    same formula is returned as an order-of-magnitude estimate.
    """
    return 2.0 * np.pi * (spec.n_total - 2) / spec.delta


def survival_series(spec: BathSpec, grid: TimeGrid) -> TimeSeries:
    """Survival probability sampled on a grid, with provenance and the
    recurrence guard: past half the revival time the digest carries a warning
    instead of failing, since the bath is exact but no longer Markov-like."""
    sd = decompose(spec)
    values = survival_probability(sd, grid.times)
    digest = params_digest(
        "bath",
        n_total=spec.n_total,
        omega=spec.omega,
        delta=spec.delta,
        gamma=spec.gamma,
        g_coupling=spec.g_coupling,
        layout=spec.layout,
        seed=spec.seed,
        t_max=grid.t_max,
        samples=grid.samples,
    )
    guard = RECURRENCE_GUARD * recurrence_time(spec)
    if grid.t_max > guard:
        note = "warn=beyond-half-recurrence"
        if spec.layout == LAYOUT_RANDOM:
            note += "-heuristic"
        digest = f"{digest};{note}"
    return TimeSeries(times=grid.times, values=values, engine="bath", params_digest=digest)
