"""Dense real-symmetric eigensolver: Householder reduction + implicit-shift QL.

Kept in-repo so the whole pipeline stays self-contained and portable; the
accuracy contract is the residual bound checked by the callers, not the
choice of algorithm. Deterministic for a fixed input matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError

#: max allowed magnitude of P.T @ P - I
ORTHOGONALITY_TOL = 1e-10
#: max allowed magnitude of H @ P - P @ D, relative to max|H|
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenvalues (ascending) and the orthogonal eigenvector matrix, column
    j belonging to eigenvalues[j]."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.eigenvalues, dtype=float)
        v = np.asarray(self.eigenvectors, dtype=float)
        if w.ndim != 1 or v.shape != (w.size, w.size):
            raise ValueError("need n eigenvalues and an n x n eigenvector matrix")
        if np.any(np.diff(w) < 0):
            raise ValueError("eigenvalues must be in ascending order")
        w.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "eigenvalues", w)
        object.__setattr__(self, "eigenvectors", v)

    @property
    def dimension(self) -> int:
        return self.eigenvalues.size


def tridiagonalize(a: np.ndarray):
    """Householder reduction of a symmetric matrix to tridiagonal form.

    Returns ``(d, e, q)``: diagonal, subdiagonal (e[0] unused) and the
    accumulated orthogonal transform with a = q @ T @ q.T.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    reflectors: list[np.ndarray | None] = []
    for k in range(n - 2):
        x = a[k + 1:, k]
        tail = np.linalg.norm(x[1:])
        if tail == 0.0:
            # column already tridiagonal in this position
            reflectors.append(None)
            continue
        sign = x[0] if x[0] != 0.0 else 1.0
        alpha = -np.copysign(np.hypot(x[0], tail), sign)
        v = x.copy()
        v[0] -= alpha
        v /= np.linalg.norm(v)
        block = a[k + 1:, k + 1:]
        w = block @ v
        u = 2.0 * (w - (v @ w) * v)
        block -= np.outer(u, v) + np.outer(v, u)
        a[k + 1, k] = a[k, k + 1] = alpha
        a[k + 2:, k] = 0.0
        a[k, k + 2:] = 0.0
        reflectors.append(v)
    q = np.eye(n)
    for k in range(n - 3, -1, -1):
        v = reflectors[k]
        if v is not None:
            q[k + 1:, :] -= 2.0 * np.outer(v, v @ q[k + 1:, :])
    d = np.diag(a).copy()
    e = np.zeros(n)
    if n > 1:
        e[1:] = np.diag(a, -1)
    return d, e, q


def tridiag_eigh(d: np.ndarray, e: np.ndarray, q: np.ndarray, max_iter: int = 50):
    """Implicit-shift QL iteration on a symmetric tridiagonal matrix.

    ``q`` is the transform accumulated so far (identity for a matrix that is
    tridiagonal from the start); rotations are folded into its columns so the
    result diagonalizes the original dense matrix. Raises NumericalError if an
    eigenvalue fails to settle within ``max_iter`` sweeps.
    """
    n = d.size
    d = d.astype(float).copy()
    off = np.zeros(n)
    off[: n - 1] = e[1:]  # off[i] couples i and i+1
    z = np.array(q, dtype=float)
    eps = np.finfo(float).eps
    for l in range(n):
        for iteration in range(max_iter + 1):
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(off[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            if iteration == max_iter:
                raise NumericalError(
                    f"QL iteration stalled at index {l} after {max_iter} sweeps; "
                    f"residual off-diagonal {off[l]:.3e}"
                )
            g = (d[l + 1] - d[l]) / (2.0 * off[l])
            r = np.hypot(g, 1.0)
            g = d[m] - d[l] + off[l] / (g + np.copysign(r, g))
            s = c = 1.0
            p = 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * off[i]
                b = c * off[i]
                r = np.hypot(f, g)
                off[i + 1] = r
                if r == 0.0:
                    # rotation chain collapsed: restart the sweep
                    d[i + 1] -= p
                    off[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                zi = z[:, i].copy()
                z[:, i] = c * zi - s * z[:, i + 1]
                z[:, i + 1] = s * zi + c * z[:, i + 1]
            else:
                d[l] -= p
                off[l] = g
                off[m] = 0.0
    order = np.argsort(d, kind="stable")
    return d[order], z[:, order]


def eigh_symmetric(a: np.ndarray):
    """Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric matrix."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"need a square matrix, got shape {a.shape}")
    if a.shape[0] == 1:
        return a.diagonal().copy(), np.eye(1)
    d, e, q = tridiagonalize(a)
    return tridiag_eigh(d, e, q)
