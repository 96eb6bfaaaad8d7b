"""Dense LU factorization with partial pivoting."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, Singular

PIVOT_RTOL = 1e-12


@dataclass(frozen=True)
class LuFactorization:
    """``A[perm] = L @ U`` with unit-lower ``L`` and ``U`` packed into ``lu``."""

    lu: np.ndarray
    perm: np.ndarray
    sign: int

    @property
    def n(self) -> int:
        return self.lu.shape[0]

    def lower(self) -> np.ndarray:
        return np.tril(self.lu, -1) + np.eye(self.n)

    def upper(self) -> np.ndarray:
        return np.triu(self.lu)


def _square(A) -> np.ndarray:
    A = np.asarray(A, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    return A


def lu_factor(A) -> LuFactorization:
    """Factor ``A`` choosing the largest-magnitude pivot in each column.

    Raises :class:`Singular` when a pivot falls below ``1e-12 * max|A|``.
    """
    a = _square(A).copy()
    n = a.shape[0]
    perm = np.arange(n)
    sign = 1
    threshold = PIVOT_RTOL * (np.abs(a).max() if n else 0.0)
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        pivot = a[p, k]
        if abs(pivot) <= threshold or pivot == 0.0:
            raise Singular(f"pivot {abs(pivot):.3e} in column {k} below threshold {threshold:.3e}")
        if p != k:
            a[[k, p]] = a[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        a[k + 1:, k] /= pivot
        a[k + 1:, k + 1:] -= np.outer(a[k + 1:, k], a[k, k + 1:])
    a.flags.writeable = False
    perm.flags.writeable = False
    return LuFactorization(a, perm, sign)


def lu_solve(f: LuFactorization, b) -> np.ndarray:
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (f.n,):
        raise DimensionMismatch(f"right-hand side has shape {b.shape}, expected ({f.n},)")
    lu = f.lu
    x = b[f.perm].copy()
    for i in range(1, f.n):
        x[i] -= lu[i, :i] @ x[:i]
    for i in range(f.n - 1, -1, -1):
        x[i] = (x[i] - lu[i, i + 1:] @ x[i + 1:]) / lu[i, i]
    return x


def is_strictly_row_dominant(A) -> bool:
    a = np.abs(_square(A))
    diag = np.diag(a).copy()
    np.fill_diagonal(a, 0.0)
    return bool(np.all(diag > a.sum(axis=1)))
