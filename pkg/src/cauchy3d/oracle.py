"""Brute-force cross-check: one global system over every computed cell.

Deliberately independent of :mod:`cauchy3d.assembly` and
:mod:`cauchy3d.sweep`; entries are produced by a naive loop over anchors and
stencil offsets, and the system is solved with LAPACK rather than the
in-package LU.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CauchyProblem, Field
from .errors import CapExceeded, Singular

DEFAULT_CAP = 5000


@dataclass(frozen=True)
class GlobalSystem:
    M: np.ndarray
    rhs: np.ndarray
    # global index -> (x, y, z)
    cells: list[tuple[int, int, int]]
    index_map: dict[tuple[int, int, int], int]
    block_size: int


def build_global_system(problem: CauchyProblem, cap: int = DEFAULT_CAP) -> GlobalSystem:
    """Equations ordered by anchor layer, then y, then x; unknowns likewise by z, y, x."""
    st = problem.stencil
    Bx, By, z_max = problem.domain.Bx, problem.domain.By, problem.domain.z_max
    known = problem.initial.known_mask
    phi = problem.initial.values

    cells = []
    for z in range(z_max + 1):
        for y in range(By + 1):
            for x in range(Bx + 1):
                if not known[x, y, z]:
                    cells.append((x, y, z))
    n = len(cells)
    if n > cap:
        raise CapExceeded(f"{n} unknowns exceed the oracle cap of {cap}")
    index_map = {cell: i for i, cell in enumerate(cells)}

    anchors = []
    for z0 in range(z_max - st.m + 1):
        for y0 in range(By - st.by + 1):
            for x0 in range(Bx - st.bx + 1):
                anchors.append((x0, y0, z0))
    if len(anchors) != n:
        raise Singular(f"{len(anchors)} equations for {n} unknowns")

    M = np.zeros((n, n))
    rhs = np.zeros(n)
    for row, (x0, y0, z0) in enumerate(anchors):
        rhs[row] = problem.rhs_g[x0, y0, z0]
        for a3 in range(st.m + 1):
            for a2 in range(st.by + 1):
                for a1 in range(st.bx + 1):
                    coef = st.coeffs[a3, a2, a1]
                    cell = (x0 + a1, y0 + a2, z0 + a3)
                    if cell in index_map:
                        M[row, index_map[cell]] += coef
                    else:
                        rhs[row] -= coef * phi[cell]
    block = n // max(z_max - st.m + 1, 1)
    return GlobalSystem(M, rhs, cells, index_map, block)


def oracle_solve(problem: CauchyProblem, cap: int = DEFAULT_CAP) -> Field:
    system = build_global_system(problem, cap)
    field = problem.initial.copy()
    if not system.cells:
        return field
    try:
        u = np.linalg.solve(system.M, system.rhs)
    except np.linalg.LinAlgError as exc:
        raise Singular(f"global system is singular: {exc}") from exc
    if not np.all(np.isfinite(u)):
        raise Singular("global solve produced non-finite values")
    for (x, y, z), val in zip(system.cells, u):
        field.values[x, y, z] = val
        field.known_mask[x, y, z] = True
    return field
