"""Per-layer linear systems ``T u = b``.

Each equation anchor ``(x0, y0)`` of layer ``k`` contributes one equation,
solved for the cell ``(x0 + x_beta, y0 + y_beta, k)``.  Both equations and
unknowns are ordered y-major: vector index ``i = j * nx + i_x`` where
``i_x`` and ``j`` are the offsets of the anchor (or unknown) within its
rectangle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Apex, CauchyProblem, DomainSpec, Field, Stencil, anchor_shape, check_extents
from .errors import MissingData, OutOfRange


@dataclass(frozen=True)
class UnknownRegion:
    """Cross-section ``[x_lo, x_hi] x [y_lo, y_hi]`` of the computed cells."""

    x_lo: int
    x_hi: int
    y_lo: int
    y_hi: int

    @property
    def nx(self) -> int:
        return self.x_hi - self.x_lo + 1

    @property
    def ny(self) -> int:
        return self.y_hi - self.y_lo + 1

    @property
    def n_unknowns(self) -> int:
        return self.nx * self.ny

    def index(self, x: int, y: int) -> int:
        return (y - self.y_lo) * self.nx + (x - self.x_lo)

    def cell(self, i: int) -> tuple[int, int]:
        j, i_x = divmod(i, self.nx)
        return (self.x_lo + i_x, self.y_lo + j)


def unknown_region(domain: DomainSpec, stencil: Stencil, apex: Apex) -> UnknownRegion:
    check_extents(domain, stencil)
    nx, ny, _ = anchor_shape(domain, stencil)
    return UnknownRegion(apex.x_beta, apex.x_beta + nx - 1, apex.y_beta, apex.y_beta + ny - 1)


def pack(layer_xy: np.ndarray) -> np.ndarray:
    """``[x, y]`` array -> y-major vector."""
    return np.ascontiguousarray(layer_xy.T).reshape(-1)


def unpack(vec: np.ndarray, nx: int, ny: int) -> np.ndarray:
    """y-major vector -> ``[x, y]`` array."""
    return np.asarray(vec).reshape(ny, nx).T


def assemble_T(stencil: Stencil, apex: Apex, domain: DomainSpec) -> np.ndarray:
    """Coupling matrix between the computed cells of one layer.

    Row ``(x0, y0)``, column ``(x, y)`` holds the top-layer coefficient at
    offset ``(x - x0, y - y0)`` when it lies within the stencil, else 0.
    The matrix is the same for every layer.
    """
    region = unknown_region(domain, stencil, apex)
    nx, ny = region.nx, region.ny
    n = region.n_unknowns
    T = np.zeros((n, n))
    # anchor grid, y-major
    y0, x0 = np.divmod(np.arange(n), nx)
    rows = np.arange(n)
    top = stencil.top
    for a2 in range(stencil.by + 1):
        for a1 in range(stencil.bx + 1):
            u = x0 + a1 - region.x_lo
            v = y0 + a2 - region.y_lo
            ok = (u >= 0) & (u < nx) & (v >= 0) & (v < ny)
            T[rows[ok], v[ok] * nx + u[ok]] = top[a2, a1]
    return T


def _region_mask_2d(domain: DomainSpec, region: UnknownRegion) -> np.ndarray:
    mask = np.zeros((domain.Bx + 1, domain.By + 1), dtype=bool)
    mask[region.x_lo:region.x_hi + 1, region.y_lo:region.y_hi + 1] = True
    return mask


def assemble_rhs(problem: CauchyProblem, field: Field, k: int) -> np.ndarray:
    """Right-hand side for layer ``k``: ``g`` minus every known contribution.

    All cells touched by the equations of layer ``k`` must be known except
    the computed cells of layer ``k`` itself.
    """
    stencil, domain = problem.stencil, problem.domain
    m = stencil.m
    if not (m <= k <= domain.z_max):
        raise OutOfRange(f"layer {k} outside [{m}, {domain.z_max}]")
    region = unknown_region(domain, stencil, problem.apex)
    nx, ny = region.nx, region.ny
    in_region = _region_mask_2d(domain, region)
    c = stencil.coeffs
    acc = np.zeros((nx, ny))
    for a3 in range(m + 1):
        z = k - m + a3
        for a2 in range(stencil.by + 1):
            for a1 in range(stencil.bx + 1):
                block = field.values[a1:a1 + nx, a2:a2 + ny, z]
                known = field.known_mask[a1:a1 + nx, a2:a2 + ny, z]
                if a3 == m:
                    needed = ~in_region[a1:a1 + nx, a2:a2 + ny]
                else:
                    needed = np.ones_like(known)
                missing = needed & ~known
                if missing.any():
                    i, j = np.argwhere(missing)[0]
                    raise MissingData(
                        f"layer {k} needs cell ({a1 + i}, {a2 + j}, {z}), which is not known yet"
                    )
                acc += c[a3, a2, a1] * np.where(needed, block, 0.0)
    return pack(problem.rhs_g[:, :, k - m] - acc)
