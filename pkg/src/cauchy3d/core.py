"""Domain types for the three-dimensional Cauchy problem.

Coordinates are Cartesian ``(x, y, z)`` everywhere inside the package.  The
1-based "matrix" coordinates (row = y, column = x, layer = z) only appear at
the I/O boundary, see :func:`to_matrix_coords`.

Array conventions:

* ``Stencil.coeffs`` is indexed ``[a3][a2][a1]`` (layer, row, column), i.e. the
  order in which stencils are written down layer by layer.
* ``Field.values`` is indexed ``[x, y, z]``.
* ``CauchyProblem.rhs_g`` is indexed by equation anchor ``[x0, y0, z0]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    IncompatibleExtents,
    LCellMissing,
    NegativeCoordinate,
    OrderZero,
    OutOfRange,
    RaggedShape,
    ShapeMismatch,
    UnknownCellGiven,
    ZeroTopLayer,
)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Stencil:
    """Coefficients of a constant-coefficient difference operator."""

    coeffs: np.ndarray

    @property
    def bx(self) -> int:
        return self.coeffs.shape[2] - 1

    @property
    def by(self) -> int:
        return self.coeffs.shape[1] - 1

    @property
    def m(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def top(self) -> np.ndarray:
        """Top layer ``a3 = m`` indexed ``[a2][a1]``."""
        return self.coeffs[-1]

    def c(self, a1: int, a2: int, a3: int) -> float:
        """Coefficient of the shift ``d1^a1 d2^a2 d3^a3``."""
        return float(self.coeffs[a3, a2, a1])

    def scaled(self, factor: float) -> Stencil:
        return make_stencil(self.coeffs * factor)


def _nested_shape(data, depth: int) -> tuple[int, ...]:
    if depth == 0:
        if isinstance(data, (list, tuple)):
            raise RaggedShape("stencil nested deeper than 3 levels")
        return ()
    if not isinstance(data, (list, tuple)) or len(data) == 0:
        raise RaggedShape("stencil must be a non-empty 3-level nested array")
    shapes = {_nested_shape(item, depth - 1) for item in data}
    if len(shapes) != 1:
        raise RaggedShape("stencil layers or rows differ in length")
    return (len(data),) + shapes.pop()


def make_stencil(coeffs) -> Stencil:
    """Validate a ``[a3][a2][a1]`` coefficient array and wrap it.

    Extents are inferred from the shape: ``(bx, by, m) = (nx-1, ny-1, nz-1)``.
    """
    if isinstance(coeffs, np.ndarray):
        if coeffs.ndim != 3 or 0 in coeffs.shape:
            raise RaggedShape(f"stencil must be a non-empty 3-d array, got shape {coeffs.shape}")
        arr = np.array(coeffs, dtype=np.float64)
    else:
        _nested_shape(coeffs, 3)
        arr = np.array(coeffs, dtype=np.float64)
    if arr.shape[0] < 2:
        raise OrderZero("operator order m must be at least 1 (need two or more layers)")
    if not np.any(arr[-1] != 0.0):
        raise ZeroTopLayer("all coefficients of the top stencil layer are zero")
    return Stencil(_frozen(arr))


@dataclass(frozen=True)
class Apex:
    """Column ``(x_beta, y_beta)`` of the apex; its z-coordinate is always ``m``."""

    x_beta: int
    y_beta: int


def make_apex(stencil: Stencil, x_beta: int, y_beta: int) -> Apex:
    if not (0 <= x_beta <= stencil.bx and 0 <= y_beta <= stencil.by):
        raise OutOfRange(
            f"apex ({x_beta}, {y_beta}) outside stencil extents "
            f"[0, {stencil.bx}] x [0, {stencil.by}]"
        )
    return Apex(int(x_beta), int(y_beta))


@dataclass(frozen=True)
class DomainSpec:
    Bx: int
    By: int
    z_max: int

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.Bx + 1, self.By + 1, self.z_max + 1)


def check_extents(domain: DomainSpec, stencil: Stencil) -> None:
    if domain.z_max < 0:
        raise IncompatibleExtents(f"z_max must be nonnegative, got {domain.z_max}")
    if not (stencil.bx < domain.Bx and stencil.by < domain.By):
        raise IncompatibleExtents(
            f"stencil extents (bx={stencil.bx}, by={stencil.by}) must be strictly "
            f"smaller than domain extents (Bx={domain.Bx}, By={domain.By})"
        )


def anchor_shape(domain: DomainSpec, stencil: Stencil) -> tuple[int, int, int]:
    """Number of equation anchors along x, y and z."""
    return (
        domain.Bx - stencil.bx + 1,
        domain.By - stencil.by + 1,
        max(domain.z_max - stencil.m + 1, 0),
    )


def unknown_cells(domain: DomainSpec, stencil: Stencil, apex: Apex) -> np.ndarray:
    """Boolean ``[x, y, z]`` mask of the cells that must be computed."""
    nx, ny, _ = anchor_shape(domain, stencil)
    mask = np.zeros(domain.shape, dtype=bool)
    mask[apex.x_beta:apex.x_beta + nx, apex.y_beta:apex.y_beta + ny, stencil.m:] = True
    return mask


@dataclass
class Field:
    """Grid values indexed ``[x, y, z]`` with a mask of which are known."""

    values: np.ndarray
    known_mask: np.ndarray

    def copy(self) -> Field:
        return Field(self.values.copy(), self.known_mask.copy())

    @property
    def complete(self) -> bool:
        return bool(self.known_mask.all())

    def __getitem__(self, xyz) -> float:
        return float(self.values[xyz])


@dataclass(frozen=True)
class CauchyProblem:
    stencil: Stencil
    apex: Apex
    domain: DomainSpec
    initial: Field
    rhs_g: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        check_extents(self.domain, self.stencil)
        if self.initial.values.shape != self.domain.shape:
            raise ShapeMismatch(
                f"initial field has shape {self.initial.values.shape}, "
                f"domain requires {self.domain.shape}"
            )
        expected = anchor_shape(self.domain, self.stencil)
        if self.rhs_g.shape != expected:
            raise ShapeMismatch(f"rhs_g has shape {self.rhs_g.shape}, expected {expected}")
        unknown = unknown_cells(self.domain, self.stencil, self.apex)
        known = self.initial.known_mask
        if np.any(~known & ~unknown):
            x, y, z = np.argwhere(~known & ~unknown)[0]
            raise LCellMissing(f"initial-data cell ({x}, {y}, {z}) has no value")
        if np.any(known & unknown):
            x, y, z = np.argwhere(known & unknown)[0]
            raise UnknownCellGiven(f"cell ({x}, {y}, {z}) is computed by the solver but was given")
        if not np.all(np.isfinite(self.initial.values[known])):
            raise ShapeMismatch("initial data contains non-finite values")

    @property
    def unknown_mask(self) -> np.ndarray:
        return ~self.initial.known_mask


def make_problem(stencil: Stencil, apex: Apex, domain: DomainSpec, values, rhs_g=None) -> CauchyProblem:
    """Build a problem from a full ``[x, y, z]`` value grid.

    Entries on the cells to be computed are ignored (they become unknown);
    every other entry is taken as initial data.  ``rhs_g`` defaults to zero.
    """
    check_extents(domain, stencil)
    values = np.array(values, dtype=np.float64)
    if values.shape != domain.shape:
        raise ShapeMismatch(f"values have shape {values.shape}, domain requires {domain.shape}")
    unknown = unknown_cells(domain, stencil, apex)
    values[unknown] = 0.0
    if rhs_g is None:
        rhs_g = np.zeros(anchor_shape(domain, stencil))
    else:
        rhs_g = np.array(rhs_g, dtype=np.float64)
    return CauchyProblem(stencil, apex, domain, Field(values, ~unknown), _frozen(rhs_g))


def char_poly_eval(stencil: Stencil, s: float, w: float, v: float) -> float:
    """Evaluate ``sum c[a1,a2,a3] s**a1 w**a2 v**a3``."""
    c = stencil.coeffs
    ps = np.power(float(s), np.arange(c.shape[2]))
    pw = np.power(float(w), np.arange(c.shape[1]))
    pv = np.power(float(v), np.arange(c.shape[0]))
    return float(np.einsum("kji,i,j,k->", c, ps, pw, pv))


def apply_operator(stencil: Stencil, values: np.ndarray) -> np.ndarray:
    """Apply the difference operator at every anchor where it fits.

    ``values`` is an ``[x, y, z]`` grid; the result is indexed ``[x0, y0, z0]``.
    """
    c = stencil.coeffs
    nx = values.shape[0] - stencil.bx
    ny = values.shape[1] - stencil.by
    nz = values.shape[2] - stencil.m
    out = np.zeros((nx, ny, max(nz, 0)))
    if nz <= 0:
        return out
    for a3 in range(stencil.m + 1):
        for a2 in range(stencil.by + 1):
            for a1 in range(stencil.bx + 1):
                if c[a3, a2, a1] != 0.0:
                    out += c[a3, a2, a1] * values[a1:a1 + nx, a2:a2 + ny, a3:a3 + nz]
    return out


def to_matrix_coords(d) -> tuple[int, int, int]:
    """Cartesian ``(x, y, z)`` -> 1-based ``(row, column, layer)``."""
    d1, d2, d3 = (int(v) for v in d)
    if min(d1, d2, d3) < 0:
        raise NegativeCoordinate(f"Cartesian coordinates must be nonnegative, got {tuple(d)}")
    return (d2 + 1, d1 + 1, d3 + 1)


def from_matrix_coords(mcoord) -> tuple[int, int, int]:
    m1, m2, m3 = (int(v) for v in mcoord)
    if min(m1, m2, m3) < 1:
        raise OutOfRange(f"matrix coordinates are 1-based, got {tuple(mcoord)}")
    return (m2 - 1, m1 - 1, m3 - 1)
