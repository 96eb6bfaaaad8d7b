"""Layer-by-layer solution of the Cauchy problem."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .assembly import assemble_rhs, assemble_T, unknown_region, unpack
from .core import CauchyProblem, Field, apply_operator
from .errors import MissingData, NotSolvable, OutOfRange
from .linsolve import LuFactorization, lu_factor, lu_solve
from .solvability import check_solvability

log = logging.getLogger(__name__)

RESIDUAL_RTOL = 1e-9


@dataclass
class SweepResult:
    field: Field
    value_at_A: float
    layers_solved: int
    max_residual: float
    tolerance: float

    @property
    def within_tolerance(self) -> bool:
        return self.max_residual <= self.tolerance


def solve_layer(problem: CauchyProblem, field: Field, k: int, lu: LuFactorization) -> Field:
    """Fill the computed cells of layer ``k`` in place and return ``field``."""
    region = unknown_region(problem.domain, problem.stencil, problem.apex)
    b = assemble_rhs(problem, field, k)
    u = unpack(lu_solve(lu, b), region.nx, region.ny)
    xs = slice(region.x_lo, region.x_hi + 1)
    ys = slice(region.y_lo, region.y_hi + 1)
    field.values[xs, ys, k] = u
    field.known_mask[xs, ys, k] = True
    return field


def _residual(problem: CauchyProblem, values: np.ndarray, z_top: int) -> float:
    """Max equation defect over anchors whose stencil stays at or below ``z_top``."""
    n_layers = z_top - problem.stencil.m + 1
    if n_layers <= 0:
        return 0.0
    lhs = apply_operator(problem.stencil, values[:, :, :z_top + 1])
    return float(np.abs(lhs - problem.rhs_g[:, :, :n_layers]).max())


def residual(problem: CauchyProblem, field: Field) -> float:
    """Largest ``|P f - g|`` over all equation anchors of a completed field."""
    if not field.complete:
        raise MissingData("residual needs a fully known field")
    return _residual(problem, field.values, problem.domain.z_max)


def residual_tolerance(problem: CauchyProblem, field: Field) -> float:
    c_sum = float(np.abs(problem.stencil.coeffs).sum())
    f_max = float(np.abs(field.values[field.known_mask]).max(initial=0.0))
    g_max = float(np.abs(problem.rhs_g).max(initial=0.0))
    return RESIDUAL_RTOL * (1.0 + f_max * c_sum + g_max)


def factor_layer_matrix(problem: CauchyProblem, force: bool = False) -> LuFactorization:
    """Check solvability (unless ``force``) and factor the layer matrix."""
    report = check_solvability(problem.stencil, problem.apex)
    if report.apex_magnitude == 0.0:
        raise NotSolvable("apex coefficient is zero")
    if not report.satisfied and not force:
        raise NotSolvable(
            f"apex magnitude {report.apex_magnitude:g} does not exceed the sum "
            f"{report.competitor_sum:g} of the other top-layer coefficients"
        )
    return lu_factor(assemble_T(problem.stencil, problem.apex, problem.domain))


def sweep(problem: CauchyProblem, z_top: int | None = None, force: bool = False,
          lu: LuFactorization | None = None) -> Field:
    """Solve layers ``m .. z_top`` (default: all) and return the new field."""
    z_top = problem.domain.z_max if z_top is None else z_top
    if lu is None:
        lu = factor_layer_matrix(problem, force)
    field = problem.initial.copy()
    for k in range(problem.stencil.m, z_top + 1):
        solve_layer(problem, field, k, lu)
    return field


def solve_at_point(problem: CauchyProblem, A, force: bool = False) -> SweepResult:
    """Value of the solution at Cartesian point ``A``.

    Only the layers up to ``A``'s own are solved.  A point carrying initial
    data is answered directly.
    """
    x, y, z = (int(v) for v in A)
    Bx, By, z_max = problem.domain.Bx, problem.domain.By, problem.domain.z_max
    if not (0 <= x <= Bx and 0 <= y <= By and 0 <= z <= z_max):
        raise OutOfRange(f"point ({x}, {y}, {z}) outside [0, {Bx}] x [0, {By}] x [0, {z_max}]")
    initial = problem.initial
    if initial.known_mask[x, y, z]:
        return SweepResult(initial.copy(), float(initial.values[x, y, z]), 0, 0.0,
                           residual_tolerance(problem, initial))
    field = sweep(problem, z_top=z, force=force)
    m = problem.stencil.m
    max_res = _residual(problem, field.values, z)
    tol = residual_tolerance(problem, field)
    log.debug("solved layers %d..%d, residual %.3e (tolerance %.3e)", m, z, max_res, tol)
    return SweepResult(field, float(field.values[x, y, z]), z - m + 1, max_res, tol)
