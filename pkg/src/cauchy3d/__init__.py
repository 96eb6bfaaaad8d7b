"""Cauchy problem for three-dimensional linear difference equations with
constant coefficients, solved layer by layer on a parallelepiped."""

from .assembly import UnknownRegion, assemble_rhs, assemble_T, unknown_region
from .core import (
    Apex,
    CauchyProblem,
    DomainSpec,
    Field,
    Stencil,
    apply_operator,
    char_poly_eval,
    from_matrix_coords,
    make_apex,
    make_problem,
    make_stencil,
    to_matrix_coords,
)
from .errors import CauchyError, InputError, MissingData, NotSolvable, Singular, SolveError
from .io import ProblemFile, dump_problem, load_document, parse_document, parse_problem
from .linsolve import LuFactorization, is_strictly_row_dominant, lu_factor, lu_solve
from .oracle import GlobalSystem, build_global_system, oracle_solve
from .solvability import SolvabilityReport, check_solvability
from .sweep import SweepResult, residual, solve_at_point, solve_layer, sweep

__version__ = "0.1.0"
