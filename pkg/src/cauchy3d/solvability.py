"""Sufficient condition for unique solvability of the layer systems."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Apex, Stencil


@dataclass(frozen=True)
class SolvabilityReport:
    apex_magnitude: float
    competitor_sum: float
    margin: float
    satisfied: bool


def check_solvability(stencil: Stencil, apex: Apex) -> SolvabilityReport:
    """Compare the apex coefficient with the rest of the top stencil layer.

    The condition holds when ``|c[apex]|`` strictly exceeds the sum of the
    absolute values of all other top-layer coefficients.  Lower layers play
    no part.
    """
    top = np.abs(stencil.top)
    apex_magnitude = float(top[apex.y_beta, apex.x_beta])
    others = top.copy()
    others[apex.y_beta, apex.x_beta] = 0.0
    competitor_sum = float(others.sum())
    margin = apex_magnitude - competitor_sum
    return SolvabilityReport(apex_magnitude, competitor_sum, margin, margin > 0.0)
