import numpy as np
import pytest

from cauchy3d import build_global_system, oracle_solve, residual, sweep
from cauchy3d.errors import CapExceeded
from cauchy3d.sweep import residual_tolerance

from problems import (
    WORKED_TRUE_LAYERS,
    global_structure_ok,
    interior,
    random_problem,
    worked_document,
    with_data,
)


def test_worked_example_layers():
    p = worked_document().problem
    field = oracle_solve(p)
    assert field.complete
    for k, expected in WORKED_TRUE_LAYERS.items():
        np.testing.assert_allclose(interior(field.values, k), expected, atol=1e-12)


def test_homogeneous():
    p = worked_document().problem
    zero = with_data(p, values=np.zeros(p.domain.shape))
    np.testing.assert_array_equal(oracle_solve(zero).values, 0.0)


def test_cap():
    p = worked_document().problem
    with pytest.raises(CapExceeded):
        oracle_solve(p, cap=23)
    oracle_solve(p, cap=24)


def test_index_map_is_bijection():
    p = worked_document().problem
    g = build_global_system(p)
    assert len(g.cells) == len(g.index_map) == 24
    assert all(g.index_map[c] == i for i, c in enumerate(g.cells))
    assert all(not p.initial.known_mask[c] for c in g.cells)


def test_worked_example_structure():
    assert global_structure_ok(worked_document().problem)


@pytest.mark.parametrize("seed", range(50))
def test_agrees_with_sweep(seed):
    p = random_problem(np.random.default_rng(7000 + seed))
    assert global_structure_ok(p)
    ref = oracle_solve(p)
    assert np.abs(sweep(p).values - ref.values).max() <= 1e-9
    assert residual(p, ref) <= residual_tolerance(p, ref)
