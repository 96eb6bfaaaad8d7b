import time

import numpy as np
import pytest

from cauchy3d import (
    DomainSpec,
    assemble_T,
    lu_factor,
    make_apex,
    make_problem,
    make_stencil,
    oracle_solve,
    residual,
    solve_at_point,
    solve_layer,
    sweep,
)
from cauchy3d.errors import MissingData, NotSolvable, OutOfRange, Singular
from cauchy3d.sweep import residual_tolerance

from problems import (
    WORKED_TRUE_LAYERS,
    WORKED_TRUE_VALUE,
    interior,
    planted_problem,
    random_problem,
    worked_document,
    with_data,
)


@pytest.fixture
def worked():
    return worked_document().problem


def test_solve_layer_one_and_two(worked):
    lu = lu_factor(assemble_T(worked.stencil, worked.apex, worked.domain))
    field = worked.initial.copy()
    solve_layer(worked, field, 1, lu)
    np.testing.assert_allclose(interior(field.values, 1), WORKED_TRUE_LAYERS[1], atol=1e-12)
    assert field.known_mask[:, :, 1].all() and not field.known_mask[:, :, 2].all()
    solve_layer(worked, field, 2, lu)
    np.testing.assert_allclose(interior(field.values, 2), WORKED_TRUE_LAYERS[2], atol=1e-12)


def test_solve_layer_out_of_order(worked):
    lu = lu_factor(assemble_T(worked.stencil, worked.apex, worked.domain))
    with pytest.raises(MissingData):
        solve_layer(worked, worked.initial.copy(), 3, lu)


def test_full_sweep_worked_example(worked):
    field = sweep(worked)
    assert field.complete
    for k, expected in WORKED_TRUE_LAYERS.items():
        np.testing.assert_allclose(interior(field.values, k), expected, atol=1e-12)
    # frame cells untouched
    known = worked.initial.known_mask
    np.testing.assert_array_equal(field.values[known], worked.initial.values[known])


def test_homogeneous_problem_gives_zero(worked):
    zero = with_data(worked, values=np.zeros(worked.domain.shape))
    field = sweep(zero)
    np.testing.assert_array_equal(field.values, 0.0)


def test_solve_at_point_worked_example(worked):
    t0 = time.perf_counter()
    r = solve_at_point(worked, (2, 1, 4))
    assert time.perf_counter() - t0 < 1.0
    assert r.value_at_A == pytest.approx(WORKED_TRUE_VALUE, abs=1e-12)
    assert r.layers_solved == 4
    assert r.field.complete
    assert r.within_tolerance


def test_point_in_initial_data(worked):
    r = solve_at_point(worked, (0, 0, 3))
    assert r.value_at_A == 3.0
    assert r.layers_solved == 0


def test_point_below_top_solves_only_needed_layers(worked):
    r = solve_at_point(worked, (2, 1, 2))
    assert r.layers_solved == 2
    assert r.value_at_A == pytest.approx(WORKED_TRUE_LAYERS[2][0][1], abs=1e-12)
    assert not r.field.known_mask[2, 1, 3]


def test_point_outside_domain(worked):
    with pytest.raises(OutOfRange):
        solve_at_point(worked, (5, 0, 4))
    with pytest.raises(OutOfRange):
        solve_at_point(worked, (0, 0, 5))


def _problem(top, bottom, apex, B, z_max=2, seed=0):
    s = make_stencil([bottom, top])
    d = DomainSpec(B[0], B[1], z_max)
    vals = np.random.default_rng(seed).uniform(-1, 1, d.shape)
    return make_problem(s, make_apex(s, *apex), d, vals)


def test_not_solvable_without_force():
    p = _problem([[1.0, 2.0]], [[1.0, 1.0]], (0, 0), (3, 1))
    with pytest.raises(NotSolvable):
        solve_at_point(p, (1, 1, 2))
    r = solve_at_point(p, (1, 1, 2), force=True)
    np.testing.assert_allclose(r.field.values, oracle_solve(p).values, atol=1e-9)
    assert r.within_tolerance


def test_zero_apex_is_never_solvable():
    p = _problem([[1.0, 0.0]], [[1.0, 1.0]], (1, 0), (3, 1))
    with pytest.raises(NotSolvable):
        solve_at_point(p, (2, 1, 2), force=True)


def test_force_on_singular_layer_matrix():
    # tridiagonal [1 1 1] of size 2 is singular
    p = _problem([[1.0, 1.0, 1.0]], [[0.0, 0.0, 1.0]], (1, 0), (3, 1))
    with pytest.raises(NotSolvable):
        solve_at_point(p, (1, 0, 2))
    with pytest.raises(Singular):
        solve_at_point(p, (1, 0, 2), force=True)


def test_residual_examples(worked):
    field = sweep(worked)
    assert residual(worked, field) <= residual_tolerance(worked, field)

    bumped = field.copy()
    bumped.values[2, 1, 2] += 1.0
    c = worked.stencil.coeffs
    # anchors touching (2, 1, 2): offsets a = cell - anchor inside the stencil
    touching = [abs(c[a3, a2, a1]) for a3 in range(2) for a2 in range(3) for a1 in range(3)
                if 0 <= 2 - a1 <= 2 and 0 <= 1 - a2 <= 1 and 0 <= 2 - a3 <= 3]
    r = residual(worked, bumped)
    assert r >= min(v for v in touching if v > 0)
    assert r == pytest.approx(max(touching), abs=1e-9)

    zero = with_data(worked, values=np.zeros(worked.domain.shape))
    zf = zero.initial.copy()
    zf.known_mask[:] = True
    assert residual(zero, zf) == 0.0

    with pytest.raises(MissingData):
        residual(worked, worked.initial)


@pytest.mark.parametrize("seed", range(20))
def test_planted_solution_recovered(seed):
    p, f_star = planted_problem(np.random.default_rng(3000 + seed))
    field = sweep(p)
    assert np.abs(field.values - f_star).max() <= 1e-9 * (1 + np.abs(f_star).max())


@pytest.mark.parametrize("seed", range(15))
def test_linearity(seed):
    rng = np.random.default_rng(4000 + seed)
    p1 = random_problem(rng)
    p2 = with_data(p1, rng.uniform(-1, 1, p1.domain.shape), rng.uniform(-1, 1, p1.rhs_g.shape))
    p12 = with_data(p1, p1.initial.values + p2.initial.values, p1.rhs_g + p2.rhs_g)
    f1, f2, f12 = sweep(p1).values, sweep(p2).values, sweep(p12).values
    scale = 1 + np.abs(f12).max()
    assert np.abs(f12 - (f1 + f2)).max() <= 1e-9 * scale


@pytest.mark.parametrize("seed", range(15))
def test_scaling(seed):
    rng = np.random.default_rng(5000 + seed)
    p = random_problem(rng)
    lam = rng.choice([-1, 1]) * 10 ** rng.uniform(-3, 3)
    q = make_problem(p.stencil.scaled(lam), p.apex, p.domain, p.initial.values, p.rhs_g * lam)
    a, b = sweep(p).values, sweep(q).values
    assert np.all(np.abs(a - b) <= 1e-12 * np.maximum(np.abs(a), 1.0))


@pytest.mark.parametrize("seed", range(10))
def test_layer_locality(seed):
    rng = np.random.default_rng(6000 + seed)
    p = random_problem(rng, max_z=5)
    m, z_max = p.stencil.m, p.domain.z_max
    if z_max == m:
        pytest.skip("needs at least two solved layers")
    k = int(rng.integers(m, z_max))
    vals = p.initial.values.copy()
    vals[:, :, k + 1:] += rng.normal(size=vals[:, :, k + 1:].shape)
    g = p.rhs_g.copy()
    g[:, :, k - m + 1:] += rng.normal(size=g[:, :, k - m + 1:].shape)
    a = sweep(p).values[:, :, :k + 1]
    b = sweep(with_data(p, vals, g)).values[:, :, :k + 1]
    assert a.tobytes() == b.tobytes()
