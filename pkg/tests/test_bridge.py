import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facegroup.errors import IndexOutOfRange, NotSpiderPair, SimplexViolation
from facegroup.services.bridge import (
    GridMap,
    check_collapse_chain,
    check_digital_f,
    check_e_then_d,
    compose_gamma,
    d_construction,
    e_map,
    e_then_d_stages,
    gamma,
    grid_candidates,
    grid_map_from_grid,
    grid_maps_contiguous,
    lift_spider,
    random_grid_map,
    restrict,
    rho_k,
    with_label,
)
from facegroup.services.moves import COL_DEL, ROW_DEL, SPIDER, contiguity_chain_certificate, verify
from facegroup.services.spheres import constant, from_grid, is_constant, is_contiguous, trivial_extension
from strategies import grid_maps, spheres

B = "-e1"

# Valid on the Cartesian triangulation; the middle cell's anti-diagonal is {e2, -e2}.
ANTI_DIAGONAL_ROWS = [
    [B, B, B, B],
    [B, "-e2", "e3", B],
    [B, "e3", "e2", B],
    [B, B, B, B],
]


def _has_bad_anti_diagonal(g: GridMap) -> bool:
    X = g.complex
    for j in range(g.n):
        for i in range(g.m):
            if not X.contains_ids(frozenset((g.grid[j + 1][i], g.grid[j][i + 1]))):
                return True
    return False


def test_e_rho_gamma_on_vertices():
    assert e_map(2, 3)((1, 2)) == (1, 2)
    assert rho_k(2, 2, 2)((3, 1)) == (1, 0)
    assert rho_k(2, 3, 3)((5, 8)) == (1, 2)
    assert gamma(2, 3)((5, 7)) == (2, 3)
    assert gamma(2, 3)((2, 3)) == (1, 1)
    assert len(gamma(2, 3).domain) == 6 * 8


def test_map_size_limits():
    with pytest.raises(IndexOutOfRange):
        e_map(0, 2)
    with pytest.raises(IndexOutOfRange):
        rho_k(2, 2, 1)
    with pytest.raises(IndexOutOfRange):
        gamma(1, 0)


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_collapse_maps_are_simplicial(m, n):
    # construction validates every simplex of the domain
    gamma(m, n)
    rho_k(m, n, 2)
    rho_k(m, n, 3)


def test_compose_gamma_doubles_rows_and_columns(fig3):
    g = compose_gamma(restrict(fig3))
    assert (g.m, g.n) == (2 * fig3.m + 1, 2 * fig3.n + 1)
    assert np.array_equal(g.labels[::2, ::2], fig3.labels)
    assert np.array_equal(g.labels[1::2, 1::2], fig3.labels)


def test_anti_diagonal_is_unconstrained(oct):
    g = grid_map_from_grid(oct, ANTI_DIAGONAL_ROWS, top_first=True)
    assert _has_bad_anti_diagonal(g)
    with pytest.raises(SimplexViolation) as exc:
        from_grid(oct, ANTI_DIAGONAL_ROWS, top_first=True)
    assert exc.value.cell == (1, 1)

    D = d_construction(g)
    assert D.size == (7, 7)
    assert check_digital_f(g)


def test_d_construction_moves_the_odd_columns_on_even_rows(oct):
    g = grid_map_from_grid(oct, ANTI_DIAGONAL_ROWS, top_first=True)
    g = GridMap(oct, 5, 5, np.pad(g.labels, 1, constant_values=oct.base_id))
    fg = compose_gamma(g).labels
    D = d_construction(g).labels
    changed = {(int(i), int(j)) for j, i in np.argwhere(D != fg)}
    assert changed
    assert all(i % 2 == 1 and j % 2 == 0 and 3 <= i <= 7 and 4 <= j <= 8 for i, j in changed)
    for i, j in changed:
        assert D[j, i] == fg[j - 1, i]


def test_random_grid_maps_hit_bad_anti_diagonals(oct):
    hits = sum(_has_bad_anti_diagonal(random_grid_map(random.Random(s), oct, 5, 5, 60)) for s in range(200))
    assert hits > 0


def test_d_construction_of_a_constant(oct):
    g = restrict(constant(oct, 4, 3))
    D = d_construction(g)
    assert D.size == (9, 7)
    assert is_constant(D)


@settings(max_examples=60, deadline=None)
@given(grid_maps(max_size=2))
def test_small_maps_need_no_adjustment(g):
    assert np.array_equal(d_construction(g).labels, compose_gamma(g).labels)


@settings(max_examples=300, deadline=None)
@given(grid_maps())
def test_d_construction_is_a_sphere_contiguous_to_the_doubling(g):
    D = d_construction(g)
    assert D.size == (2 * g.m + 1, 2 * g.n + 1)
    assert check_digital_f(g)


def test_e_then_d_on_reference_spheres(fig3, fig10):
    cert = check_e_then_d(fig3)
    assert cert.start.size == (11, 9)
    assert cert.end == fig3
    assert cert.kinds() <= {SPIDER, ROW_DEL, COL_DEL}
    assert check_e_then_d(fig10).end == fig10


def test_e_then_d_stages_run_from_doubling_to_trivial_extension(fig3):
    stages = e_then_d_stages(fig3)
    first, last = stages[0], stages[-1]
    assert np.array_equal(first.labels, compose_gamma(restrict(fig3)).labels)
    assert last == trivial_extension(fig3, fig3.m + 1, fig3.n + 1)
    steps_x = sum(abs(2 * t - fig3.m) for t in range(fig3.m + 1))
    steps_y = sum(abs(2 * t - fig3.n) for t in range(fig3.n + 1))
    assert len(stages) == 1 + steps_x + steps_y
    assert all(s.size == (2 * fig3.m + 1, 2 * fig3.n + 1) for s in stages)


def test_e_then_d_stages_are_a_contiguity_chain(fig3, fig10):
    for f in (fig3, fig10):
        stages = e_then_d_stages(f)
        assert all(is_contiguous(a, b) for a, b in zip(stages, stages[1:]))
        assert verify(contiguity_chain_certificate(stages))


def test_e_then_d_column_steps_reuse_the_doubled_columns(fig3):
    stages = e_then_d_stages(fig3)
    steps_x = sum(abs(2 * t - fig3.m) for t in range(fig3.m + 1))
    columns = {tuple(c) for c in stages[0].labels.T.tolist()}
    for s in stages[1 : steps_x + 1]:
        assert {tuple(c) for c in s.labels.T.tolist()} <= columns
    assert any(not np.array_equal(a.labels, b.labels) for a, b in zip(stages, stages[1:]))


@settings(max_examples=50, deadline=None)
@given(spheres(min_size=1, max_size=5))
def test_e_then_d_on_random_spheres(f):
    stages = e_then_d_stages(f)
    assert stages[-1] == trivial_extension(f, f.m + 1, f.n + 1)
    assert check_e_then_d(f).end == f


def test_lift_spider_from_the_constant(oct):
    g = restrict(constant(oct, 4, 4))
    checked = 0
    for i in range(1, 4):
        for j in range(1, 4):
            for v in grid_candidates(g, i, j):
                h = with_label(g, i, j, v)
                assert lift_spider(g, h)
                assert lift_spider(h, g)
                checked += 1
    assert checked == 9 * 5


@settings(max_examples=80, deadline=None)
@given(grid_maps(min_size=4, max_size=4, max_steps=25), st.data())
def test_lift_spider_on_random_maps(g, data):
    i, j = data.draw(st.integers(1, 3)), data.draw(st.integers(1, 3))
    for v in grid_candidates(g, i, j):
        h = with_label(g, i, j, v)
        if grid_maps_contiguous(g, h):
            assert lift_spider(g, h)
        else:
            with pytest.raises(NotSpiderPair):
                lift_spider(g, h)


def test_lift_spider_rejects_non_pairs(oct):
    g = restrict(constant(oct, 4, 4))
    X = oct.complex
    two = with_label(with_label(g, 1, 1, X.lookup("e2")), 2, 2, X.lookup("e2"))
    with pytest.raises(NotSpiderPair):
        lift_spider(g, two)

    with pytest.raises(NotSpiderPair):
        lift_spider(g, with_label(g, 1, 1, X.lookup("e1")))

    with pytest.raises(NotSpiderPair):
        lift_spider(g, restrict(constant(oct, 3, 4)))


@pytest.mark.parametrize("at", [(0, 2), (4, 1), (2, 0), (3, 4)])
def test_lift_spider_rejects_a_boundary_change(oct, at):
    g = restrict(constant(oct, 4, 4))
    h = with_label(g, *at, oct.complex.lookup("e2"))
    with pytest.raises(NotSpiderPair) as exc:
        lift_spider(g, h)
    assert "boundary" in exc.value.detail
    with pytest.raises(NotSpiderPair):
        lift_spider(h, g)


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_collapse_chain(m, n, k):
    report = check_collapse_chain(m, n, k)
    assert report.exact_equality
    assert report.failed_step is None
    assert report.ok
    assert report.steps > 0


def test_collapse_chain_needs_k_at_least_two():
    with pytest.raises(IndexOutOfRange):
        check_collapse_chain(2, 2, 1)
