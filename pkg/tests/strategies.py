"""Hypothesis strategies: spheres as spider walks from constants, legal move walks, grid maps."""
from hypothesis import strategies as st

from facegroup.services.bridge import GridMap, grid_candidates, with_label
from facegroup.services.complexes import octahedron
from facegroup.services.moves import apply_unchecked, legal_moves, spider, spider_candidates
from facegroup.services.spheres import FaceSphere, constant


def _interior(draw, m: int, n: int):
    return draw(st.integers(1, m - 1)), draw(st.integers(1, n - 1))


@st.composite
def spider_walks(draw, f: FaceSphere, max_steps: int = 40):
    if f.m < 2 or f.n < 2:
        return f
    for _ in range(draw(st.integers(0, max_steps))):
        i, j = _interior(draw, f.m, f.n)
        v = draw(st.sampled_from(sorted(spider_candidates(f, i, j))))
        f = apply_unchecked(f, spider(i, j, v))
    return f


@st.composite
def spheres(draw, target=None, min_size: int = 0, max_size: int = 6, max_steps: int = 40):
    target = target or octahedron()
    m = draw(st.integers(min_size, max_size))
    n = draw(st.integers(min_size, max_size))
    return draw(spider_walks(constant(target, m, n), max_steps))


@st.composite
def sphere_pairs(draw, target=None, max_size: int = 4):
    target = target or octahedron()
    return draw(spheres(target, max_size=max_size)), draw(spheres(target, max_size=max_size))


@st.composite
def move_walks(draw, f: FaceSphere, max_steps: int = 60, max_size: int = 8):
    """Spheres along a walk of legal moves, sizes kept below ``max_size``."""
    out = []
    for _ in range(draw(st.integers(1, max_steps))):
        moves = [
            mv
            for mv in legal_moves(f)
            if not (mv.kind == "rowdup" and f.n >= max_size) and not (mv.kind == "coldup" and f.m >= max_size)
        ]
        f = apply_unchecked(f, draw(st.sampled_from(moves)))
        out.append(f)
    return out


@st.composite
def grid_maps(draw, target=None, min_size: int = 1, max_size: int = 5, max_steps: int = 30):
    """Grid maps reached from the constant map by legal single-vertex relabellings."""
    target = target or octahedron()
    m = draw(st.integers(min_size, max_size))
    n = draw(st.integers(min_size, max_size))
    g = GridMap(target, m, n, constant(target, m, n).labels)
    if m < 2 or n < 2:
        return g
    for _ in range(draw(st.integers(0, max_steps))):
        i, j = _interior(draw, m, n)
        options = grid_candidates(g, i, j)
        if options:
            g = with_label(g, i, j, draw(st.sampled_from(options)))
    return g
