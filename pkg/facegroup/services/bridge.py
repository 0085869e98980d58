"""Maps out of the Cartesian triangulations and the bridge back to face spheres.

A ``GridMap`` labels I_{m,n}: only its triangles have to land on simplices,
so the anti-diagonal of a unit square is unconstrained. The doubling map
gamma followed by the local adjustment ``d_construction`` turns such a map into
a face sphere on I_{2m+1} x I_{2n+1}.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import IndexOutOfRange, MapNotSimplicial, NotSpiderPair, ShapeMismatch, SimplexViolation, TargetMismatch
from .complexes import PointedComplex, Vertex, cartesian_grid, grid_product
from .maps import SimplicialMap, _unchecked, alpha_power, alpha_seq, compose, is_contiguous, product_map, validate
from .moves import CertificateBuilder, MoveCertificate, replay, trivial_extension_path
from .spheres import (
    LABEL_DTYPE,
    FaceSphere,
    LabelGrid,
    Labels,
    as_labels,
    first_border_violation,
    from_ids,
    is_contiguous as spheres_contiguous,
    same_target,
)

logger = logging.getLogger(__name__)

Point = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class GridMap(LabelGrid):
    target: PointedComplex
    m: int
    n: int
    labels: np.ndarray

    def triangles(self) -> Iterator[Tuple[Point, Point, Point]]:
        return cartesian_grid(self.m, self.n).triangles()

    def image(self, tri: Sequence[Point]) -> frozenset:
        return frozenset(int(self.labels[j, i]) for i, j in tri)

    def __repr__(self) -> str:
        return f"<GridMap {self.m}x{self.n}>"


def _triangles_at(m: int, n: int, i: int, j: int) -> List[Tuple[Point, Point, Point]]:
    out = []
    for jj in (j - 1, j):
        for ii in (i - 1, i):
            if 0 <= ii < m and 0 <= jj < n:
                lower = ((ii, jj), (ii + 1, jj), (ii + 1, jj + 1))
                upper = ((ii, jj), (ii + 1, jj + 1), (ii, jj + 1))
                out += [t for t in (lower, upper) if (i, j) in t]
    return out


def first_grid_violation(target: PointedComplex, m: int, n: int, grid: Labels) -> Optional[Exception]:
    try:
        labels = as_labels(grid)
    except ShapeMismatch:
        return ShapeMismatch(f"grid is not {(m + 1)}x{(n + 1)}")
    err = first_border_violation(target, m, n, labels)
    if err is not None:
        return err
    X = target.complex
    rows = labels.tolist()
    for j in range(n):
        lo, hi = rows[j], rows[j + 1]
        for i in range(m):
            lower = frozenset((lo[i], lo[i + 1], hi[i + 1]))
            upper = frozenset((lo[i], hi[i + 1], hi[i]))
            if not (X.contains_ids(lower) and X.contains_ids(upper)):
                return SimplexViolation(i, j)
    return None


def grid_map_from_ids(target: PointedComplex, grid: Labels, check: bool = True) -> GridMap:
    labels = as_labels(grid)
    n, m = labels.shape[0] - 1, labels.shape[1] - 1
    if check:
        err = first_grid_violation(target, m, n, labels)
        if err is not None:
            raise err
    return GridMap(target, m, n, labels)


def grid_map_from_grid(target: PointedComplex, grid: Sequence[Sequence[Vertex]], top_first: bool = False) -> GridMap:
    rows = list(grid)
    if top_first:
        rows.reverse()
    X = target.complex
    return grid_map_from_ids(target, [[X.index(v) for v in row] for row in rows])


def restrict(f: FaceSphere) -> GridMap:
    """f o E: the same labels read on the Cartesian triangulation."""
    return GridMap(f.target, f.m, f.n, f.labels)


def grid_candidates(g: GridMap, i: int, j: int) -> List[int]:
    """Labels the interior vertex (i, j) may take with all incident triangles still simplices."""
    X = g.complex
    ok = None
    for tri in _triangles_at(g.m, g.n, i, j):
        rest = frozenset(int(g.labels[jj, ii]) for ii, jj in tri if (ii, jj) != (i, j))
        allowed = X.joinable(rest)
        ok = allowed if ok is None else ok & allowed
    return sorted(ok or ())


def with_label(g: GridMap, i: int, j: int, v: int) -> GridMap:
    """``g`` with vertex (i, j) relabelled ``v``; not validated."""
    out = g.labels.copy()
    out[j, i] = v
    return GridMap(g.target, g.m, g.n, out)


def random_grid_map(rng: random.Random, target: PointedComplex, m: int, n: int, steps: int) -> GridMap:
    """Start from the constant map and apply ``steps`` random legal single-vertex changes."""
    g = GridMap(target, m, n, np.full((n + 1, m + 1), target.base_id, dtype=LABEL_DTYPE))
    if m < 2 or n < 2:
        return g
    for _ in range(steps):
        i, j = rng.randint(1, m - 1), rng.randint(1, n - 1)
        options = grid_candidates(g, i, j)
        if options:
            g = with_label(g, i, j, rng.choice(options))
    return g


def grid_maps_contiguous(g: GridMap, h: GridMap) -> bool:
    if not same_target(g.target, h.target):
        raise TargetMismatch("grid maps live over different pointed complexes")
    if (g.m, g.n) != (h.m, h.n):
        raise ShapeMismatch(f"{g.m}x{g.n} vs {h.m}x{h.n}")
    X = g.complex
    return all(X.contains_ids(g.image(t) | h.image(t)) for t in g.triangles())


# The combinatorial maps


def _checked(domain, codomain, images) -> SimplicialMap:
    f = _unchecked(domain, codomain, images)
    bad = validate(f)
    if bad:
        raise MapNotSimplicial(bad)
    return f


def e_map(m: int, n: int) -> SimplicialMap:
    """E: I_{m,n} -> I_m x I_n, the identity on grid indices."""
    if m < 1 or n < 1:
        raise IndexOutOfRange("E needs m, n >= 1")
    dom = cartesian_grid(m, n)
    return _checked(dom, grid_product(m, n), range(len(dom)))


def _collapse(m: int, n: int, scale: int, big_m: int, big_n: int) -> SimplicialMap:
    dom, cod = cartesian_grid(big_m, big_n), cartesian_grid(m, n)
    images = [cod.vid(a // scale, b // scale) for a, b in dom.vertices]
    return _checked(dom, cod, images)


def rho_k(m: int, n: int, k: int) -> SimplicialMap:
    """rho_k: I_{km,kn} -> I_{m,n}, (ki+r, kj+s) -> (i, j)."""
    if k < 2:
        raise IndexOutOfRange(f"rho_k needs k >= 2, got {k}")
    return _collapse(m, n, k, k * m, k * n)


def gamma(m: int, n: int) -> SimplicialMap:
    """gamma: I_{2m+1,2n+1} -> I_{m,n}, (2k+e1, 2l+e2) -> (k, l)."""
    if m < 1 or n < 1:
        raise IndexOutOfRange("gamma needs m, n >= 1")
    return _collapse(m, n, 2, 2 * m + 1, 2 * n + 1)


def compose_gamma(g: GridMap) -> GridMap:
    """g o gamma: every row and every column of g doubled."""
    doubled = np.repeat(np.repeat(g.labels, 2, axis=0), 2, axis=1)
    return GridMap(g.target, 2 * g.m + 1, 2 * g.n + 1, doubled)


def d_construction(f: GridMap) -> FaceSphere:
    """D_f on I_{2m+1} x I_{2n+1}.

    D_f(i, j) = (f o gamma)(i, j - 1) when i = 2k+1, j = 2l with 1 <= k <= m-2
    and 2 <= l <= n-1; D_f = f o gamma everywhere else. Those are exactly the
    vertices where a doubled unit square of f would otherwise contain both ends
    of f's unconstrained anti-diagonal.
    """
    fg = compose_gamma(f).labels
    out = fg.copy()
    cols = np.arange(3, 2 * f.m - 2, 2)
    rows = np.arange(4, 2 * f.n - 1, 2)
    out[np.ix_(rows, cols)] = fg[np.ix_(rows - 1, cols)]
    return from_ids(f.target, out)


def check_digital_f(f: GridMap) -> bool:
    """f o gamma and D_f o E are contiguous on every triangle of I_{2m+1,2n+1}."""
    return grid_maps_contiguous(compose_gamma(f), restrict(d_construction(f)))


def _reindexed(g: FaceSphere, xs: Sequence[int], ys: Sequence[int]) -> FaceSphere:
    """g o (alpha_xs x alpha_ys)."""
    cols = np.asarray(alpha_seq(xs, g.m).images)
    rows = np.asarray(alpha_seq(ys, g.n).images)
    return FaceSphere(g.target, g.m + len(xs), g.n + len(ys), g.labels[np.ix_(rows, cols)])


def e_then_d_stages(g: FaceSphere) -> List[FaceSphere]:
    """The contiguity chain from g o gamma to the trivial extension of g by (m+1, n+1).

    g o gamma is g o (alpha_I x alpha_J) with I = (0, 2, ..., 2m) and
    J = (0, 2, ..., 2n). Each index of I, then of J, moves one unit at a time
    towards m (resp. n), and neighbouring stages are contiguous.
    """
    xs = list(range(0, 2 * g.m + 1, 2))
    ys = list(range(0, 2 * g.n + 1, 2))
    stages = [_reindexed(g, xs, ys)]
    for x in _toward(xs, g.m):
        stages.append(_reindexed(g, x, ys))
        xs = x
    for y in _toward(ys, g.n):
        stages.append(_reindexed(g, xs, y))
    return stages


def check_e_then_d(g: FaceSphere) -> MoveCertificate:
    """Certificate from D_{g o E} down to g.

    D_{g o E} is one contiguity away from g o gamma. Every link of
    ``e_then_d_stages`` becomes spider moves, and the deletions of the trivial
    extension finish at g.
    """
    stages = e_then_d_stages(g)
    b = CertificateBuilder(d_construction(restrict(g)))
    for stage in stages:
        b.spiders_to(stage)
    tail = trivial_extension_path(b.current, g)
    if tail is None:
        raise ShapeMismatch("chain did not end at a trivial extension")
    b.extend(tail)
    cert = b.finish(g)
    replay(cert)
    logger.debug("[bridge] D o E to g for %dx%d: %d stages, %d moves", g.m, g.n, len(stages), len(cert))
    return cert


def lift_spider(g: GridMap, h: GridMap) -> bool:
    """For grid maps one interior vertex change apart, whether D_g and D_h are contiguous."""
    if not same_target(g.target, h.target) or (g.m, g.n) != (h.m, h.n):
        raise NotSpiderPair("grid maps differ in target or size")
    diff = np.argwhere(g.labels != h.labels)
    if len(diff) > 1:
        raise NotSpiderPair(f"{len(diff)} entries differ")
    if len(diff):
        j, i = (int(x) for x in diff[0])
        if not (0 < i < g.m and 0 < j < g.n):
            raise NotSpiderPair(f"vertex {(i, j)} is on the boundary")
        if not grid_maps_contiguous(g, h):
            raise NotSpiderPair(f"grid maps are not contiguous at {(i, j)}")
    return spheres_contiguous(d_construction(g), d_construction(h))


@dataclass(frozen=True)
class ChainReport:
    m: int
    n: int
    k: int
    exact_equality: bool
    steps: int
    failed_step: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.exact_equality and self.failed_step is None


def _block_indices(m: int, k: int) -> List[int]:
    """Indices I with alpha_I(s) = s // k on I_{km}."""
    out: List[int] = []
    for c in range(m):
        out += [c * k] * (k - 1)
    return out


def _toward(indices: List[int], target: int) -> Iterator[List[int]]:
    cur = list(indices)
    for t in range(len(cur)):
        while cur[t] != target:
            cur[t] += 1 if cur[t] < target else -1
            yield list(cur)


def check_collapse_chain(m: int, n: int, k: int) -> ChainReport:
    """E o rho_k against (alpha_m^{m(k-1)} x alpha_n^{n(k-1)}) o E.

    First E o rho_k is compared with (alpha_I x alpha_J) o E for the block
    index lists I and J; then each index is stepped towards m (resp. n) one
    unit at a time, and every step is checked to be a contiguity.
    """
    if k < 2:
        raise IndexOutOfRange(f"k must be >= 2, got {k}")
    E_small = e_map(m, n)
    E_big = e_map(k * m, k * n)
    lhs = compose(E_small, rho_k(m, n, k))
    xs, ys = _block_indices(m, k), _block_indices(n, k)

    def through(ix: List[int], iy: List[int]) -> SimplicialMap:
        return compose(product_map(alpha_seq(ix, m), alpha_seq(iy, n)), E_big)

    current = through(xs, ys)
    exact = current == lhs
    steps = 0
    chain = [(x, ys) for x in _toward(xs, m)]
    last_x = chain[-1][0] if chain else xs
    chain += [(last_x, y) for y in _toward(ys, n)]
    for ix, iy in chain:
        nxt = through(ix, iy)
        steps += 1
        if not is_contiguous(current, nxt):
            return ChainReport(m, n, k, exact, steps, failed_step=steps)
        current = nxt
    end = compose(product_map(alpha_power(m, m * (k - 1), m), alpha_power(n, n * (k - 1), n)), E_big)
    if current != end:
        return ChainReport(m, n, k, exact, steps, failed_step=steps)
    return ChainReport(m, n, k, exact, steps)
