"""Face spheres: label grids on I_m x I_n pinned to the basepoint along the boundary.

Labels are vertex ids of the target complex held in an ``(n+1, m+1)`` integer
array: ``labels[j, i]`` is the label of grid vertex (i, j) and row j = 0 is the
bottom row. ``grid`` is the same data as nested tuples, for scalar loops.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import (
    BasepointMismatch,
    BoundaryViolation,
    IndexOutOfRange,
    PatchBoundaryMismatch,
    ShapeMismatch,
    SimplexViolation,
    TargetMismatch,
)
from .complexes import PointedComplex, SimplicialComplex, Vertex, categorical_product, grid_product
from .maps import SimplicialMap, _unchecked, projection

LABEL_DTYPE = np.int32

Grid = Tuple[Tuple[int, ...], ...]
Labels = Union[np.ndarray, Sequence[Sequence[int]]]


def as_labels(grid: Labels) -> np.ndarray:
    """Read-only 2-D label array; ragged or empty input is a ShapeMismatch."""
    try:
        arr = np.array(grid, dtype=LABEL_DTYPE)
    except (TypeError, ValueError):
        raise ShapeMismatch("rows have different lengths") from None
    if arr.ndim != 2 or arr.size == 0:
        raise ShapeMismatch("empty grid")
    arr.setflags(write=False)
    return arr


def border_mask(shape: Tuple[int, int]) -> np.ndarray:
    mask = np.ones(shape, dtype=bool)
    mask[1:-1, 1:-1] = False
    return mask


class LabelGrid:
    """Shared behaviour of labelled grids over a pointed complex."""

    target: PointedComplex
    m: int
    n: int
    labels: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", as_labels(self.labels))

    @property
    def complex(self) -> SimplicialComplex:
        return self.target.complex

    @property
    def base_id(self) -> int:
        return self.target.base_id

    @cached_property
    def grid(self) -> Grid:
        return tuple(map(tuple, self.labels.tolist()))

    def rows_top_first(self) -> List[List[str]]:
        d = self.complex.display
        return [[d(x) for x in row] for row in self.labels[::-1].tolist()]

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return same_target(self.target, other.target) and np.array_equal(self.labels, other.labels)

    def __hash__(self) -> int:
        return hash((self.m, self.n, self.labels.tobytes()))


@dataclass(frozen=True, eq=False)
class FaceSphere(LabelGrid):
    target: PointedComplex
    m: int
    n: int
    labels: np.ndarray

    @property
    def size(self) -> Tuple[int, int]:
        return self.m, self.n

    def label(self, i: int, j: int) -> int:
        return int(self.labels[j, i])

    def vertex(self, i: int, j: int) -> Vertex:
        return self.complex.vertex(self.label(i, j))

    def name(self, i: int, j: int) -> str:
        return self.complex.display(self.label(i, j))

    def cell(self, i: int, j: int) -> frozenset:
        return frozenset(self.labels[j : j + 2, i : i + 2].ravel().tolist())

    def weight(self) -> int:
        """Number of entries away from the basepoint."""
        return int(np.count_nonzero(self.labels != self.base_id))

    def __repr__(self) -> str:
        return f"<FaceSphere {self.m}x{self.n}>"


def same_target(a: PointedComplex, b: PointedComplex) -> bool:
    if a.basepoint != b.basepoint:
        return False
    if a.complex is b.complex:
        return True
    X, Y = a.complex, b.complex
    return X.kind == Y.kind and X.vertices == Y.vertices and list(X.maximal_simplices()) == list(Y.maximal_simplices())


def _require_same_target(f: FaceSphere, g: FaceSphere) -> None:
    if not same_target(f.target, g.target):
        raise TargetMismatch("spheres live over different pointed complexes")


def first_border_violation(target: PointedComplex, m: int, n: int, labels: np.ndarray) -> Optional[Exception]:
    """Shape and boundary checks shared by spheres and grid maps."""
    if labels.shape != (n + 1, m + 1):
        return ShapeMismatch(f"grid is not {(m + 1)}x{(n + 1)}")
    bad = np.argwhere(border_mask(labels.shape) & (labels != target.base_id))
    if len(bad):
        j, i = bad[0]
        return BoundaryViolation(int(i), int(j))
    return None


def first_violation(target: PointedComplex, m: int, n: int, grid: Labels) -> Optional[Exception]:
    """First failure in raster order (bottom to top, left to right), boundary checks first."""
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
            if not X.contains_ids(frozenset((lo[i], lo[i + 1], hi[i], hi[i + 1]))):
                return SimplexViolation(i, j)
    return None


def from_ids(target: PointedComplex, grid: Labels, check: bool = True) -> FaceSphere:
    labels = as_labels(grid)
    n, m = labels.shape[0] - 1, labels.shape[1] - 1
    if check:
        err = first_violation(target, m, n, labels)
        if err is not None:
            raise err
    return FaceSphere(target, m, n, labels)


def from_grid(target: PointedComplex, grid: Sequence[Sequence[Vertex]], top_first: bool = False) -> FaceSphere:
    """Validated sphere from vertex labels; ``grid[j][i]`` unless ``top_first``."""
    rows = list(grid)
    if top_first:
        rows.reverse()
    X = target.complex
    return from_ids(target, [[X.index(v) for v in row] for row in rows])


def constant(target: PointedComplex, m: int, n: int) -> FaceSphere:
    if m < 0 or n < 0:
        raise IndexOutOfRange("sizes must be >= 0")
    return FaceSphere(target, m, n, np.full((n + 1, m + 1), target.base_id, dtype=LABEL_DTYPE))


def is_constant(f: FaceSphere) -> bool:
    return f.weight() == 0


def _repeat(labels: np.ndarray, at: int, extra: int, axis: int) -> np.ndarray:
    counts = np.ones(labels.shape[axis], dtype=np.intp)
    counts[at] += extra
    return np.repeat(labels, counts, axis=axis)


def extend(f: FaceSphere, i: int, r: int, j: int, s: int) -> FaceSphere:
    """f o (alpha_i^r x alpha_j^s): column i repeated r extra times, row j repeated s extra times."""
    if not (0 <= i <= f.m and 0 <= j <= f.n):
        raise IndexOutOfRange(f"({i},{j}) outside the {f.m}x{f.n} grid")
    if r < 0 or s < 0:
        raise IndexOutOfRange("repeat counts must be >= 0")
    labels = _repeat(_repeat(f.labels, i, r, axis=1), j, s, axis=0)
    return FaceSphere(f.target, f.m + r, f.n + s, labels)


def trivial_extension(f: FaceSphere, r: int, s: int) -> FaceSphere:
    return extend(f, f.m, r, f.n, s)


def product(f: FaceSphere, g: FaceSphere) -> FaceSphere:
    """f . g: f in the lower-left block, g translated to the upper-right block."""
    _require_same_target(f, g)
    out = np.full((f.n + g.n + 2, f.m + g.m + 2), f.base_id, dtype=LABEL_DTYPE)
    out[: f.n + 1, : f.m + 1] = f.labels
    out[f.n + 1 :, f.m + 1 :] = g.labels
    return from_ids(f.target, out)


def inverse(f: FaceSphere) -> FaceSphere:
    """Horizontal flip: f~(i, j) = f(m - i, j)."""
    return FaceSphere(f.target, f.m, f.n, np.fliplr(f.labels))


def block(f: FaceSphere, rect: Tuple[int, int, int, int]) -> np.ndarray:
    """Labels on [p, q] x [r, s], bottom row first."""
    p, q, r, s = rect
    if not (0 <= p <= q <= f.m and 0 <= r <= s <= f.n):
        raise IndexOutOfRange(f"rectangle {rect} outside the {f.m}x{f.n} grid")
    return f.labels[r : s + 1, p : q + 1]


def patch(f: FaceSphere, rect: Tuple[int, int, int, int], g: Union[FaceSphere, Labels]) -> FaceSphere:
    """Replace the labels on ``rect`` by ``g``; ``g`` must agree with ``f`` along the rectangle's edge."""
    p, q, r, s = rect
    if isinstance(g, FaceSphere):
        _require_same_target(f, g)
        cells = g.labels
    else:
        cells = as_labels(g)
    old = block(f, rect)
    if cells.shape != old.shape:
        raise ShapeMismatch(f"block does not fit rectangle {rect}")
    bad = np.argwhere(border_mask(old.shape) & (cells != old))
    if len(bad):
        jj, ii = bad[0]
        raise PatchBoundaryMismatch(p + int(ii), r + int(jj))
    out = f.labels.copy()
    out[r : s + 1, p : q + 1] = cells
    return from_ids(f.target, out)


def is_contiguous(f: FaceSphere, g: FaceSphere) -> bool:
    """Relative contiguity: f(sigma) u g(sigma) a simplex for every unit 3-simplex sigma."""
    _require_same_target(f, g)
    if f.size != g.size:
        raise ShapeMismatch(f"{f.m}x{f.n} vs {g.m}x{g.n}")
    X = f.complex
    a, b = f.grid, g.grid
    for j in range(f.n):
        for i in range(f.m):
            union = {a[j][i], a[j][i + 1], a[j + 1][i], a[j + 1][i + 1]}
            union.update((b[j][i], b[j][i + 1], b[j + 1][i], b[j + 1][i + 1]))
            if not X.contains_ids(frozenset(union)):
                return False
    return True


def rows_as_edge_loops(f: FaceSphere) -> list:
    from .loops import EdgeLoop

    return [EdgeLoop(f.target, row) for row in f.grid]


# Maps out of and into spheres


def as_map(f: FaceSphere) -> SimplicialMap:
    """The sphere as a simplicial map I_m x I_n -> X."""
    return _unchecked(grid_product(f.m, f.n), f.complex, f.labels.T.ravel().tolist())


def push_forward(f: FaceSphere, phi: SimplicialMap, target: Optional[PointedComplex] = None) -> FaceSphere:
    """phi o f over ``target`` (defaults to phi's codomain pointed at phi(x0))."""
    if phi.domain is not f.complex and phi.domain.vertices != f.complex.vertices:
        raise TargetMismatch("phi is not defined on the sphere's target")
    image_base = phi.codomain.vertex(phi.images[f.base_id])
    if target is None:
        target = PointedComplex(phi.codomain, image_base)
    elif target.basepoint != image_base:
        raise BasepointMismatch(f"phi sends the basepoint to {image_base!r}")
    images = np.asarray(phi.images, dtype=LABEL_DTYPE)
    return from_ids(target, images[f.labels])


def pair_sphere(f1: FaceSphere, f2: FaceSphere) -> FaceSphere:
    """(f1, f2) over X x Y, pointed at (x0, y0)."""
    if f1.size != f2.size:
        raise ShapeMismatch(f"{f1.m}x{f1.n} vs {f2.m}x{f2.n}")
    P = categorical_product(f1.complex, f2.complex)
    target = PointedComplex(P, (f1.target.basepoint, f2.target.basepoint))
    return from_ids(target, f1.labels.astype(np.int64) * len(f2.complex) + f2.labels)


def project(f: FaceSphere, side: int, target: Optional[PointedComplex] = None) -> FaceSphere:
    """p_1 o f or p_2 o f for a sphere over a product."""
    return push_forward(f, projection(f.complex, side), target)
