"""Abstract simplicial complexes.

Every complex exposes the same small surface: an ordered vertex universe,
integer ids for those vertices, membership for vertex sets and an iterator over
maximal simplices. Grid-shaped complexes and products answer membership from a
formula and are never materialised.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product as _cartesian
from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from ..errors import EmptyComplex, UnknownVertex

Vertex = Hashable
Simplex = Tuple[int, ...]

# per-complex memo sizes
SIMPLEX_CACHE_SIZE = 1 << 16
JOIN_CACHE_SIZE = 1 << 14


def display_name(v: Vertex) -> str:
    if isinstance(v, tuple):
        return "(" + ",".join(display_name(x) for x in v) + ")"
    return str(v)


class SimplicialComplex:
    kind = "abstract"

    def __init__(self, vertices: Sequence[Vertex]) -> None:
        self.vertices: Tuple[Vertex, ...] = tuple(vertices)
        self._index: Dict[Vertex, int] = {v: k for k, v in enumerate(self.vertices)}
        self._simplex_cache = lru_cache(maxsize=SIMPLEX_CACHE_SIZE)(self._contains)
        self._join_cache = lru_cache(maxsize=JOIN_CACHE_SIZE)(self._joinable)

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {len(self.vertices)} vertices>"

    def has_vertex(self, v: Vertex) -> bool:
        return v in self._index

    def index(self, v: Vertex) -> int:
        try:
            return self._index[v]
        except (KeyError, TypeError):
            raise UnknownVertex(v) from None

    def vertex(self, vid: int) -> Vertex:
        return self.vertices[vid]

    def display(self, vid: int) -> str:
        return display_name(self.vertices[vid])

    def lookup(self, name: str) -> int:
        """Resolve a display name (as written in text formats) to a vertex id."""
        names = getattr(self, "_names", None)
        if names is None:
            names = {display_name(v): k for k, v in enumerate(self.vertices)}
            self._names = names
        try:
            return names[name]
        except KeyError:
            raise UnknownVertex(name) from None

    def simplex(self, vertices: Iterable[Vertex]) -> Simplex:
        return tuple(sorted({self.index(v) for v in vertices}))

    def is_simplex(self, vertices: Iterable[Vertex]) -> bool:
        ids = frozenset(self.index(v) for v in vertices)
        return self.contains_ids(ids)

    def contains_ids(self, ids: FrozenSet[int]) -> bool:
        if len(ids) <= 1:
            return len(ids) == 1
        return self._simplex_cache(ids)

    def joinable(self, ids: FrozenSet[int]) -> FrozenSet[int]:
        """Vertices v such that ids u {v} is a simplex."""
        return self._join_cache(ids)

    def _joinable(self, ids: FrozenSet[int]) -> FrozenSet[int]:
        return frozenset(v for v in range(len(self.vertices)) if self.contains_ids(ids | {v}))

    def _contains(self, ids: FrozenSet[int]) -> bool:
        raise NotImplementedError

    def maximal_simplices(self) -> Iterator[Simplex]:
        raise NotImplementedError

    def faces(self, dim: int) -> List[Simplex]:
        """All simplices of the given dimension, from the closure of the maximal ones."""
        out = set()
        for sigma in self.maximal_simplices():
            if len(sigma) > dim:
                for face in combinations(sigma, dim + 1):
                    out.add(face)
        return sorted(out)


class ExplicitComplex(SimplicialComplex):
    kind = "explicit"

    def __init__(self, vertices: Sequence[Vertex], maximal: Sequence[FrozenSet[int]]) -> None:
        super().__init__(vertices)
        self.maximal: Tuple[FrozenSet[int], ...] = tuple(maximal)
        self._star: Dict[int, List[FrozenSet[int]]] = {}
        for sigma in self.maximal:
            for v in sigma:
                self._star.setdefault(v, []).append(sigma)

    def _contains(self, ids: FrozenSet[int]) -> bool:
        first = next(iter(ids))
        return any(ids <= sigma for sigma in self._star.get(first, ()))

    def maximal_simplices(self) -> Iterator[Simplex]:
        for sigma in self.maximal:
            yield tuple(sorted(sigma))


class IntervalComplex(SimplicialComplex):
    kind = "interval"

    def __init__(self, m: int) -> None:
        super().__init__(range(m + 1))
        self.m = m

    def _contains(self, ids: FrozenSet[int]) -> bool:
        return len(ids) == 2 and max(ids) - min(ids) == 1

    def maximal_simplices(self) -> Iterator[Simplex]:
        if self.m == 0:
            yield (0,)
        for i in range(self.m):
            yield (i, i + 1)


class _GridShaped(SimplicialComplex):
    """Vertices (i, j) with id i*(n+1)+j."""

    def __init__(self, m: int, n: int) -> None:
        super().__init__([(i, j) for i in range(m + 1) for j in range(n + 1)])
        self.m = m
        self.n = n

    def vid(self, i: int, j: int) -> int:
        return i * (self.n + 1) + j

    def coords(self, vid: int) -> Tuple[int, int]:
        return divmod(vid, self.n + 1)

    def _degenerate_maximal(self) -> Iterator[Simplex]:
        m, n = self.m, self.n
        if m == 0 and n == 0:
            yield (0,)
        elif m == 0:
            for j in range(n):
                yield (self.vid(0, j), self.vid(0, j + 1))
        else:
            for i in range(m):
                yield (self.vid(i, 0), self.vid(i + 1, 0))


class GridProductComplex(_GridShaped):
    """The categorical product I_m x I_n."""

    kind = "grid_product"

    def _contains(self, ids: FrozenSet[int]) -> bool:
        xs = {vid // (self.n + 1) for vid in ids}
        ys = {vid % (self.n + 1) for vid in ids}
        return max(xs) - min(xs) <= 1 and max(ys) - min(ys) <= 1

    def maximal_simplices(self) -> Iterator[Simplex]:
        if self.m == 0 or self.n == 0:
            yield from self._degenerate_maximal()
            return
        for i in range(self.m):
            for j in range(self.n):
                yield (self.vid(i, j), self.vid(i, j + 1), self.vid(i + 1, j), self.vid(i + 1, j + 1))


class CartesianGridComplex(_GridShaped):
    """The triangulation I_{m,n}: each unit square cut along its bottom-left to top-right diagonal."""

    kind = "cartesian_grid"

    def _contains(self, ids: FrozenSet[int]) -> bool:
        pts = sorted(self.coords(v) for v in ids)
        if len(pts) > 3:
            return False
        i0 = min(p[0] for p in pts)
        j0 = min(p[1] for p in pts)
        lower = {(i0, j0), (i0 + 1, j0), (i0 + 1, j0 + 1)}
        upper = {(i0, j0), (i0, j0 + 1), (i0 + 1, j0 + 1)}
        s = set(pts)
        return s <= lower or s <= upper

    def triangles(self) -> Iterator[Tuple[Tuple[int, int], Tuple[int, int], Tuple[int, int]]]:
        """Counter-clockwise vertex triples, lower then upper triangle of each cell."""
        for j in range(self.n):
            for i in range(self.m):
                yield (i, j), (i + 1, j), (i + 1, j + 1)
                yield (i, j), (i + 1, j + 1), (i, j + 1)

    def maximal_simplices(self) -> Iterator[Simplex]:
        if self.m == 0 or self.n == 0:
            yield from self._degenerate_maximal()
            return
        for tri in self.triangles():
            yield tuple(sorted(self.vid(i, j) for i, j in tri))


class ProductComplex(SimplicialComplex):
    """Categorical product; membership via the two projections."""

    kind = "product"

    def __init__(self, left: SimplicialComplex, right: SimplicialComplex) -> None:
        super().__init__([(a, b) for a in left.vertices for b in right.vertices])
        self.left = left
        self.right = right
        self._width = len(right.vertices)

    def pair_id(self, left_id: int, right_id: int) -> int:
        return left_id * self._width + right_id

    def project_id(self, vid: int, side: int) -> int:
        return vid // self._width if side == 1 else vid % self._width

    def _contains(self, ids: FrozenSet[int]) -> bool:
        lefts = frozenset(v // self._width for v in ids)
        rights = frozenset(v % self._width for v in ids)
        return self.left.contains_ids(lefts) and self.right.contains_ids(rights)

    def maximal_simplices(self) -> Iterator[Simplex]:
        for sigma in self.left.maximal_simplices():
            for tau in self.right.maximal_simplices():
                yield tuple(sorted(self.pair_id(a, b) for a, b in _cartesian(sigma, tau)))


@dataclass(frozen=True)
class PointedComplex:
    complex: SimplicialComplex
    basepoint: Vertex

    def __post_init__(self) -> None:
        self.complex.index(self.basepoint)

    @property
    def base_id(self) -> int:
        return self.complex.index(self.basepoint)


def build_explicit(maximal: Iterable[Iterable[Vertex]], vertices: Optional[Sequence[Vertex]] = None) -> ExplicitComplex:
    """Build an explicit complex from a list of simplices, dropping dominated ones.

    Vertex order is ``vertices`` when given, otherwise first appearance.
    """
    simplices = [list(s) for s in maximal]
    if not simplices:
        raise EmptyComplex("no simplices given")
    order: List[Vertex] = list(vertices) if vertices is not None else []
    seen = set(order)
    for s in simplices:
        if not s:
            raise EmptyComplex("empty simplex in input")
        for v in s:
            if v not in seen:
                if vertices is not None:
                    raise UnknownVertex(v)
                seen.add(v)
                order.append(v)
    index = {v: k for k, v in enumerate(order)}
    sets = sorted({frozenset(index[v] for v in s) for s in simplices}, key=lambda x: (-len(x), sorted(x)))
    kept: List[FrozenSet[int]] = []
    for s in sets:
        if not any(s <= k for k in kept):
            kept.append(s)
    covered = set().union(*kept)
    if len(covered) != len(order):
        # isolated vertices supplied through ``vertices`` become 0-simplices
        kept.extend(frozenset([k]) for k in range(len(order)) if k not in covered)
    kept.sort(key=sorted)
    return ExplicitComplex(order, kept)


def interval(m: int) -> IntervalComplex:
    if m < 0:
        raise EmptyComplex("interval length must be >= 0")
    return IntervalComplex(m)


def grid_product(m: int, n: int) -> GridProductComplex:
    if m < 0 or n < 0:
        raise EmptyComplex("grid sizes must be >= 0")
    return GridProductComplex(m, n)


def cartesian_grid(m: int, n: int) -> CartesianGridComplex:
    if m < 0 or n < 0:
        raise EmptyComplex("grid sizes must be >= 0")
    return CartesianGridComplex(m, n)


def categorical_product(left: SimplicialComplex, right: SimplicialComplex) -> ProductComplex:
    return ProductComplex(left, right)


def boundary_contains(m: int, n: int, v: Tuple[int, int]) -> bool:
    i, j = v
    if not (0 <= i <= m and 0 <= j <= n):
        raise UnknownVertex(display_name(v))
    return i in (0, m) or j in (0, n)


def clique_complex(vertices: Sequence[Vertex], edges: Iterable[Tuple[Vertex, Vertex]]) -> ExplicitComplex:
    """Flag complex of a graph: simplices are the cliques."""
    graph = nx.Graph()
    graph.add_nodes_from(vertices)
    known = set(vertices)
    for a, b in edges:
        if a not in known:
            raise UnknownVertex(a)
        if b not in known:
            raise UnknownVertex(b)
        if a != b:
            graph.add_edge(a, b)
    cliques = list(nx.find_cliques(graph))
    return build_explicit(cliques, vertices=list(vertices))


def grid_graph_edges(m: int, n: int) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """Edges of the graph whose clique complex is I_m x I_n (king-move adjacency)."""
    out = []
    for i in range(m + 1):
        for j in range(n + 1):
            for di, dj in ((1, 0), (0, 1), (1, 1), (1, -1)):
                a, b = i + di, j + dj
                if 0 <= a <= m and 0 <= b <= n:
                    out.append(((i, j), (a, b)))
    return out


def octahedron() -> PointedComplex:
    from .catalog import octahedron_complex

    return PointedComplex(octahedron_complex(), "-e1")
