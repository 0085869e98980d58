from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, List, Mapping, Sequence, Tuple, Union

from ..errors import IndexOutOfRange, MapNotSimplicial, MissingVertex, ShapeMismatch
from .complexes import (
    ProductComplex,
    SimplicialComplex,
    Simplex,
    Vertex,
    categorical_product,
    interval,
)

Assignment = Union[Mapping[Vertex, Vertex], Callable[[Vertex], Vertex]]


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    """Vertex map between two complexes, stored densely by domain vertex id."""

    domain: SimplicialComplex
    codomain: SimplicialComplex
    images: Tuple[int, ...]

    def __call__(self, v: Vertex) -> Vertex:
        return self.codomain.vertex(self.images[self.domain.index(v)])

    def image_ids(self, sigma: Sequence[int]) -> frozenset:
        return frozenset(self.images[v] for v in sigma)

    def as_dict(self) -> dict:
        return {v: self.codomain.vertex(self.images[k]) for k, v in enumerate(self.domain.vertices)}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (
            _same_universe(self.domain, other.domain)
            and _same_universe(self.codomain, other.codomain)
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash((self.domain.vertices, self.codomain.vertices, self.images))


def _same_universe(a: SimplicialComplex, b: SimplicialComplex) -> bool:
    return a is b or a.vertices == b.vertices


def _resolve(domain: SimplicialComplex, codomain: SimplicialComplex, assignment: Assignment) -> Tuple[int, ...]:
    out = []
    for v in domain.vertices:
        if callable(assignment) and not isinstance(assignment, Mapping):
            w = assignment(v)
        else:
            if v not in assignment:
                raise MissingVertex(f"no image for {v!r}")
            w = assignment[v]
        out.append(codomain.index(w))
    return tuple(out)


def violations(f: SimplicialMap) -> Iterator[Simplex]:
    for sigma in f.domain.maximal_simplices():
        if not f.codomain.contains_ids(f.image_ids(sigma)):
            yield sigma


def validate(f: SimplicialMap) -> List[Tuple[Vertex, ...]]:
    """Violating maximal domain simplices, as vertex tuples; empty when ``f`` is simplicial."""
    return [tuple(f.domain.vertex(v) for v in sigma) for sigma in violations(f)]


def simplicial_map(
    domain: SimplicialComplex,
    codomain: SimplicialComplex,
    assignment: Assignment,
    check: bool = True,
) -> SimplicialMap:
    f = SimplicialMap(domain, codomain, _resolve(domain, codomain, assignment))
    if check:
        bad = validate(f)
        if bad:
            raise MapNotSimplicial(bad)
    return f


def _unchecked(domain: SimplicialComplex, codomain: SimplicialComplex, images: Sequence[int]) -> SimplicialMap:
    return SimplicialMap(domain, codomain, tuple(images))


def identity(X: SimplicialComplex) -> SimplicialMap:
    return _unchecked(X, X, range(len(X)))


def constant_map(domain: SimplicialComplex, codomain: SimplicialComplex, value: Vertex) -> SimplicialMap:
    return _unchecked(domain, codomain, [codomain.index(value)] * len(domain))


def is_contiguous(f: SimplicialMap, g: SimplicialMap) -> bool:
    if not (_same_universe(f.domain, g.domain) and _same_universe(f.codomain, g.codomain)):
        raise ShapeMismatch("contiguity needs a shared domain and codomain")
    X = f.codomain
    for sigma in f.domain.maximal_simplices():
        if not X.contains_ids(f.image_ids(sigma) | g.image_ids(sigma)):
            return False
    return True


# Extensions and translations


def alpha(i: int, m: int) -> SimplicialMap:
    """Collapse I_{m+1} onto I_m by merging s = i and s = i+1."""
    if not 0 <= i <= m:
        raise IndexOutOfRange(f"alpha index {i} outside 0..{m}")
    return _unchecked(interval(m + 1), interval(m), [s if s <= i else s - 1 for s in range(m + 2)])


def alpha_seq(indices: Sequence[int], m: int) -> SimplicialMap:
    """alpha_{i_1} o ... o alpha_{i_r}: I_{m+r} -> I_m, where alpha_{i_t} maps I_{m+t} to I_{m+t-1}."""
    r = len(indices)
    for t, i in enumerate(indices, start=1):
        if not 0 <= i <= m + t - 1:
            raise IndexOutOfRange(f"index {i} at position {t} outside 0..{m + t - 1}")
    images = []
    for s in range(m + r + 1):
        for i in reversed(indices):
            if s > i:
                s -= 1
        images.append(s)
    return _unchecked(interval(m + r), interval(m), images)


def alpha_power(i: int, r: int, m: int) -> SimplicialMap:
    """alpha_i^r: repeat vertex i of I_m r extra times."""
    return alpha_seq([i] * r, m)


@dataclass(frozen=True)
class Translation:
    p: int
    q: int

    def __call__(self, v: Tuple[int, int]) -> Tuple[int, int]:
        return v[0] - self.p, v[1] - self.q

    def inverse(self) -> "Translation":
        return Translation(-self.p, -self.q)


def translate(p: int, q: int) -> Translation:
    return Translation(p, q)


# Composition calculus


def compose(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    """g o f."""
    if not _same_universe(f.codomain, g.domain):
        raise ShapeMismatch("codomain of f differs from domain of g")
    return _unchecked(f.domain, g.codomain, [g.images[w] for w in f.images])


def pair_map(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """(f, g): v -> (f(v), g(v)) into the categorical product of the codomains."""
    if not _same_universe(f.domain, g.domain):
        raise ShapeMismatch("pairing needs a shared domain")
    target = categorical_product(f.codomain, g.codomain)
    return _unchecked(f.domain, target, [target.pair_id(a, b) for a, b in zip(f.images, g.images)])


def product_map(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """f x g between categorical products."""
    source = categorical_product(f.domain, g.domain)
    target = categorical_product(f.codomain, g.codomain)
    width = len(g.domain)
    images = []
    for vid in range(len(source)):
        a, b = divmod(vid, width)
        images.append(target.pair_id(f.images[a], g.images[b]))
    return _unchecked(source, target, images)


def projection(P: SimplicialComplex, side: int) -> SimplicialMap:
    if not isinstance(P, ProductComplex):
        raise ShapeMismatch("projection needs a product complex")
    if side not in (1, 2):
        raise IndexOutOfRange("side must be 1 or 2")
    target = P.left if side == 1 else P.right
    return _unchecked(P, target, [P.project_id(v, side) for v in range(len(P))])

