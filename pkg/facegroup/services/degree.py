"""The degree pairing: signed count of triangles landing on one oriented face.

A face sphere is read on the Cartesian triangulation I_{m,n} (every triangle
there is a simplex of I_m x I_n). Each triangle, listed counter-clockwise,
contributes +1 when its labels run around the chosen face in the face's own
orientation, -1 when they run the other way, and 0 otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from ..errors import NonOrientableTarget, UnknownVertex
from .catalog import OCTAHEDRON_VERTICES, octahedron_faces
from .complexes import SimplicialComplex, Vertex
from .spheres import FaceSphere

Triple = Tuple[int, int, int]


def _canonical(t: Triple) -> Triple:
    """Rotation of t starting at its smallest id."""
    k = t.index(min(t))
    return t[k:] + t[:k]


@dataclass(frozen=True)
class Orientation:
    """A coherent orientation: every 2-simplex listed once as a cyclic triple of ids."""

    complex: SimplicialComplex
    faces: Tuple[Triple, ...]

    def oriented(self, ids: Iterable[int]) -> Triple:
        key = frozenset(ids)
        for face in self.faces:
            if frozenset(face) == key:
                return face
        raise NonOrientableTarget(f"{sorted(key)} is not an oriented face")

    def sign(self, triple: Triple) -> int:
        """+1 if ``triple`` agrees with the stored orientation of its face, -1 if it is reversed."""
        face = self.oriented(triple)
        return 1 if _canonical(tuple(triple)) == _canonical(face) else -1


def check_orientation(X: SimplicialComplex, faces: Sequence[Sequence[Vertex]]) -> Orientation:
    """Validate an oriented face list against a closed 2-dimensional complex.

    Every listed face must be a 2-simplex of X, every 2-simplex must be listed,
    and every edge must be crossed once in each direction.
    """
    triples = []
    for face in faces:
        if len(face) != 3:
            raise NonOrientableTarget(f"face {tuple(face)!r} is not a triangle")
        ids = tuple(X.index(v) for v in face)
        if len(set(ids)) != 3 or not X.contains_ids(frozenset(ids)):
            raise NonOrientableTarget(f"face {tuple(face)!r} is not a simplex")
        triples.append(ids)

    listed = {frozenset(t) for t in triples}
    if len(listed) != len(triples):
        raise NonOrientableTarget("a face is listed twice")
    for sigma in X.maximal_simplices():
        if len(sigma) > 3:
            raise NonOrientableTarget("complex has simplices above dimension 2")
        if len(sigma) < 3:
            raise NonOrientableTarget("complex has a maximal simplex below dimension 2")
        if frozenset(sigma) not in listed:
            raise NonOrientableTarget(f"face {X.display(sigma[0])},{X.display(sigma[1])},{X.display(sigma[2])} not oriented")

    directed: Dict[Tuple[int, int], int] = {}
    for a, b, c in triples:
        for edge in ((a, b), (b, c), (c, a)):
            directed[edge] = directed.get(edge, 0) + 1
    for (a, b), count in directed.items():
        if count > 1 or directed.get((b, a), 0) != 1:
            raise NonOrientableTarget(
                f"edge {X.display(a)}-{X.display(b)} is not crossed once each way",
                edge=(X.vertex(a), X.vertex(b)),
            )
    return Orientation(X, tuple(triples))


def default_orientation(X: SimplicialComplex) -> Orientation:
    """The outward orientation when X is the octahedron (any vertex order); nothing is inferred otherwise."""
    if set(X.vertices) != set(OCTAHEDRON_VERTICES):
        raise NonOrientableTarget("no orientation supplied for this complex")
    return check_orientation(X, octahedron_faces())


def degree(
    f: FaceSphere,
    face: Sequence[Vertex],
    orientation: Optional[Orientation] = None,
) -> int:
    X = f.complex
    if orientation is None:
        orientation = default_orientation(X)
    elif orientation.complex.vertices != X.vertices:
        raise NonOrientableTarget("orientation belongs to a different complex")
    if len(face) != 3:
        raise NonOrientableTarget("the pairing face must have three vertices")
    try:
        ids = tuple(X.index(v) for v in face)
    except UnknownVertex:
        ids = tuple(X.lookup(str(v)) for v in face)
    # the requested face must be one of the oriented faces; its own cyclic order sets the sign
    orientation.oriented(ids)
    a, b, c = ids
    L = f.labels
    # corners of each unit square: (i, j), (i+1, j), (i+1, j+1), (i, j+1)
    sw, se, ne, nw = L[:-1, :-1], L[:-1, 1:], L[1:, 1:], L[1:, :-1]
    total = 0
    for x, y, z in ((sw, se, ne), (sw, ne, nw)):
        total += _cyclic_hits(x, y, z, (a, b, c)) - _cyclic_hits(x, y, z, (a, c, b))
    return total


def _cyclic_hits(x: np.ndarray, y: np.ndarray, z: np.ndarray, t: Triple) -> int:
    """Triangles whose corners read t in one of its three rotations."""
    a, b, c = t
    hit = ((x == a) & (y == b) & (z == c)) | ((x == b) & (y == c) & (z == a)) | ((x == c) & (y == a) & (z == b))
    return int(np.count_nonzero(hit))


def degree_report(f: FaceSphere, orientation: Optional[Orientation] = None) -> Dict[Triple, int]:
    """Degree against every oriented face; on a coherent orientation all entries agree."""
    if orientation is None:
        orientation = default_orientation(f.complex)
    X = f.complex
    return {face: degree(f, [X.vertex(v) for v in face], orientation) for face in orientation.faces}
