"""Built-in data: the octahedral 2-sphere and the two reference spheres over it."""
from __future__ import annotations

from itertools import product
from typing import List, Tuple

from .complexes import ExplicitComplex, build_explicit

OCTAHEDRON_VERTICES = ("e1", "-e1", "e2", "-e2", "e3", "-e3")
OCTAHEDRON_BASEPOINT = "-e1"


def _axis(k: int, sign: int) -> str:
    return f"e{k}" if sign > 0 else f"-e{k}"


def octahedron_faces() -> List[Tuple[str, str, str]]:
    """The 8 triangles, each ordered counter-clockwise seen from outside."""
    faces = []
    for s1, s2, s3 in product((1, -1), repeat=3):
        a, b, c = _axis(1, s1), _axis(2, s2), _axis(3, s3)
        faces.append((a, b, c) if s1 * s2 * s3 > 0 else (a, c, b))
    return faces


def octahedron_complex() -> ExplicitComplex:
    return build_explicit(octahedron_faces(), vertices=list(OCTAHEDRON_VERTICES))


# Rows listed top (j = n) first, as in the .fs format.
FIG3_ROWS = (
    "-e1 -e1 -e1 -e1 -e1 -e1",
    "-e1 -e3  e2  e3  e2 -e1",
    "-e1  e2  e2  e1  e2 -e1",
    "-e1  e3  e3  e3  e3 -e1",
    "-e1 -e1 -e1 -e1 -e1 -e1",
)

FIG10_ROWS = (
    "-e1 -e1 -e1 -e1 -e1",
    "-e1  e2  e2  e3 -e1",
    "-e1 -e3  e1  e3 -e1",
    "-e1 -e3 -e2 -e2 -e1",
    "-e1 -e1 -e1 -e1 -e1",
)


def _rows(text_rows) -> List[List[str]]:
    return [row.split() for row in text_rows]


def fig3_rows() -> List[List[str]]:
    """A 5x4 sphere that misses -e2, hence trivial."""
    return _rows(FIG3_ROWS)


def fig10_rows() -> List[List[str]]:
    """A 4x4 sphere wrapping once around the octahedron."""
    return _rows(FIG10_ROWS)


EXAMPLES = ("octahedron", "fig3", "fig10")


def example_sphere(name: str):
    """The built-in ``fig3`` or ``fig10`` sphere over the octahedron."""
    from .complexes import octahedron
    from .spheres import from_grid

    rows = {"fig3": fig3_rows, "fig10": fig10_rows}
    if name not in rows:
        raise KeyError(name)
    return from_grid(octahedron(), rows[name](), top_first=True)
