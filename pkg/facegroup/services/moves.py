"""Intrinsic moves on face spheres and the certificates built from them.

Moves: duplicate or delete a row or column, and spider moves (rewrite one
interior entry when the four cells around it stay simplices after adding the
new label). Certificates are move lists that replay from one sphere to another.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import DecompositionFailed, IllegalMove, ShapeMismatch
from .complexes import SimplicialComplex
from .spheres import (
    FaceSphere,
    _require_same_target,
    extend,
    inverse,
    is_constant,
    patch,
    product,
)

logger = logging.getLogger(__name__)

ROW_DUP = "rowdup"
ROW_DEL = "rowdel"
COL_DUP = "coldup"
COL_DEL = "coldel"
SPIDER = "spider"
KINDS = (ROW_DUP, ROW_DEL, COL_DUP, COL_DEL, SPIDER)
_RANK = {k: r for r, k in enumerate(KINDS)}


@dataclass(frozen=True)
class Move:
    kind: str
    a: int
    b: int = -1
    label: int = -1

    def sort_key(self) -> Tuple[int, int, int, int]:
        return _RANK[self.kind], self.a, self.b, self.label

    def __lt__(self, other: "Move") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.kind == SPIDER:
            return f"spider {self.a} {self.b} #{self.label}"
        return f"{self.kind} {self.a}"


def row_dup(j: int) -> Move:
    return Move(ROW_DUP, j)


def row_del(j: int) -> Move:
    return Move(ROW_DEL, j)


def col_dup(i: int) -> Move:
    return Move(COL_DUP, i)


def col_del(i: int) -> Move:
    return Move(COL_DEL, i)


def spider(i: int, j: int, label: int) -> Move:
    return Move(SPIDER, i, j, label)


def format_move(mv: Move, X: SimplicialComplex) -> str:
    if mv.kind == SPIDER:
        return f"spider {mv.a} {mv.b} {X.display(mv.label)}"
    return f"{mv.kind} {mv.a}"


@dataclass(frozen=True)
class MoveCertificate:
    start: FaceSphere
    moves: Tuple[Move, ...]
    end: FaceSphere

    def __len__(self) -> int:
        return len(self.moves)

    def kinds(self) -> FrozenSet[str]:
        return frozenset(mv.kind for mv in self.moves)


# Legality


def _cells_around(f: FaceSphere, i: int, j: int) -> Iterator[FrozenSet[int]]:
    lo, mid, hi = f.labels[j - 1 : j + 2, i - 1 : i + 2].tolist()
    for a, b in ((lo, mid), (mid, hi)):
        yield frozenset((a[0], a[1], b[0], b[1]))
        yield frozenset((a[1], a[2], b[1], b[2]))


def spider_candidates(f: FaceSphere, i: int, j: int) -> FrozenSet[int]:
    X = f.complex
    out: Optional[FrozenSet[int]] = None
    for cell in _cells_around(f, i, j):
        ok = X.joinable(cell)
        out = ok if out is None else out & ok
    return out or frozenset()


def _deletable(labels: np.ndarray, axis: int) -> np.ndarray:
    """Rows (axis 0) or columns (axis 1) equal to a neighbour."""
    same = np.all(np.diff(labels, axis=axis) == 0, axis=1 - axis)
    out = np.zeros(labels.shape[axis], dtype=bool)
    out[1:] |= same
    out[:-1] |= same
    return out


def _equal_lines(labels: np.ndarray, a: int, b: int, axis: int) -> bool:
    if not 0 <= b < labels.shape[axis]:
        return False
    return bool(np.array_equal(labels.take(a, axis=axis), labels.take(b, axis=axis)))


def why_illegal(f: FaceSphere, mv: Move) -> Optional[str]:
    m, n = f.m, f.n
    if mv.kind == ROW_DUP:
        return None if 0 <= mv.a <= n else "row index out of range"
    if mv.kind == COL_DUP:
        return None if 0 <= mv.a <= m else "column index out of range"
    if mv.kind == ROW_DEL:
        if not 0 <= mv.a <= n or n == 0:
            return "row index out of range"
        return None if _deletable(f.labels, 0)[mv.a] else "no identical adjacent row"
    if mv.kind == COL_DEL:
        if not 0 <= mv.a <= m or m == 0:
            return "column index out of range"
        return None if _deletable(f.labels, 1)[mv.a] else "no identical adjacent column"
    if mv.kind == SPIDER:
        i, j = mv.a, mv.b
        if not (1 <= i <= m - 1 and 1 <= j <= n - 1):
            return "spider moves only touch interior entries"
        if not 0 <= mv.label < len(f.complex):
            return "unknown label"
        X = f.complex
        for cell in _cells_around(f, i, j):
            if not X.contains_ids(cell | {mv.label}):
                return "a surrounding cell stops being a simplex"
        return None
    return f"unknown move kind {mv.kind!r}"


def is_legal(f: FaceSphere, mv: Move) -> bool:
    return why_illegal(f, mv) is None


def legal_moves(f: FaceSphere) -> List[Move]:
    """All legal moves, ordered rowdup < rowdel < coldup < coldel < spider, then indices, then label."""
    out: List[Move] = [row_dup(j) for j in range(f.n + 1)]
    if f.n > 0:
        out += [row_del(int(j)) for j in np.flatnonzero(_deletable(f.labels, 0))]
    out += [col_dup(i) for i in range(f.m + 1)]
    if f.m > 0:
        out += [col_del(int(i)) for i in np.flatnonzero(_deletable(f.labels, 1))]
    for i in range(1, f.m):
        for j in range(1, f.n):
            out += [spider(i, j, v) for v in sorted(spider_candidates(f, i, j))]
    return out


# Application


def _apply(labels: np.ndarray, mv: Move) -> np.ndarray:
    if mv.kind == ROW_DUP:
        return np.insert(labels, mv.a + 1, labels[mv.a], axis=0)
    if mv.kind == ROW_DEL:
        return np.delete(labels, mv.a, axis=0)
    if mv.kind == COL_DUP:
        return np.insert(labels, mv.a + 1, labels[:, mv.a], axis=1)
    if mv.kind == COL_DEL:
        return np.delete(labels, mv.a, axis=1)
    out = labels.copy()
    out[mv.b, mv.a] = mv.label
    return out


def _resized(f: FaceSphere, labels: np.ndarray) -> FaceSphere:
    return FaceSphere(f.target, labels.shape[1] - 1, labels.shape[0] - 1, labels)


def apply_unchecked(f: FaceSphere, mv: Move) -> FaceSphere:
    return _resized(f, _apply(f.labels, mv))


def apply_move(f: FaceSphere, mv: Move) -> FaceSphere:
    reason = why_illegal(f, mv)
    if reason is not None:
        raise IllegalMove(str(mv), reason)
    return apply_unchecked(f, mv)


def replay_steps(start: FaceSphere, moves: Iterable[Move]) -> Iterator[FaceSphere]:
    """Yield every intermediate sphere, checking each move as it is applied."""
    cur = start
    yield cur
    for mv in moves:
        cur = apply_move(cur, mv)
        yield cur


def replay(cert: MoveCertificate) -> FaceSphere:
    """Replay a certificate; raises IllegalMove on the first bad step or ShapeMismatch on a wrong end."""
    cur = cert.start
    for cur in replay_steps(cert.start, cert.moves):
        pass
    if not np.array_equal(cur.labels, cert.end.labels):
        raise ShapeMismatch("replay does not reach the certificate's end sphere")
    return cur


def verify(cert: MoveCertificate) -> bool:
    try:
        replay(cert)
    except (IllegalMove, ShapeMismatch):
        return False
    return True


def inverse_move(before: FaceSphere, mv: Move) -> Move:
    """A legal move taking apply(before, mv) back to before."""
    if mv.kind == ROW_DUP:
        return row_del(mv.a + 1)
    if mv.kind == COL_DUP:
        return col_del(mv.a + 1)
    if mv.kind == ROW_DEL:
        if mv.a > 0 and _equal_lines(before.labels, mv.a, mv.a - 1, axis=0):
            return row_dup(mv.a - 1)
        return row_dup(mv.a)
    if mv.kind == COL_DEL:
        if mv.a > 0 and _equal_lines(before.labels, mv.a, mv.a - 1, axis=1):
            return col_dup(mv.a - 1)
        return col_dup(mv.a)
    return spider(mv.a, mv.b, before.label(mv.a, mv.b))


def reverse_moves(start: FaceSphere, moves: Sequence[Move]) -> List[Move]:
    back = []
    cur = start
    for mv in moves:
        back.append(inverse_move(cur, mv))
        cur = apply_unchecked(cur, mv)
    back.reverse()
    return back


def reverse(cert: MoveCertificate) -> MoveCertificate:
    return MoveCertificate(cert.end, tuple(reverse_moves(cert.start, cert.moves)), cert.start)


# Canonical form


def _first_deletable(labels: np.ndarray, axis: int) -> Optional[int]:
    hits = np.flatnonzero(_deletable(labels, axis))
    return int(hits[0]) if len(hits) else None


def normalize_trace(f: FaceSphere) -> Tuple[FaceSphere, List[Move]]:
    """Canonical representative plus the moves reaching it.

    Degenerate inputs (m = 0 or n = 0) are first padded to width and height 1.
    """
    trace: List[Move] = []
    labels = f.labels
    if labels.shape[0] == 1:
        trace.append(row_dup(0))
        labels = _apply(labels, trace[-1])
    if labels.shape[1] == 1:
        trace.append(col_dup(0))
        labels = _apply(labels, trace[-1])
    while True:
        if labels.shape[0] > 2:
            j = _first_deletable(labels, 0)
            if j is not None:
                trace.append(row_del(j))
                labels = _apply(labels, trace[-1])
                continue
        if labels.shape[1] > 2:
            i = _first_deletable(labels, 1)
            if i is not None:
                trace.append(col_del(i))
                labels = _apply(labels, trace[-1])
                continue
        break
    return _resized(f, labels), trace


def normalize(f: FaceSphere) -> FaceSphere:
    return normalize_trace(f)[0]


def _compress(labels: np.ndarray, axis: int) -> np.ndarray:
    keep = np.ones(labels.shape[axis], dtype=bool)
    keep[1:] = np.any(np.diff(labels, axis=axis) != 0, axis=1 - axis)
    out = labels.compress(keep, axis=axis)
    if out.shape[axis] == 1:
        out = np.repeat(out, 2, axis=axis)
    return out


def normal_grid(labels: np.ndarray) -> np.ndarray:
    """Labels of ``normalize`` computed by run compression; used as the search hash key."""
    return _compress(_compress(np.asarray(labels), 0), 1)


# Certificate construction


class CertificateBuilder:
    """Accumulates checked moves starting from a sphere."""

    def __init__(self, start: FaceSphere) -> None:
        self.start = start
        self.current = start
        self.moves: List[Move] = []

    def push(self, mv: Move) -> None:
        self.current = apply_move(self.current, mv)
        self.moves.append(mv)

    def extend(self, moves: Iterable[Move]) -> None:
        for mv in moves:
            self.push(mv)

    def spiders_to(self, goal: FaceSphere) -> None:
        """Rewrite differing interior entries in raster order (bottom to top, left to right)."""
        cur = self.current
        if cur.size != goal.size:
            raise ShapeMismatch(f"{cur.m}x{cur.n} vs {goal.m}x{goal.n}")
        inner = np.argwhere(cur.labels[1:-1, 1:-1] != goal.labels[1:-1, 1:-1]) + 1
        for j, i in inner.tolist():
            mv = spider(i, j, goal.label(i, j))
            if why_illegal(self.current, mv) is not None:
                raise DecompositionFailed(i, j)
            self.current = apply_unchecked(self.current, mv)
            self.moves.append(mv)
        if not np.array_equal(self.current.labels, goal.labels):
            # boundary entries differ; no spider can reach ``goal``
            raise DecompositionFailed(0, 0, "boundary entries differ")

    def finish(self, end: Optional[FaceSphere] = None) -> MoveCertificate:
        if end is not None and not np.array_equal(end.labels, self.current.labels):
            raise ShapeMismatch("builder did not reach the requested end sphere")
        return MoveCertificate(self.start, tuple(self.moves), self.current)


def contiguity_to_spiders(f: FaceSphere, g: FaceSphere) -> MoveCertificate:
    _require_same_target(f, g)
    b = CertificateBuilder(f)
    b.spiders_to(g)
    return b.finish()


def contiguity_chain_certificate(spheres: Sequence[FaceSphere]) -> MoveCertificate:
    """Decompose a chain f_0 ~ f_1 ~ ... ~ f_k of same-size spheres into spider moves."""
    b = CertificateBuilder(spheres[0])
    for nxt in spheres[1:]:
        b.spiders_to(nxt)
    return b.finish()


def _steps(a: int, b: int) -> range:
    return range(a, b + 1) if a <= b else range(a, b - 1, -1)


def extension_chain_certificate(f: FaceSphere, axis: str, start: int, stop: int, repeat: int) -> MoveCertificate:
    """From f with row/column ``start`` repeated ``repeat`` extra times to the same with ``stop``.

    Each neighbouring pair in the chain is a single contiguity.
    """
    if axis == "col":
        chain = [extend(f, t, repeat, 0, 0) for t in _steps(start, stop)]
    elif axis == "row":
        chain = [extend(f, 0, 0, t, repeat) for t in _steps(start, stop)]
    else:
        raise ShapeMismatch(f"axis must be 'row' or 'col', got {axis!r}")
    return contiguity_chain_certificate(chain)


def _slide(b: CertificateBuilder, rect: Tuple[int, int, int, int], blocks: Iterable[FaceSphere]) -> None:
    for blk in blocks:
        b.spiders_to(patch(b.current, rect, blk))


def commutativity_certificate(f: FaceSphere, g: FaceSphere) -> MoveCertificate:
    """f.g to g.f by four block slides: g down, f up, f right, g left."""
    _require_same_target(f, g)
    m, n, r, s = f.m, f.n, g.m, g.n
    X, Y = m + r + 1, n + s + 1
    b = CertificateBuilder(product(f, g))
    _slide(b, (m + 1, X, 0, Y), (extend(g, 0, 0, t, n + 1) for t in _steps(0, s)))
    _slide(b, (0, m, 0, Y), (extend(f, 0, 0, t, s + 1) for t in _steps(n, 0)))
    _slide(b, (0, X, s + 1, Y), (extend(f, t, r + 1, 0, 0) for t in _steps(m, 0)))
    _slide(b, (0, X, 0, s), (extend(g, t, m + 1, 0, 0) for t in _steps(0, r)))
    cert = b.finish(product(g, f))
    logger.debug("[moves] commutativity %dx%d . %dx%d: %d moves", m, n, r, s, len(cert))
    return cert


def inverse_cancellation_certificate(f: FaceSphere) -> MoveCertificate:
    """f . f~ down to a constant sphere.

    Slide f~ down next to f, drop the empty top rows and the doubled middle
    column to reach g_m, then fold g_r onto g_{r-1} one column at a time.
    """
    ft = inverse(f)
    b = CertificateBuilder(product(f, ft))
    m, n = f.m, f.n
    if is_constant(f):
        return b.finish()
    _slide(b, (m + 1, 2 * m + 1, 0, 2 * n + 1), (extend(ft, 0, 0, t, n + 1) for t in _steps(0, n)))
    for _ in range(n + 1):
        b.push(row_del(b.current.n))
    b.push(col_del(m + 1))
    # g_r has width 2r and is symmetric about column r
    for r in range(m, 0, -1):
        cur = b.current
        folded = cur.labels.copy()
        folded[:, r] = folded[:, r - 1]
        b.spiders_to(FaceSphere(cur.target, cur.m, cur.n, folded))
        if r > 1:
            b.push(col_del(r + 1))
            b.push(col_del(r))
    cert = b.finish()
    if not is_constant(cert.end):
        raise ShapeMismatch("inverse cancellation did not end at a constant sphere")
    return cert


def trivial_extension_path(f: FaceSphere, g: FaceSphere) -> Optional[List[Move]]:
    """Deletions taking f to g when f is a trivial extension of g; otherwise None."""
    if f.m < g.m or f.n < g.n:
        return None
    if not np.array_equal(f.labels[: g.n + 1, : g.m + 1], g.labels):
        return None
    rest = f.labels.copy()
    rest[: g.n + 1, : g.m + 1] = f.base_id
    if np.any(rest != f.base_id):
        return None
    moves = [row_del(j) for j in range(f.n, g.n, -1)]
    moves += [col_del(i) for i in range(f.m, g.m, -1)]
    return moves
