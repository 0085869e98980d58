"""Edge loops and their moves: the one-dimensional counterpart of face spheres.

Moves on a loop (v_0, ..., v_m) based at x0: repeat a vertex, delete a vertex
equal to a neighbour, or replace v_i by v when {v_{i-1}, v_i, v} and
{v_i, v, v_{i+1}} are simplices.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..errors import IllegalMove, InvalidLoop, ShapeMismatch, TargetMismatch
from .complexes import PointedComplex, Vertex
from .metrics import record_search
from .search import EQUIVALENT, UNKNOWN, BidirectionalSearch, SearchBudget, SearchOutcome
from .spheres import FaceSphere, same_target

logger = logging.getLogger(__name__)

DUP = "dup"
DEL = "del"
SUB = "sub"


@dataclass(frozen=True)
class EdgeLoop:
    target: PointedComplex
    vertices: Tuple[int, ...]

    @property
    def complex(self):
        return self.target.complex

    def __len__(self) -> int:
        """Number of edges."""
        return len(self.vertices) - 1

    def names(self) -> List[str]:
        d = self.complex.display
        return [d(v) for v in self.vertices]

    def __repr__(self) -> str:
        return f"<EdgeLoop {' '.join(self.names())}>"


def first_loop_violation(target: PointedComplex, vertices: Sequence[int]) -> Optional[InvalidLoop]:
    if not vertices:
        return InvalidLoop(0, "empty loop")
    b = target.base_id
    if vertices[0] != b:
        return InvalidLoop(0, "loop must start at the basepoint")
    if vertices[-1] != b:
        return InvalidLoop(len(vertices) - 1, "loop must end at the basepoint")
    X = target.complex
    for k in range(len(vertices) - 1):
        if not X.contains_ids(frozenset((vertices[k], vertices[k + 1]))):
            return InvalidLoop(k, f"{X.display(vertices[k])}-{X.display(vertices[k + 1])} is not an edge")
    return None


def loop_from_ids(target: PointedComplex, vertices: Sequence[int], check: bool = True) -> EdgeLoop:
    ids = tuple(vertices)
    if check:
        err = first_loop_violation(target, ids)
        if err is not None:
            raise err
    return EdgeLoop(target, ids)


def edge_loop(target: PointedComplex, vertices: Sequence[Vertex]) -> EdgeLoop:
    X = target.complex
    return loop_from_ids(target, [X.index(v) for v in vertices])


def constant_loop(target: PointedComplex, length: int) -> EdgeLoop:
    return EdgeLoop(target, (target.base_id,) * (length + 1))


@dataclass(frozen=True)
class LoopMove:
    kind: str
    index: int
    label: int = -1

    def __str__(self) -> str:
        if self.kind == SUB:
            return f"sub {self.index} #{self.label}"
        return f"{self.kind} {self.index}"


def _repeated(vs: Tuple[int, ...], i: int) -> bool:
    return (i > 0 and vs[i - 1] == vs[i]) or (i + 1 < len(vs) and vs[i + 1] == vs[i])


def _sub_ok(l: EdgeLoop, i: int, v: int) -> bool:
    vs, X = l.vertices, l.complex
    return X.contains_ids(frozenset((vs[i - 1], vs[i], v))) and X.contains_ids(frozenset((vs[i], v, vs[i + 1])))


def loop_moves(l: EdgeLoop, max_length: Optional[int] = None) -> List[LoopMove]:
    """Duplications, deletions of repeats, then substitutions; indices ascending, labels by id."""
    vs = l.vertices
    out: List[LoopMove] = []
    if max_length is None or len(l) < max_length:
        out += [LoopMove(DUP, i) for i in range(len(vs))]
    if len(vs) > 1:
        out += [LoopMove(DEL, i) for i in range(len(vs)) if _repeated(vs, i)]
    for i in range(1, len(vs) - 1):
        out += [LoopMove(SUB, i, v) for v in range(len(l.complex)) if v != vs[i] and _sub_ok(l, i, v)]
    return out


def _apply(vs: Tuple[int, ...], mv: LoopMove) -> Tuple[int, ...]:
    i = mv.index
    if mv.kind == DUP:
        return vs[: i + 1] + vs[i:]
    if mv.kind == DEL:
        return vs[:i] + vs[i + 1 :]
    return vs[:i] + (mv.label,) + vs[i + 1 :]


def apply_loop_move(l: EdgeLoop, mv: LoopMove) -> EdgeLoop:
    vs = l.vertices
    if not 0 <= mv.index < len(vs):
        raise IllegalMove(str(mv), "index out of range")
    if mv.kind == DEL and not (len(vs) > 1 and _repeated(vs, mv.index)):
        raise IllegalMove(str(mv), "vertex is not repeated")
    if mv.kind == SUB:
        if not 0 < mv.index < len(vs) - 1:
            raise IllegalMove(str(mv), "endpoints are fixed")
        if not 0 <= mv.label < len(l.complex) or not _sub_ok(l, mv.index, mv.label):
            raise IllegalMove(str(mv), "substitution leaves the complex")
    elif mv.kind not in (DUP, DEL):
        raise IllegalMove(str(mv), f"unknown move kind {mv.kind!r}")
    return EdgeLoop(l.target, _apply(vs, mv))


def inverse_loop_move(before: EdgeLoop, mv: LoopMove) -> LoopMove:
    vs = before.vertices
    if mv.kind == DUP:
        return LoopMove(DEL, mv.index + 1)
    if mv.kind == DEL:
        if mv.index > 0 and vs[mv.index - 1] == vs[mv.index]:
            return LoopMove(DUP, mv.index - 1)
        return LoopMove(DUP, mv.index)
    return LoopMove(SUB, mv.index, vs[mv.index])


@dataclass(frozen=True)
class LoopCertificate:
    start: EdgeLoop
    moves: Tuple[LoopMove, ...]
    end: EdgeLoop

    def __len__(self) -> int:
        return len(self.moves)


def replay_loop(cert: LoopCertificate) -> EdgeLoop:
    cur = cert.start
    for mv in cert.moves:
        cur = apply_loop_move(cur, mv)
    if cur.vertices != cert.end.vertices:
        raise ShapeMismatch("replay does not reach the certificate's end loop")
    return cur


def _require_same_target(a: EdgeLoop, b: EdgeLoop) -> None:
    if not same_target(a.target, b.target):
        raise TargetMismatch("loops live over different pointed complexes")


def concat(l1: EdgeLoop, l2: EdgeLoop) -> EdgeLoop:
    """l1 followed by l2, sharing the basepoint between them."""
    _require_same_target(l1, l2)
    return EdgeLoop(l1.target, l1.vertices + l2.vertices[1:])


def loop_inverse(l: EdgeLoop) -> EdgeLoop:
    return EdgeLoop(l.target, tuple(reversed(l.vertices)))


def normalize_loop(l: EdgeLoop) -> EdgeLoop:
    """Collapse runs of repeated vertices."""
    out = [l.vertices[0]]
    for v in l.vertices[1:]:
        if v != out[-1]:
            out.append(v)
    return EdgeLoop(l.target, tuple(out))


def loops_contiguous(l1: EdgeLoop, l2: EdgeLoop) -> bool:
    """Contiguity of the two loops as maps I_m -> X."""
    _require_same_target(l1, l2)
    if len(l1) != len(l2):
        raise ShapeMismatch(f"loops of length {len(l1)} and {len(l2)}")
    X, a, b = l1.complex, l1.vertices, l2.vertices
    return all(X.contains_ids(frozenset((a[k], a[k + 1], b[k], b[k + 1]))) for k in range(len(l1)))


def row_loop(f: FaceSphere, j: int) -> EdgeLoop:
    if not 0 <= j <= f.n:
        raise ShapeMismatch(f"row {j} outside 0..{f.n}")
    return EdgeLoop(f.target, tuple(f.grid[j]))


def loop_is_row_of(l: EdgeLoop, f: FaceSphere, j: int) -> bool:
    return same_target(l.target, f.target) and 0 <= j <= f.n and l.vertices == tuple(f.grid[j])


def loop_search(
    l1: EdgeLoop,
    l2: EdgeLoop,
    budget: Optional[SearchBudget] = None,
    max_length: int = 8,
) -> SearchOutcome:
    """Bidirectional breadth-first search over loops of at most ``max_length`` edges.

    States are exact vertex sequences, so an exhausted frontier means no chain
    of moves within the length bound relates the two loops.
    """
    _require_same_target(l1, l2)
    budget = budget or SearchBudget(strategy="bfs")
    started = time.perf_counter()

    def expand(state: Tuple[int, ...]) -> List[Tuple[LoopMove, Tuple[int, ...]]]:
        loop = EdgeLoop(l1.target, state)
        return [(mv, _apply(state, mv)) for mv in loop_moves(loop, max_length)]

    engine: BidirectionalSearch[Tuple[int, ...]] = BidirectionalSearch(
        expand,
        lambda state: state,
        lambda state, depth: (depth,),
        budget,
        label="loops",
    )
    meet, exhausted = engine.run([l1.vertices], [l2.vertices])
    elapsed = time.perf_counter() - started
    if meet is None:
        logger.info("[loops] unknown after %d states (exhausted=%s)", engine.explored, exhausted)
        record_search("loop", "bfs", UNKNOWN, engine.explored, elapsed, exhausted)
        return SearchOutcome(UNKNOWN, None, engine.explored, exhausted)
    moves = list(meet.forward_moves)
    back: List[LoopMove] = []
    cur = l2
    for mv in meet.backward_moves:
        back.append(inverse_loop_move(cur, mv))
        cur = EdgeLoop(cur.target, _apply(cur.vertices, mv))
    moves += reversed(back)
    cert = LoopCertificate(l1, tuple(moves), l2)
    replay_loop(cert)
    logger.info("[loops] equivalent: %d moves, %d states, %.2fs", len(cert), engine.explored, elapsed)
    record_search("loop", "bfs", EQUIVALENT, engine.explored, elapsed)
    return SearchOutcome(EQUIVALENT, cert, engine.explored, False)
