"""Bounded bidirectional search for extension-contiguity equivalence.

Both spheres are padded by trivial extension to every common size up to the
pad limit; each padded copy seeds one side of the search. States are hashed by
(size, normalized grid) so translated copies of the same picture collapse, and
expansion only rewrites single entries with spider moves. When the two sides
meet, the certificate is stitched together from the padding duplications, the
forward spiders, the deletions and duplications relating the two meeting
representatives, the reversed backward spiders and the final deletions.
"""
from __future__ import annotations

import heapq
import logging
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import count
from typing import Any, Callable, Dict, Generic, Hashable, List, Mapping, Optional, Sequence, Tuple, TypeVar

import numpy as np

from .metrics import record_search
from .moves import (
    Move,
    MoveCertificate,
    apply_unchecked,
    col_dup,
    normal_grid,
    normalize_trace,
    replay,
    reverse_moves,
    row_dup,
    spider,
    spider_candidates,
    trivial_extension_path,
)
from .spheres import FaceSphere, _require_same_target, trivial_extension

logger = logging.getLogger(__name__)

S = TypeVar("S")

EQUIVALENT = "equivalent"
UNKNOWN = "unknown"
STRATEGIES = ("bfs", "sized")


@dataclass(frozen=True)
class SearchBudget:
    max_states: int = 2_000_000
    max_pad: int = 4
    seed: int = 0
    strategy: str = "bfs"
    batch: int = 64
    workers: int = 0  # 0 = all cores

    @classmethod
    def from_config(cls, cfg: Any, **overrides: Any) -> "SearchBudget":
        """Budget from a mapping (``app.config``) or a config class; bad values fall back to defaults."""
        get = cfg.get if isinstance(cfg, Mapping) else (lambda k, d=None: getattr(cfg, k, d))
        base = cls()

        def _int(key: str, default: int) -> int:
            try:
                return int(get(key, default))
            except (TypeError, ValueError):
                return default

        strategy = get("SEARCH_STRATEGY", base.strategy)
        values = dict(
            max_states=_int("SEARCH_MAX_STATES", base.max_states),
            max_pad=_int("SEARCH_MAX_PAD", base.max_pad),
            seed=_int("SEARCH_SEED", base.seed),
            strategy=strategy if strategy in STRATEGIES else base.strategy,
            batch=max(1, _int("SEARCH_BATCH", base.batch)),
            workers=_int("FACEGROUP_THREADS", base.workers),
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def worker_count(self) -> int:
        return self.workers if self.workers > 0 else (os.cpu_count() or 1)


@dataclass(frozen=True)
class SearchOutcome:
    status: str
    certificate: Any = None
    states_explored: int = 0
    frontier_exhausted: bool = False

    @property
    def equivalent(self) -> bool:
        return self.status == EQUIVALENT


@dataclass
class _Node(Generic[S]):
    state: S
    parent: Optional[Hashable]
    move: Any
    depth: int
    root: int


@dataclass
class _Side(Generic[S]):
    name: str
    nodes: Dict[Hashable, _Node] = field(default_factory=dict)
    heap: List[tuple] = field(default_factory=list)

    def path(self, key: Hashable) -> Tuple[int, List[Any]]:
        moves = []
        node = self.nodes[key]
        while node.parent is not None:
            moves.append(node.move)
            node = self.nodes[node.parent]
        moves.reverse()
        return node.root, moves


@dataclass(frozen=True)
class Meeting:
    forward_root: int
    forward_moves: List[Any]
    forward_state: Any
    backward_root: int
    backward_moves: List[Any]
    backward_state: Any


class BidirectionalSearch(Generic[S]):
    """Two-sided best-first search over hashed states.

    ``expand`` returns (move, next_state) pairs in a deterministic order;
    ``priority`` orders a side's frontier. Each round expands up to ``batch``
    states of the side with the smaller frontier; expansions of a batch may run
    on several threads but are merged in pop order, so the outcome does not
    depend on the worker count.
    """

    def __init__(
        self,
        expand: Callable[[S], Sequence[Tuple[Any, S]]],
        key: Callable[[S], Hashable],
        priority: Callable[[S, int], tuple],
        budget: SearchBudget,
        label: str = "search",
    ) -> None:
        self.expand = expand
        self.key = key
        self.priority = priority
        self.budget = budget
        self.label = label
        self.explored = 0
        self._tick = count()

    def _add(self, side: _Side, state: S, parent: Optional[Hashable], move: Any, depth: int, root: int) -> Hashable:
        k = self.key(state)
        side.nodes[k] = _Node(state, parent, move, depth, root)
        heapq.heappush(side.heap, (self.priority(state, depth), next(self._tick), k))
        self.explored += 1
        return k

    def _meeting(self, fwd: _Side, bwd: _Side, k: Hashable) -> Meeting:
        froot, fmoves = fwd.path(k)
        broot, bmoves = bwd.path(k)
        return Meeting(froot, fmoves, fwd.nodes[k].state, broot, bmoves, bwd.nodes[k].state)

    def run(self, forward_seeds: Sequence[S], backward_seeds: Sequence[S]) -> Tuple[Optional[Meeting], bool]:
        """Returns (meeting or None, frontier_exhausted)."""
        fwd, bwd = _Side("forward"), _Side("backward")
        for root, st in enumerate(forward_seeds):
            if self.key(st) not in fwd.nodes:
                self._add(fwd, st, None, None, 0, root)
        for root, st in enumerate(backward_seeds):
            k = self.key(st)
            if k in bwd.nodes:
                continue
            self._add(bwd, st, None, None, 0, root)
            if k in fwd.nodes:
                return self._meeting(fwd, bwd, k), False

        workers = self.budget.worker_count()
        pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
        rounds = 0
        try:
            while fwd.heap and bwd.heap:
                if self.explored >= self.budget.max_states:
                    return None, False
                side, other = (fwd, bwd) if len(fwd.heap) <= len(bwd.heap) else (bwd, fwd)
                batch = []
                while side.heap and len(batch) < self.budget.batch:
                    _, _, k = heapq.heappop(side.heap)
                    batch.append(k)
                states = [side.nodes[k].state for k in batch]
                results = list(pool.map(self.expand, states)) if pool else [self.expand(s) for s in states]
                for parent, children in zip(batch, results):
                    pnode = side.nodes[parent]
                    for move, child in children:
                        ck = self.key(child)
                        if ck in side.nodes:
                            continue
                        self._add(side, child, parent, move, pnode.depth + 1, pnode.root)
                        if ck in other.nodes:
                            return self._meeting(fwd, bwd, ck), False
                rounds += 1
                if rounds % 500 == 0:
                    logger.debug(
                        "[%s] round %d: %d states, frontiers %d/%d",
                        self.label, rounds, self.explored, len(fwd.heap), len(bwd.heap),
                    )
        finally:
            if pool is not None:
                pool.shutdown(wait=True)
        return None, True


# Face spheres


def _label_order(n_labels: int, seed: int) -> List[int]:
    order = list(range(n_labels))
    if seed:
        random.Random(seed).shuffle(order)
    return order


def _sphere_expander(order: Sequence[int]) -> Callable[[FaceSphere], List[Tuple[Move, FaceSphere]]]:
    rank = {v: r for r, v in enumerate(order)}

    def expand(f: FaceSphere) -> List[Tuple[Move, FaceSphere]]:
        out = []
        for i in range(1, f.m):
            for j in range(1, f.n):
                here = f.grid[j][i]
                for v in sorted(spider_candidates(f, i, j), key=rank.__getitem__):
                    if v != here:
                        mv = spider(i, j, v)
                        out.append((mv, apply_unchecked(f, mv)))
        return out

    return expand


def sphere_key(f: FaceSphere) -> Hashable:
    norm = normal_grid(f.labels)
    return f.m, f.n, norm.shape, norm.tobytes()


def _priority(strategy: str) -> Callable[[FaceSphere, int], tuple]:
    if strategy == "bfs":
        return lambda f, depth: (depth,)

    def sized(f: FaceSphere, depth: int) -> tuple:
        return normal_grid(f.labels).size, f.weight(), depth

    return sized


def _pad_moves(f: FaceSphere, M: int, N: int) -> List[Move]:
    return [col_dup(f.m)] * (M - f.m) + [row_dup(f.n)] * (N - f.n)


def _stitch(f: FaceSphere, g: FaceSphere, fseeds, gseeds, meet: Meeting) -> MoveCertificate:
    F = fseeds[meet.forward_root]
    G = gseeds[meet.backward_root]
    A, B = meet.forward_state, meet.backward_state
    moves: List[Move] = _pad_moves(f, F.m, F.n)
    moves += meet.forward_moves
    _, to_normal_a = normalize_trace(A)
    _, to_normal_b = normalize_trace(B)
    moves += to_normal_a
    moves += reverse_moves(B, to_normal_b)
    moves += reverse_moves(G, meet.backward_moves)
    moves += trivial_extension_path(G, g) or []
    return MoveCertificate(f, tuple(moves), g)


def _direct_certificate(f: FaceSphere, g: FaceSphere) -> Optional[MoveCertificate]:
    """Certificates needing no spider moves: equal, trivial extensions, or equal normal forms."""
    if np.array_equal(f.labels, g.labels):
        return MoveCertificate(f, (), g)
    path = trivial_extension_path(f, g)
    if path is not None:
        return MoveCertificate(f, tuple(path), g)
    path = trivial_extension_path(g, f)
    if path is not None:
        return MoveCertificate(f, tuple(reverse_moves(g, path)), g)
    nf, tf = normalize_trace(f)
    ng, tg = normalize_trace(g)
    if np.array_equal(nf.labels, ng.labels):
        return MoveCertificate(f, tuple(tf + reverse_moves(g, tg)), g)
    return None


def search_equivalence(f: FaceSphere, g: FaceSphere, budget: Optional[SearchBudget] = None) -> SearchOutcome:
    """Look for a move certificate from f to g within the budget."""
    _require_same_target(f, g)
    budget = budget or SearchBudget()
    started = time.perf_counter()
    direct = _direct_certificate(f, g)
    if direct is not None:
        replay(direct)
        outcome = SearchOutcome(EQUIVALENT, direct, 0, False)
        record_search("sphere", budget.strategy, outcome.status, 0, time.perf_counter() - started)
        return outcome

    M0, N0 = max(f.m, g.m, 1), max(f.n, g.n, 1)
    fseeds = [trivial_extension(f, M0 + p - f.m, N0 + p - f.n) for p in range(budget.max_pad + 1)]
    gseeds = [trivial_extension(g, M0 + p - g.m, N0 + p - g.n) for p in range(budget.max_pad + 1)]
    engine: BidirectionalSearch[FaceSphere] = BidirectionalSearch(
        _sphere_expander(_label_order(len(f.complex), budget.seed)),
        sphere_key,
        _priority(budget.strategy),
        budget,
        label="search",
    )
    meet, exhausted = engine.run(fseeds, gseeds)
    elapsed = time.perf_counter() - started
    if meet is None:
        logger.info("[search] unknown after %d states (exhausted=%s, %.2fs)", engine.explored, exhausted, elapsed)
        record_search("sphere", budget.strategy, UNKNOWN, engine.explored, elapsed, exhausted)
        return SearchOutcome(UNKNOWN, None, engine.explored, exhausted)
    cert = _stitch(f, g, fseeds, gseeds, meet)
    replay(cert)
    logger.info("[search] equivalent: %d moves, %d states, %.2fs", len(cert), engine.explored, elapsed)
    record_search("sphere", budget.strategy, EQUIVALENT, engine.explored, elapsed)
    return SearchOutcome(EQUIVALENT, cert, engine.explored, False)
