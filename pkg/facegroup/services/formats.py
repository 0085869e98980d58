"""Plain-text formats.

.cx    one maximal simplex per line, optional ``basepoint <name>`` line
.fs    ``sphere m n`` then n+1 rows of m+1 names, top row first
.gm    ``grid m n``, same layout, read as a map out of I_{m,n}
.cert  ``cert <start-hash> <end-hash>`` then one move per line
.el    one line of vertex names

``#`` starts a comment everywhere; blank lines are ignored.
"""
from __future__ import annotations

import hashlib
from typing import Iterator, List, Optional, Tuple, Union

from ..errors import ParseError, ShapeMismatch, UnknownVertex
from .bridge import GridMap, grid_map_from_ids
from .complexes import ExplicitComplex, PointedComplex, SimplicialComplex, build_explicit
from .loops import EdgeLoop, loop_from_ids
from .moves import COL_DEL, COL_DUP, ROW_DEL, ROW_DUP, SPIDER, Move, MoveCertificate, format_move, replay_steps
from .spheres import FaceSphere, from_ids

Token = Tuple[str, int]  # (text, 1-based column)


def _lines(text: str) -> Iterator[Tuple[int, List[Token]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens: List[Token] = []
        col = 0
        for part in line.split():
            col = line.index(part, col)
            tokens.append((part, col + 1))
            col += len(part)
        if tokens:
            yield lineno, tokens


def _int(tok: Token, lineno: int, what: str) -> int:
    try:
        value = int(tok[0])
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok[0]!r}", lineno, tok[1]) from None
    if value < 0:
        raise ParseError(f"{what} must be >= 0", lineno, tok[1])
    return value


# Complexes


def parse_complex(text: str) -> Tuple[ExplicitComplex, Optional[str]]:
    """Complex and the basepoint name (None when the file has no basepoint line)."""
    simplices: List[List[str]] = []
    basepoint: Optional[Token] = None
    base_line = 0
    for lineno, tokens in _lines(text):
        if tokens[0][0] == "basepoint":
            if basepoint is not None:
                raise ParseError("second basepoint line", lineno, tokens[0][1])
            if len(tokens) != 2:
                raise ParseError("expected 'basepoint <name>'", lineno, tokens[0][1])
            basepoint, base_line = tokens[1], lineno
            continue
        simplices.append([t[0] for t in tokens])
    if not simplices:
        raise ParseError("no simplices", max(base_line, 1), 1)
    X = build_explicit(simplices)
    if basepoint is not None and not X.has_vertex(basepoint[0]):
        raise ParseError(f"basepoint {basepoint[0]!r} is not a vertex", base_line, basepoint[1])
    return X, basepoint[0] if basepoint else None


def parse_pointed_complex(text: str) -> PointedComplex:
    X, base = parse_complex(text)
    if base is None:
        raise ParseError("missing 'basepoint <name>' line", 1, 1)
    return PointedComplex(X, base)


def write_complex(X: SimplicialComplex, basepoint: Optional[str] = None) -> str:
    lines = []
    if basepoint is not None:
        lines.append(f"basepoint {basepoint}")
    for sigma in X.maximal_simplices():
        lines.append(" ".join(X.display(v) for v in sigma))
    return "\n".join(lines) + "\n"


# Grids


def _parse_grid(text: str, header: str, X: SimplicialComplex) -> Tuple[int, int, List[List[int]]]:
    lines = list(_lines(text))
    if not lines:
        raise ParseError(f"expected '{header} <m> <n>'", 1, 1)
    lineno, head = lines[0]
    if head[0][0] != header or len(head) != 3:
        raise ParseError(f"expected '{header} <m> <n>'", lineno, head[0][1])
    m, n = _int(head[1], lineno, "m"), _int(head[2], lineno, "n")
    body = lines[1:]
    if len(body) != n + 1:
        at = body[n + 1][0] if len(body) > n + 1 else (body[-1][0] + 1 if body else lineno + 1)
        raise ParseError(f"expected {n + 1} rows, got {len(body)}", at, 1)
    rows: List[List[int]] = []
    for lineno, tokens in body:
        if len(tokens) != m + 1:
            raise ParseError(f"expected {m + 1} labels, got {len(tokens)}", lineno, tokens[0][1])
        row = []
        for name, col in tokens:
            try:
                row.append(X.lookup(name))
            except UnknownVertex:
                raise ParseError(f"unknown vertex {name!r}", lineno, col) from None
        rows.append(row)
    rows.reverse()
    return m, n, rows


def parse_sphere(text: str, target: PointedComplex) -> FaceSphere:
    _, _, rows = _parse_grid(text, "sphere", target.complex)
    return from_ids(target, rows)


def parse_grid_map(text: str, target: PointedComplex) -> GridMap:
    _, _, rows = _parse_grid(text, "grid", target.complex)
    return grid_map_from_ids(target, rows)


def render_grid(f: Union[FaceSphere, GridMap]) -> str:
    """Rows top first, labels left-aligned in columns of equal width."""
    names = f.rows_top_first()
    width = max(len(x) for row in names for x in row)
    return "\n".join(" ".join(x.ljust(width) for x in row).rstrip() for row in names) + "\n"


def write_sphere(f: FaceSphere) -> str:
    return f"sphere {f.m} {f.n}\n" + render_grid(f)


def write_grid_map(g: GridMap) -> str:
    return f"grid {g.m} {g.n}\n" + render_grid(g)


def grid_hash(f: FaceSphere) -> str:
    """sha256 of the single-spaced .fs serialization."""
    canonical = f"sphere {f.m} {f.n}\n" + "".join(" ".join(row) + "\n" for row in f.rows_top_first())
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


# Certificates

_SINGLE = {ROW_DUP, ROW_DEL, COL_DUP, COL_DEL}


def write_certificate(cert: MoveCertificate) -> str:
    X = cert.start.complex
    lines = [f"cert {grid_hash(cert.start)} {grid_hash(cert.end)}"]
    lines += [format_move(mv, X) for mv in cert.moves]
    return "\n".join(lines) + "\n"


def parse_moves(text: str, X: SimplicialComplex) -> Tuple[str, str, List[Move]]:
    lines = list(_lines(text))
    if not lines or lines[0][1][0][0] != "cert" or len(lines[0][1]) != 3:
        at = lines[0][0] if lines else 1
        raise ParseError("expected 'cert <start-hash> <end-hash>'", at, 1)
    _, head = lines[0]
    moves: List[Move] = []
    for lineno, tokens in lines[1:]:
        kind = tokens[0][0]
        if kind in _SINGLE:
            if len(tokens) != 2:
                raise ParseError(f"expected '{kind} <index>'", lineno, tokens[0][1])
            moves.append(Move(kind, _int(tokens[1], lineno, "index")))
        elif kind == SPIDER:
            if len(tokens) != 4:
                raise ParseError("expected 'spider <i> <j> <label>'", lineno, tokens[0][1])
            i, j = _int(tokens[1], lineno, "i"), _int(tokens[2], lineno, "j")
            try:
                label = X.lookup(tokens[3][0])
            except UnknownVertex:
                raise ParseError(f"unknown vertex {tokens[3][0]!r}", lineno, tokens[3][1]) from None
            moves.append(Move(SPIDER, i, j, label))
        else:
            raise ParseError(f"unknown move {kind!r}", lineno, tokens[0][1])
    return head[1][0], head[2][0], moves


def load_certificate(text: str, start: FaceSphere) -> MoveCertificate:
    """Parse a certificate against its start sphere and replay it; hashes must match both ends."""
    start_hash, end_hash, moves = parse_moves(text, start.complex)
    if start_hash != grid_hash(start):
        raise ShapeMismatch("certificate was written for a different start sphere")
    end = start
    for end in replay_steps(start, moves):
        pass
    if end_hash != grid_hash(end):
        raise ShapeMismatch("replay does not reach the certificate's end sphere")
    return MoveCertificate(start, tuple(moves), end)


# Edge loops


def parse_loop(text: str, target: PointedComplex) -> EdgeLoop:
    lines = list(_lines(text))
    if len(lines) != 1:
        raise ParseError("expected exactly one line of vertex names", lines[1][0] if len(lines) > 1 else 1, 1)
    lineno, tokens = lines[0]
    X = target.complex
    ids = []
    for name, col in tokens:
        try:
            ids.append(X.lookup(name))
        except UnknownVertex:
            raise ParseError(f"unknown vertex {name!r}", lineno, col) from None
    return loop_from_ids(target, ids)


def write_loop(l: EdgeLoop) -> str:
    return " ".join(l.names()) + "\n"

