from __future__ import annotations

from typing import Any, Dict, Optional, Tuple


class FaceGroupError(ValueError):
    """Base error. ``code`` is the snake_case tag surfaced by the CLI and the API."""

    code = "facegroup_error"

    def __init__(self, detail: str = "", **fields: Any) -> None:
        self.detail = detail
        self.fields: Dict[str, Any] = fields
        super().__init__(f"{self.code}: {detail}" if detail else self.code)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"error": self.code}
        if self.detail:
            out["detail"] = self.detail
        for k, v in self.fields.items():
            out[k] = list(v) if isinstance(v, tuple) else v
        return out


class ParseError(FaceGroupError):
    code = "parse_error"

    def __init__(self, detail: str, line: int, column: int = 1) -> None:
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {detail}", line=line, column=column)


class EmptyComplex(FaceGroupError):
    code = "empty_complex"


class UnknownVertex(FaceGroupError):
    code = "unknown_vertex"

    def __init__(self, vertex: Any) -> None:
        self.vertex = vertex
        super().__init__(str(vertex), vertex=str(vertex))


class MissingVertex(FaceGroupError):
    code = "missing_vertex"


class MapNotSimplicial(FaceGroupError):
    code = "map_not_simplicial"

    def __init__(self, violations: list) -> None:
        self.violations = violations
        super().__init__(f"{len(violations)} violating simplices", count=len(violations))


class ShapeMismatch(FaceGroupError):
    code = "shape_mismatch"


class IndexOutOfRange(FaceGroupError, IndexError):
    code = "index_out_of_range"


class TargetMismatch(FaceGroupError):
    code = "target_mismatch"


class BasepointMismatch(TargetMismatch):
    code = "basepoint_mismatch"


class _CellError(FaceGroupError):
    def __init__(self, i: int, j: int, detail: str = "") -> None:
        self.cell: Tuple[int, int] = (i, j)
        super().__init__(detail or f"cell ({i},{j})", i=i, j=j)


class BoundaryViolation(_CellError):
    code = "boundary_violation"


class SimplexViolation(_CellError):
    code = "simplex_violation"


class PatchBoundaryMismatch(_CellError):
    code = "patch_boundary_mismatch"


class DecompositionFailed(_CellError):
    code = "decomposition_failed"


class IllegalMove(FaceGroupError):
    code = "illegal_move"

    def __init__(self, move: Any, reason: str) -> None:
        self.move = move
        self.reason = reason
        super().__init__(f"{move}: {reason}", reason=reason)


class NonOrientableTarget(FaceGroupError):
    code = "non_orientable_target"

    def __init__(self, detail: str, edge: Optional[Tuple[str, str]] = None) -> None:
        self.edge = edge
        if edge is None:
            super().__init__(detail)
        else:
            super().__init__(detail, edge=edge)


class NotSpiderPair(FaceGroupError):
    code = "not_spider_pair"


class InvalidLoop(FaceGroupError):
    code = "invalid_loop"

    def __init__(self, index: int, detail: str = "") -> None:
        self.index = index
        super().__init__(detail or f"position {index}", index=index)
