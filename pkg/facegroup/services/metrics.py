"""Per-process counters: searches by kind and strategy, requests by endpoint."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from threading import Lock
from typing import Dict, Tuple

_lock = Lock()


@dataclass
class SearchTally:
    runs: int = 0
    equivalent: int = 0
    unknown: int = 0
    exhausted: int = 0
    states: int = 0
    seconds: float = 0.0

    def add(self, status: str, states: int, seconds: float, exhausted: bool) -> None:
        self.runs += 1
        if status == "equivalent":
            self.equivalent += 1
        else:
            self.unknown += 1
            self.exhausted += int(exhausted)
        self.states += int(states)
        self.seconds += float(seconds)

    def merge(self, other: "SearchTally") -> None:
        for k, v in asdict(other).items():
            setattr(self, k, getattr(self, k) + v)

    def as_dict(self) -> Dict[str, float]:
        out: Dict[str, float] = asdict(self)
        out["mean_states"] = self.states / self.runs if self.runs else 0.0
        out["mean_seconds"] = self.seconds / self.runs if self.runs else 0.0
        return out


_searches: Dict[Tuple[str, str], SearchTally] = {}  # (kind, strategy) -> tally
_endpoints: Dict[str, Dict[str, int]] = {}  # path -> {"ok", "rejected", "failed"}


def record_search(kind: str, strategy: str, status: str, states: int, seconds: float, exhausted: bool = False) -> None:
    """``kind`` is "sphere" or "loop"."""
    with _lock:
        _searches.setdefault((kind, strategy), SearchTally()).add(status, states, seconds, exhausted)


def get_search_stats() -> Dict[str, object]:
    total = SearchTally()
    by_kind: Dict[str, Dict[str, float]] = {}
    with _lock:
        for (kind, strategy), tally in sorted(_searches.items()):
            total.merge(tally)
            by_kind[f"{kind}/{strategy}"] = tally.as_dict()
    out: Dict[str, object] = dict(total.as_dict())
    out["by_kind"] = by_kind
    return out


def _outcome(status_code: int) -> str:
    if status_code >= 500:
        return "failed"
    return "rejected" if status_code >= 400 else "ok"


def record_response(path: str, status_code: int) -> None:
    with _lock:
        counts = _endpoints.setdefault(path, {"ok": 0, "rejected": 0, "failed": 0})
        counts[_outcome(int(status_code))] += 1


def get_request_stats() -> Dict[str, object]:
    with _lock:
        endpoints = {path: dict(counts) for path, counts in sorted(_endpoints.items())}
    totals = {k: sum(c[k] for c in endpoints.values()) for k in ("ok", "rejected", "failed")}
    requests = sum(totals.values())
    return {
        "requests": requests,
        **totals,
        "error_rate": (totals["rejected"] + totals["failed"]) / requests if requests else 0.0,
        "endpoints": endpoints,
    }


def reset() -> None:
    with _lock:
        _searches.clear()
        _endpoints.clear()
