from __future__ import annotations

import hashlib

from flask import Blueprint, current_app, jsonify, request

from ..errors import FaceGroupError
from ..extensions import cache, limiter
from ..services.catalog import EXAMPLES, example_sphere
from ..services.complexes import PointedComplex, octahedron
from ..services.degree import degree
from ..services.formats import (
    grid_hash,
    parse_pointed_complex,
    parse_sphere,
    write_certificate,
    write_complex,
    write_sphere,
)
from ..services.metrics import get_request_stats, get_search_stats
from ..services.moves import normalize
from ..services.search import STRATEGIES, SearchBudget, search_equivalence
from ..services.spheres import FaceSphere, inverse, is_contiguous, product

api_bp = Blueprint("api", __name__)


@api_bp.errorhandler(FaceGroupError)
def handle_facegroup_error(err: FaceGroupError):
    current_app.logger.info(f"[api] {request.path}: {err}")
    return err.to_dict(), 400


def _payload() -> dict:
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        raise FaceGroupError("request body must be a JSON object")
    return data


def _target(data: dict) -> PointedComplex:
    text = data.get("complex")
    if not text:
        return octahedron()
    return parse_pointed_complex(str(text))


def _sphere(data: dict, key: str, target: PointedComplex) -> FaceSphere:
    text = data.get(key)
    if not text:
        raise FaceGroupError(f"missing field {key!r}")
    return parse_sphere(str(text), target)


def _sphere_dict(f: FaceSphere) -> dict:
    return {"m": f.m, "n": f.n, "sphere": write_sphere(f), "hash": grid_hash(f)}


@api_bp.post("/validate")
@limiter.limit(lambda: current_app.config.get("RATE_LIMIT_DEFAULT", "600 per hour"))
def validate_sphere():
    data = _payload()
    f = _sphere(data, "sphere", _target(data))
    return {"ok": True, **_sphere_dict(f)}


@api_bp.post("/mul")
@limiter.limit(lambda: current_app.config.get("RATE_LIMIT_DEFAULT", "600 per hour"))
def multiply():
    data = _payload()
    X = _target(data)
    return _sphere_dict(product(_sphere(data, "f", X), _sphere(data, "g", X)))


@api_bp.post("/inverse")
@limiter.limit(lambda: current_app.config.get("RATE_LIMIT_DEFAULT", "600 per hour"))
def invert():
    data = _payload()
    return _sphere_dict(inverse(_sphere(data, "sphere", _target(data))))


@api_bp.post("/normalize")
@limiter.limit(lambda: current_app.config.get("RATE_LIMIT_DEFAULT", "600 per hour"))
def normal_form():
    data = _payload()
    return _sphere_dict(normalize(_sphere(data, "sphere", _target(data))))


@api_bp.post("/contig")
@limiter.limit(lambda: current_app.config.get("RATE_LIMIT_DEFAULT", "600 per hour"))
def contiguity():
    data = _payload()
    X = _target(data)
    return {"contiguous": is_contiguous(_sphere(data, "f", X), _sphere(data, "g", X))}


@api_bp.post("/degree")
@limiter.limit(lambda: current_app.config.get("RATE_LIMIT_DEFAULT", "600 per hour"))
def sphere_degree():
    data = _payload()
    f = _sphere(data, "sphere", _target(data))
    face = data.get("face") or "e1 e2 e3"
    names = face.split() if isinstance(face, str) else list(face)
    return {"degree": degree(f, names)}


@api_bp.post("/search")
@limiter.limit(lambda: current_app.config.get("RATE_LIMIT_SEARCH", "30 per minute"))
def search():
    data = _payload()
    key = "search:" + hashlib.sha256(request.get_data()).hexdigest()
    hit = cache.get(key)
    if hit is not None:
        return hit
    X = _target(data)
    f, g = _sphere(data, "f", X), _sphere(data, "g", X)
    cfg = current_app.config
    try:
        max_states = min(int(data.get("max_states", cfg["API_SEARCH_MAX_STATES"])), cfg["API_SEARCH_MAX_STATES"])
    except (TypeError, ValueError):
        return {"error": "invalid_max_states"}, 400
    strategy = data.get("strategy")
    if strategy is not None and strategy not in STRATEGIES:
        return {"error": "invalid_strategy", "detail": f"one of {list(STRATEGIES)}"}, 400
    budget = SearchBudget.from_config(cfg, max_states=max_states, strategy=strategy)
    outcome = search_equivalence(f, g, budget)
    current_app.logger.info(f"[api] search {f.m}x{f.n} vs {g.m}x{g.n}: {outcome.status}")
    out = {
        "status": outcome.status,
        "strategy": budget.strategy,
        "states_explored": outcome.states_explored,
        "frontier_exhausted": outcome.frontier_exhausted,
        "certificate": write_certificate(outcome.certificate) if outcome.certificate is not None else None,
    }
    cache.set(key, out)
    return out


@api_bp.get("/examples/<name>")
@cache.cached(timeout=300)
def get_example(name: str):
    if name not in EXAMPLES:
        return {"error": "unknown_example"}, 404
    if name == "octahedron":
        X = octahedron()
        return {"complex": write_complex(X.complex, X.basepoint)}
    return _sphere_dict(example_sphere(name))


@api_bp.get("/metrics")
def metrics():
    return jsonify({"search": get_search_stats(), "requests": get_request_stats()})
