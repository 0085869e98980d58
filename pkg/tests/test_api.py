from facegroup.services import metrics as metrics_service
from facegroup.services.formats import write_complex, write_sphere
from facegroup.services.moves import apply_move, spider
from facegroup.services.spheres import constant


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.get_json() == {"status": "ok"}


def test_validate(client, fig3):
    resp = client.post("/api/validate", json={"sphere": write_sphere(fig3)})
    assert resp.status_code == 200
    body = resp.get_json()
    assert body["ok"] is True
    assert (body["m"], body["n"]) == (5, 4)
    assert len(body["hash"]) == 64


def test_validate_reports_the_failing_cell(client, fig3):
    text = write_sphere(fig3).replace(" e1  ", " -e2 ")
    resp = client.post("/api/validate", json={"sphere": text})
    assert resp.status_code == 400
    body = resp.get_json()
    assert body["error"] == "simplex_violation"
    assert (body["i"], body["j"]) == (2, 1)


def test_parse_errors_carry_positions(client):
    resp = client.post("/api/validate", json={"sphere": "sphere 1 1\n-e1 -e1\n-e1 zz\n"})
    assert resp.status_code == 400
    body = resp.get_json()
    assert body["error"] == "parse_error"
    assert (body["line"], body["column"]) == (3, 5)


def test_bad_bodies(client):
    assert client.post("/api/validate", data="nope", content_type="text/plain").status_code == 400
    resp = client.post("/api/mul", json={"f": "sphere 0 0\n-e1\n"})
    assert resp.status_code == 400
    assert "'g'" in resp.get_json()["detail"]


def test_mul_inverse_normalize(client, fig3, fig10, oct):
    resp = client.post("/api/mul", json={"f": write_sphere(fig3), "g": write_sphere(fig10)})
    assert resp.status_code == 200
    assert (resp.get_json()["m"], resp.get_json()["n"]) == (10, 9)

    resp = client.post("/api/inverse", json={"sphere": write_sphere(fig10)})
    assert resp.get_json()["sphere"].splitlines()[2] == "-e1 e3  e2  e2  -e1"

    resp = client.post("/api/normalize", json={"sphere": write_sphere(constant(oct, 4, 2))})
    assert (resp.get_json()["m"], resp.get_json()["n"]) == (1, 1)


def test_contig(client, fig3):
    text = write_sphere(fig3)
    assert client.post("/api/contig", json={"f": text, "g": text}).get_json() == {"contiguous": True}


def test_degree(client, fig10):
    text = write_sphere(fig10)
    assert client.post("/api/degree", json={"sphere": text}).get_json() == {"degree": -1}
    assert client.post("/api/degree", json={"sphere": text, "face": ["e1", "e3", "e2"]}).get_json() == {"degree": 1}


def test_explicit_complex(client):
    body = {"complex": "basepoint a\na b c\n", "sphere": "sphere 2 2\na a a\na b a\na a a\n"}
    resp = client.post("/api/validate", json=body)
    assert resp.status_code == 200
    resp = client.post("/api/degree", json=body)
    assert resp.status_code == 400
    assert resp.get_json()["error"] == "non_orientable_target"


def test_search_and_metrics(client, oct):
    bump = apply_move(constant(oct, 3, 3), spider(1, 1, oct.complex.lookup("e2")))
    body = {"f": write_sphere(bump), "g": write_sphere(constant(oct, 3, 3)), "max_states": 5000}
    resp = client.post("/api/search", json=body)
    assert resp.status_code == 200
    out = resp.get_json()
    assert out["status"] == "equivalent"
    assert out["certificate"].startswith("cert ")

    again = client.post("/api/search", json=body).get_json()
    assert again == out

    assert out["strategy"] == "bfs"

    stats = client.get("/api/metrics").get_json()
    assert stats["search"]["equivalent"] >= 1
    assert stats["search"]["by_kind"]["sphere/bfs"]["runs"] >= 1
    assert stats["requests"]["requests"] >= 2
    assert stats["requests"]["endpoints"]["/api/search"]["ok"] >= 2


def test_search_strategy_field(client, oct):
    bump = apply_move(constant(oct, 3, 3), spider(1, 1, oct.complex.lookup("e2")))
    body = {"f": write_sphere(bump), "g": write_sphere(constant(oct, 3, 3)), "max_states": 5000}
    sized = client.post("/api/search", json={**body, "strategy": "sized"}).get_json()
    assert sized["strategy"] == "sized"
    assert sized["status"] == "equivalent"

    resp = client.post("/api/search", json={**body, "strategy": "dfs"})
    assert resp.status_code == 400
    assert resp.get_json()["error"] == "invalid_strategy"


def test_metrics_split_requests_by_outcome(client, fig3):
    metrics_service.reset()
    text = write_sphere(fig3)
    client.post("/api/search", json={"f": text, "g": text, "max_states": "lots"})
    client.post("/api/validate", json={"sphere": text})
    stats = client.get("/api/metrics").get_json()["requests"]
    assert stats["endpoints"]["/api/search"] == {"ok": 0, "rejected": 1, "failed": 0}
    assert stats["rejected"] >= 1
    assert 0 < stats["error_rate"] < 1


def test_search_rejects_bad_budget(client, fig3):
    text = write_sphere(fig3)
    resp = client.post("/api/search", json={"f": text, "g": text, "max_states": "lots"})
    assert resp.status_code == 400


def test_examples(client, oct, fig10):
    resp = client.get("/api/examples/fig10")
    assert resp.get_json()["sphere"] == write_sphere(fig10)
    resp = client.get("/api/examples/octahedron")
    assert resp.get_json()["complex"] == write_complex(oct.complex, oct.basepoint)
    assert client.get("/api/examples/cube").status_code == 404
