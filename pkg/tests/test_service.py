"""The HTTP surface: every CLI command has a service endpoint behind it."""

import pytest
from fastapi.testclient import TestClient

from subdisc.service.app import create_app


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


def test_health(client):
    resp = client.get("/api/health")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


def test_spectral_all_ones(client):
    resp = client.post("/api/spectral", json={"sequence": {"prefix": [], "tail": 1}})
    assert resp.status_code == 200
    data = resp.json()
    assert data["mu"] == "1/2"
    assert data["lam"] == "5/2"
    assert data["density"] == "3/4"
    assert data["avg_length"] == "4/3"
    assert data["Q"] == {"coeffs": [-5, 2], "text": "2x - 5"}
    kinds = [r["kind"] for r in data["roots"]]
    assert kinds == ["perron"]


def test_spectral_roots_199(client):
    resp = client.post("/api/spectral", json={"sequence": {"prefix": [1], "tail": 9}})
    data = resp.json()
    assert data["lam"] == "17/4"
    assert data["lengths"] == ["1", "13/4"]
    by_kind = {r["kind"]: r for r in data["roots"]}
    assert by_kind["genuine-eigenvalue"]["lambda_star"] == "-5/2"


def test_count_endpoint(client):
    resp = client.post("/api/count", json={"sequence": {"prefix": [], "tail": 1}, "n_max": 5})
    assert resp.json()["counts"] == ["1", "2", "5", "12", "30", "74"]


def test_discrepancy_endpoint(client):
    resp = client.post(
        "/api/discrepancy",
        json={"sequence": {"prefix": [], "tail": 1}, "n_max": 4},
    )
    data = resp.json()
    assert data["density"] == "3/4"
    rows = data["rows"]
    assert rows[0]["exact"] == "1/4"
    assert rows[1]["exact"] == "1/8"
    assert all(row["radius"] == "0" for row in rows)


def test_catalan_check_endpoint(client):
    resp = client.post(
        "/api/catalan-check",
        json={"sequence": {"prefix": [], "tail": 1}, "n_max": 30},
    )
    data = resp.json()
    assert data["passed"] is True
    assert data["identity_checked"] and data["twist_checked"]


def test_twist_endpoint(client):
    resp = client.post(
        "/api/twist", json={"sequence": {"prefix": [1, 1, 3], "tail": 4}, "n_max": 30}
    )
    data = resp.json()
    assert data["R"]["text"] == "x"
    assert data["g"]["text"] == "x + 2"
    assert data["alpha"] == [-2] and data["beta"] == [0, -1]
    assert data["q"] == 0
    assert data["passed"] is True
    assert data["x_a"]["prefix"] == ["-3", "1", "7", "11"]
    assert data["x_a"]["tail"] == "12"


def test_asymptotics_endpoint(client):
    resp = client.post(
        "/api/asymptotics", json={"sequence": {"prefix": [1], "tail": 9}, "n_max": 120}
    )
    data = resp.json()
    assert data["leading"]["base"] == "17/4"
    assert data["leading"]["coefficient_estimate"] == "5/8"
    [term] = data["terms"]
    assert term["base"] == "-5/2"
    assert term["snapped"] == "1/4"


def test_figures_endpoint(client):
    resp = client.post("/api/figures", json={"n_max": 8, "names": ["complex-modulus-ratio"]})
    [fig] = resp.json()["figures"]
    assert fig["name"] == "complex-modulus-ratio"
    assert fig["csv"].startswith("n,value\n")
    assert len(fig["csv"].strip().split("\n")) == 9


def test_usage_errors_are_400(client):
    resp = client.post("/api/spectral", json={"sequence": {"prefix": [0, 2], "tail": 2}})
    assert resp.status_code == 400
    assert "a0 must be positive" in resp.json()["detail"]
    resp = client.post("/api/count", json={"sequence": {"prefix": [], "tail": 1}, "n_max": -3})
    assert resp.status_code == 400
    resp = client.post("/api/figures", json={"names": ["nope"]})
    assert resp.status_code == 400


def test_validation_errors_are_422(client):
    resp = client.post("/api/spectral", json={"sequence": {"prefix": "x"}})
    assert resp.status_code == 422
