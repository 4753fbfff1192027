"""Tests for server module."""

from fastapi.testclient import TestClient

from alm_workbench import __version__
from alm_workbench.server import app
from tests.conftest import fixture_path

client = TestClient(app)


def _document(name: str) -> str:
    return fixture_path(name).read_text(encoding="utf-8")


def _chain_document(n: int) -> str:
    """An n-element chain with + = max and ∗ = |i - j|."""
    labels = ["0"] + [f"e{i}" for i in range(1, n)]
    plus = ["  " + " ".join(labels[max(i, j)] for j in range(n)) for i in range(n)]
    star = ["  " + " ".join(labels[abs(i - j)] for j in range(n)) for i in range(n)]
    order = ", ".join(f"{a} <= {b}" for a, b in zip(labels, labels[1:], strict=False))
    return "\n".join(
        [f"algebra chain{n}", "elements: " + " ".join(labels), "plus:", *plus, "star:", *star]
        + ["order:", "  " + order, ""]
    )


class TestHealth:
    """Tests for the health endpoint."""

    def test_health(self) -> None:
        response = client.get("/health")
        assert response.status_code == 200
        assert response.json() == {"status": "healthy", "version": __version__}


class TestReports:
    """Tests for the report endpoints."""

    def test_check(self) -> None:
        response = client.post("/api/check", json={"document": _document("paper-4elem")})
        assert response.status_code == 200
        assert response.json()["verdicts"]["is_al_monoid"] is True

    def test_check_failure_is_content(self) -> None:
        response = client.post("/api/check", json={"document": _document("paper-6elem")})
        assert response.status_code == 200
        assert response.json()["verdicts"]["is_al_monoid"] is False

    def test_bad_document(self) -> None:
        response = client.post("/api/check", json={"document": "algebra broken\n"})
        assert response.status_code == 422
        assert "line" in response.json()["detail"]

    def test_missing_field(self) -> None:
        response = client.post("/api/check", json={})
        assert response.status_code == 422

    def test_ideals(self) -> None:
        response = client.post("/api/ideals", json={"document": _document("boolean-4")})
        payload = response.json()
        assert len(payload["ideals"]) == 4
        assert payload["radical"] == ["0"]
        assert payload["distant"]["is_directly_indecomposable"] is False

    def test_spectrum(self) -> None:
        response = client.post("/api/spectrum", json={"document": _document("boolean-4")})
        payload = response.json()
        assert payload["spectrum"]["primes"] == [["0", "p"], ["0", "q"]]
        assert payload["separation"]["holds"] is True

    def test_verify_subset(self) -> None:
        response = client.post(
            "/api/verify",
            json={"document": _document("paper-4elem"), "theorems": ["T-STRONG-ALL"]},
        )
        payload = response.json()
        assert payload["holds"] is False
        assert payload["checks"][0]["witness"] == ["{0,a,b}", "b"]

    def test_verify_unknown_theorem(self) -> None:
        response = client.post(
            "/api/verify",
            json={"document": _document("chain2"), "theorems": ["T-NOPE"]},
        )
        assert response.status_code == 422

    def test_spectrum_above_ideal_bound(self) -> None:
        response = client.post("/api/spectrum", json={"document": _chain_document(17)})
        assert response.status_code == 422
        assert "exceeds bound" in response.json()["detail"]
