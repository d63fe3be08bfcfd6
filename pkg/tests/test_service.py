"""HTTP facade tests: endpoint contracts, CLI parity, session isolation."""

from __future__ import annotations

from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from semgraph.measures import similarity_detail
from semgraph.service import create_app

CORPUS = Path(__file__).parent / "data" / "corpus"

BASE = ["bird", "crayon", "desk", "hand", "paper"]
CANDIDATES = ["drawing", "sketch", "greeting_card", "origami"]


@pytest.fixture(scope="module")
def client(wn31):
    return TestClient(create_app(wn31))


def test_health(client, wn31):
    payload = client.get("/health").json()
    assert payload["status"] == "ok"
    assert payload["constants"]["max_vertices"] == 82192
    assert payload["version"]


def test_measures_catalog(client):
    payload = client.get("/measures").json()
    assert len(payload["measures"]) == 49


def test_similarity_matches_engine(client, wn31):
    response = client.post("/similarity", json={
        "x": "bird", "y": "paper",
        "measures": ["sim:lin:sanchez-batet", "sim:rada"]})
    assert response.status_code == 200
    rows = response.json()["measures"]
    for row in rows:
        want, detail = similarity_detail(wn31, "bird", "paper", row["measure"])
        assert row["value"] == pytest.approx(want, rel=1e-15)
        assert row["distance"] == detail["distance"]


def test_similarity_identical_words_rejected(client):
    response = client.post("/similarity", json={"x": "bird", "y": "bird"})
    assert response.status_code == 422
    body = response.json()
    assert set(body) == {"code", "message", "details"}


def test_similarity_unknown_word(client):
    response = client.post("/similarity", json={"x": "bird", "y": "zzqqy"})
    assert response.status_code == 422
    body = response.json()
    assert body["code"] == "unknown_word"
    assert body["details"]["word"] == "zzqqy"


def test_session_worked_example_flow(client):
    created = client.post("/session", json={
        "base": BASE, "candidates": CANDIDATES}).json()
    sid = created["session_id"]
    assert created["current_average"] == pytest.approx(0.39, abs=0.01)
    assert created["measure"] == "sim:lin:sanchez-batet"

    top = client.post(f"/session/{sid}/propose", json={"k": 1}).json()
    assert top["proposals"][0]["candidate"] == "origami"
    assert top["proposals"][0]["projected_average"] == \
        pytest.approx(0.29, abs=0.01)

    client.post(f"/session/{sid}/decision",
                json={"candidate": "origami", "decision": "rejected"})
    top = client.post(f"/session/{sid}/propose", json={"k": 1}).json()
    assert top["proposals"][0]["candidate"] == "greeting_card"

    state = client.post(f"/session/{sid}/decision",
                        json={"candidate": "greeting_card",
                              "decision": "accepted"}).json()
    assert len(state["base"]) == 6
    assert state["current_average"] == pytest.approx(0.35, abs=0.01)
    assert [h["decision"] for h in state["history"]] == \
        ["rejected", "accepted"]

    fetched = client.get(f"/session/{sid}").json()
    assert fetched == state


def test_session_accept_updates_average(client):
    sid = client.post("/session", json={
        "base": BASE, "candidates": CANDIDATES}).json()["session_id"]
    client.post(f"/session/{sid}/propose", json={})
    state = client.post(f"/session/{sid}/decision",
                        json={"candidate": "origami",
                              "decision": "accepted"}).json()
    assert state["current_average"] == pytest.approx(0.29, abs=0.01)


def test_session_double_decision_conflict(client):
    sid = client.post("/session", json={
        "base": BASE, "candidates": CANDIDATES}).json()["session_id"]
    client.post(f"/session/{sid}/propose", json={})
    first = client.post(f"/session/{sid}/decision",
                        json={"candidate": "origami", "decision": "rejected"})
    assert first.status_code == 200
    second = client.post(f"/session/{sid}/decision",
                         json={"candidate": "origami", "decision": "rejected"})
    assert second.status_code == 409
    assert second.json()["code"] == "double_decision"


def test_session_isolation(client):
    s1 = client.post("/session", json={"base": BASE,
                                       "candidates": CANDIDATES}).json()
    s2 = client.post("/session", json={"base": BASE,
                                       "candidates": CANDIDATES}).json()
    client.post(f"/session/{s1['session_id']}/propose", json={})
    client.post(f"/session/{s1['session_id']}/decision",
                json={"candidate": "origami", "decision": "accepted"})
    other = client.get(f"/session/{s2['session_id']}").json()
    assert other["current_average"] == pytest.approx(0.39, abs=0.01)
    assert "origami" in other["pool"]


def test_session_unknown_id(client):
    assert client.get("/session/nope").status_code == 404
    assert client.post("/session/nope/propose", json={}).status_code == 404


def test_session_unresolvable_base(client):
    response = client.post("/session", json={"base": ["bird", "qqzz"],
                                             "candidates": []})
    assert response.status_code == 422
    assert "qqzz" in response.json()["message"]


def test_session_empty_pool_proposes_nothing(client):
    sid = client.post("/session", json={"base": ["bird", "paper"],
                                        "candidates": []}).json()["session_id"]
    payload = client.post(f"/session/{sid}/propose", json={}).json()
    assert payload["proposals"] == []


def test_propose_k_larger_than_pool(client):
    sid = client.post("/session", json={
        "base": BASE, "candidates": CANDIDATES}).json()["session_id"]
    payload = client.post(f"/session/{sid}/propose", json={"k": 99}).json()
    assert len(payload["proposals"]) == 4


def test_analyze_endpoint(client):
    transcripts = [{"source_id": p.stem, "text": p.read_text()}
                   for p in sorted(CORPUS.glob("*.txt"))]
    response = client.post("/analyze", json={
        "transcripts": transcripts,
        "measures": ["sim:lin:sanchez-batet"], "t": 3})
    assert response.status_code == 200
    payload = response.json()
    assert payload["report"]["constants"]["max_vertices"] == 82192
    trends = payload["trends"]
    by_subject = {r["subject"]: r["classification"] for r in trends
                  if r["measure"] == "sim:lin:sanchez-batet"}
    assert by_subject == {"convergent": "convergence",
                          "divergent": "divergence"}


def test_analyze_endpoint_failure_reported(client):
    response = client.post("/analyze", json={
        "transcripts": [{"source_id": "tiny", "text": "J1: The dog ran."}],
        "measures": ["sim:rada"]})
    assert response.status_code == 200
    payload = response.json()
    assert payload["report"]["failures"]
    assert "minimum 15" in payload["report"]["failures"][0]["error"]


def test_service_matches_cli_output(client, wn31):
    """Pure queries through the service equal the CLI for the same inputs."""
    import json as _json

    from click.testing import CliRunner

    from semgraph.cli import main as cli_main
    from conftest import WN31_DIR

    runner = CliRunner()
    result = runner.invoke(cli_main, [
        "--db", str(WN31_DIR), "sim", "bird", "paper",
        "--measures", "sim:lin:sanchez-batet,sim:rada", "--format", "json"])
    assert result.exit_code == 0
    cli_rows = {r["measure"]: r for r in
                _json.loads(result.output)["measures"]}
    api_rows = {r["measure"]: r for r in client.post("/similarity", json={
        "x": "bird", "y": "paper",
        "measures": ["sim:lin:sanchez-batet", "sim:rada"]}).json()["measures"]}
    assert set(cli_rows) == set(api_rows)
    for measure, row in cli_rows.items():
        assert api_rows[measure]["value"] == row["value"]
        assert api_rows[measure]["distance"] == row["distance"]
        assert api_rows[measure]["lcs_offset"] == row["lcs_offset"]
