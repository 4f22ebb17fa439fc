import pytest
from fastapi.testclient import TestClient

from main import app
from utils.GraphFile import parse_graph


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


@pytest.fixture(scope="module")
def simulated(client):
    response = client.post("/graph/simulate", json={"p": 5, "N": 2, "n": 400, "seed": 3})
    assert response.status_code == 200
    return response.json()


def test_health(client):
    assert client.get("/health").json() == {"status": "healthy"}
    assert client.get("/").status_code == 200


def test_simulate_returns_graph_and_data(simulated):
    g = parse_graph(simulated["graph"])
    assert g.p == 5 and g.labels == ("X0", "X1", "X2", "X3", "X4")
    rows = simulated["dataset_csv"].splitlines()
    assert rows[0] == "X0,X1,X2,X3,X4" and len(rows) == 401
    assert len(simulated["params_digest"]) == 64


def test_simulate_is_deterministic(client, simulated):
    again = client.post("/graph/simulate", json={"p": 5, "N": 2, "n": 400, "seed": 3}).json()
    assert again == simulated


@pytest.mark.parametrize("body", [{"p": 0}, {"p": 4, "N": 5}, {"p": 4, "n": 0}])
def test_simulate_rejects_bad_requests(client, body):
    assert client.post("/graph/simulate", json=body).status_code == 422


def test_learn_then_score(client, simulated):
    response = client.post(
        "/graph/learn",
        files={"dataset": ("data.csv", simulated["dataset_csv"], "text/csv")},
        data={"alpha": "0.01", "variant": "stable-conservative", "order": "X4,X3,X2,X1,X0"},
    )
    assert response.status_code == 200
    body = response.json()
    learned = parse_graph(body["graph"])
    assert learned.labels == ("X0", "X1", "X2", "X3", "X4")
    assert body["variant"] == "stable-conservative" and body["ci_tests"] > 0

    scored = client.post(
        "/graph/score", json={"learned": body["graph"], "truth": simulated["graph"]}
    )
    assert scored.status_code == 200
    metrics = scored.json()
    assert 0.0 <= metrics["acc"] <= 1.0 and metrics["shd"] >= 0


def test_score_identical_graphs(client, simulated):
    metrics = client.post(
        "/graph/score", json={"learned": simulated["graph"], "truth": simulated["graph"]}
    ).json()
    assert metrics["acc"] == 1.0 and metrics["tpr"] == 1.0 and metrics["fp"] == 0


@pytest.mark.parametrize(
    "data, csv",
    [
        ({"variant": "stable-sometimes"}, "a,b\n1,2\n3,5\n4,4\n"),
        ({}, "a,b\n1,x\n"),
        ({"order": "a,q"}, "a,b\n1,2\n3,5\n4,4\n"),
    ],
)
def test_learn_rejects_bad_input(client, data, csv):
    response = client.post(
        "/graph/learn", files={"dataset": ("data.csv", csv, "text/csv")}, data=data
    )
    assert response.status_code == 422
    assert response.json()["detail"]["error"] == "ValidationException"


def test_score_reports_format_and_size_errors(client):
    bad = client.post("/graph/score", json={"learned": "p 2\n0 => 1\n", "truth": "p 2\n"})
    assert bad.status_code == 400
    assert bad.json()["detail"]["error"] == "GraphFormatException"
    mismatch = client.post("/graph/score", json={"learned": "p 2\n", "truth": "p 3\n"})
    assert mismatch.status_code == 422


def test_stored_results_are_served_by_experiment(client):
    from Database.core import get_session
    from Models.ExperimentModel import MetricRecord
    from Services.BenchService.RunBenchmarkService import StoreRecords

    records = [
        MetricRecord(p=5, n=100, N=2.0, alpha=0.01, variant=v, repetition=0, seed=11, shd=s)
        for v, s in (("stable-plain", 2), ("original-plain", 3))
    ]
    db = get_session()
    try:
        StoreRecords(db, records, "api-results")
    finally:
        db.close()

    response = client.get("/graph/results/api-results")
    assert response.status_code == 200
    body = response.json()
    assert [r["variant"] for r in body] == ["original-plain", "stable-plain"]
    assert [r["shd"] for r in body] == [3, 2]
    assert client.get("/graph/results/never-stored").json() == []
