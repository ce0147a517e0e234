"""HTTP surface: delegation to the engine, error codes, blind mode."""

import pytest
from fastapi.testclient import TestClient

from hunches.externalization.axes import AxisSpec, ChartViewSpec
from hunches.service.app import create_app

CSV = "id,year,attendance\n2017,2017,2960\n2018,2018,3300\n2019,2019,3800\n2020,2020,0\n2021,2021,5000\n"


@pytest.fixture
def client(tmp_path):
    app = create_app(tmp_path)
    with TestClient(app) as c:
        yield c
    app.state.engine.close()


def as_user(user, role=None):
    headers = {"X-Author-Id": user}
    if role:
        headers["X-Author-Role"] = role
    return headers


def ingest(client, dataset_id="chi"):
    r = client.post(
        f"/datasets?dataset_id={dataset_id}&id_field=id",
        content=CSV,
        headers={"content-type": "text/csv"},
    )
    assert r.status_code == 201, r.text
    return r.json()


def register_view(client, dataset_id="chi"):
    r = client.post(
        f"/datasets/{dataset_id}/chart-views",
        json={
            "view_id": "main",
            "chart_kind": "scatter",
            "x_axis": {"field": "year", "scale": "linear", "domain": [2016, 2022], "range_px": [0, 600]},
            "y_axis": {"field": "attendance", "scale": "linear", "domain": [0, 6000], "range_px": [400, 0]},
            "item_anchor": {
                "2017": [100, 202.66], "2018": [200, 180], "2019": [300, 146.66],
                "2020": [400, 400], "2021": [500, 66.66],
            },
        },
    )
    assert r.status_code == 201, r.text
    return r.json()


def test_missing_author_is_401(client):
    ingest(client)
    r = client.post("/datasets/chi/hunches", json={"technique": "annotation", "text": "x"})
    assert r.status_code == 401
    assert r.json()["error"]["code"] == "AUTH_REQUIRED"


def test_dataset_descriptor_and_fetch(client):
    desc = ingest(client)
    assert desc["n_items"] == 5
    r = client.get("/datasets/chi")
    assert r.status_code == 200
    assert r.json()["fingerprint"] == desc["fingerprint"]
    assert client.get("/datasets/nope").json()["error"]["code"] == "UNKNOWN_DATASET"


def test_manipulation_equals_engine_inverse(client):
    ingest(client)
    register_view(client)
    r = client.post(
        "/datasets/chi/hunches",
        json={"technique": "manipulation", "view_id": "main", "item": "2020", "px": 400, "py": 200},
        headers=as_user("u1"),
    )
    assert r.status_code == 201, r.text
    axis = AxisSpec("attendance", "linear", (0.0, 6000.0), (400.0, 0.0))
    assert r.json()["payload"]["values"]["2020"] == pytest.approx(axis.invert(200.0))


def test_unknown_hunch_in_view_query(client):
    ingest(client)
    r = client.get("/datasets/chi/views?hunches=ghost")
    assert r.status_code == 404
    assert r.json()["error"]["code"] == "UNKNOWN_HUNCH"


def test_zero_hunch_summary_is_zero_grid(client):
    ingest(client)
    register_view(client)
    r = client.get("/datasets/chi/summary?grid=3x2&view=main")
    body = r.json()
    assert body["total"] == 0
    assert body["heatmap"] == [[0, 0, 0], [0, 0, 0]]


def test_validation_report_returned_in_full(client):
    ingest(client)
    r = client.post(
        "/datasets/chi/hunches",
        json={
            "technique": "elicitation",
            "scope": {"kind": "whole_dataset"},
            "question_kind": "trust_rating",
            "answer": 11,
        },
        headers=as_user("u1"),
    )
    assert r.status_code == 422
    body = r.json()["error"]
    assert body["code"] == "VALIDATION_FAILED"
    assert any(v["rule"] == "assessment.rating" for v in body["detail"]["violations"])


def test_api_matches_engine_for_data_edit(client):
    ingest(client)
    r = client.post(
        "/datasets/chi/hunches",
        json={
            "technique": "data_edit",
            "scope": {"kind": "whole_dataset", "field_ref": "attendance"},
            "expression": "v * 2",
        },
        headers=as_user("u1"),
    )
    hid = r.json()["hunch_id"]
    view = client.get(f"/datasets/chi/views?hunches={hid}").json()
    values = [it["values"]["attendance"] for it in view["view"]["items"]]
    assert values == [5920, 6600, 7600, 0, 10000]
    # 2020 is 0; doubling keeps it 0, so exactly four deltas
    assert len(view["diff"]) == 4


def test_vote_comment_provenance_flow(client):
    ingest(client)
    a = client.post(
        "/datasets/chi/hunches",
        json={"technique": "annotation", "text": "base hunch"},
        headers=as_user("u1"),
    ).json()["hunch_id"]
    b = client.post(
        "/datasets/chi/hunches",
        json={"technique": "annotation", "text": "built on it"},
        headers=as_user("u2"),
    ).json()["hunch_id"]

    assert client.post(f"/hunches/{a}/votes", json={"value": 1}, headers=as_user("u2")).status_code == 201
    assert client.post(f"/hunches/{a}/votes", json={"value": 1}, headers=as_user("u3")).status_code == 201
    r = client.post(f"/hunches/{a}/votes", json={"value": -1}, headers=as_user("u3"))
    assert r.json()["net_votes"] == 0  # re-vote overwrote

    c1 = client.post(f"/hunches/{a}/comments", json={"text": "agree"}, headers=as_user("u2")).json()
    c2 = client.post(
        f"/hunches/{a}/comments",
        json={"text": "same here", "parent_comment_id": c1["comment_id"]},
        headers=as_user("u3"),
    ).json()
    threads = client.get(f"/hunches/{a}/comments").json()["threads"]
    assert threads[0]["comment"]["comment_id"] == c1["comment_id"]
    assert threads[0]["replies"][0]["comment"]["comment_id"] == c2["comment_id"]

    assert client.post(f"/hunches/{b}/provenance", json={"parent": a}).status_code == 201
    r = client.post(f"/hunches/{a}/provenance", json={"parent": b})
    assert r.status_code == 409
    assert r.json()["error"]["code"] == "CYCLE_DETECTED"


def test_model_points_endpoint(client):
    ingest(client)
    r = client.post(
        "/datasets/chi/hunches",
        json={
            "technique": "model",
            "model_spec": {"family": "linear", "slope": 2.0, "intercept": 0.0},
            "variance": 0.0,
            "n_points": 3,
            "domain": [1.0, 3.0],
            "seed": 9,
            "x_field": "year",
            "y_field": "attendance",
        },
        headers=as_user("u1"),
    )
    hid = r.json()["hunch_id"]
    points = client.get(f"/hunches/{hid}/model/points").json()["points"]
    assert points == [[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]]
    assert client.get(f"/hunches/{hid}/model/points").json()["points"] == points

    ann = client.post(
        "/datasets/chi/hunches",
        json={"technique": "annotation", "text": "not a model"},
        headers=as_user("u1"),
    ).json()["hunch_id"]
    assert client.get(f"/hunches/{ann}/model/points").json()["error"]["code"] == "NOT_MODEL_BASED"


def test_blind_mode_withholds_until_contribution(client):
    ingest(client)
    client.post(
        "/datasets/chi/hunches",
        json={"technique": "annotation", "text": "first"},
        headers=as_user("veteran"),
    )
    client.post("/datasets/chi/blind-mode", json={"enabled": True})

    before = client.get("/datasets/chi/hunches", headers=as_user("newbie")).json()
    assert before["total"] == 0 and before["withheld"] == 1

    client.post(
        "/datasets/chi/hunches",
        json={"technique": "annotation", "text": "my own take"},
        headers=as_user("newbie"),
    )
    after = client.get("/datasets/chi/hunches", headers=as_user("newbie")).json()
    assert after["total"] == 2 and after["withheld"] == 0

    client.post("/datasets/chi/blind-mode", json={"enabled": False})
    lifted = client.get("/datasets/chi/hunches", headers=as_user("another")).json()
    assert lifted["total"] == 2


def test_filter_query_params(client):
    ingest(client)
    client.post(
        "/datasets/chi/hunches",
        json={"technique": "annotation", "text": "from staff"},
        headers=as_user("s1", role="technical staff"),
    )
    client.post(
        "/datasets/chi/hunches",
        json={"technique": "annotation", "text": "from lay"},
        headers=as_user("l1"),
    )
    r = client.get("/datasets/chi/hunches?roles=technical staff", headers=as_user("x"))
    assert r.json()["total"] == 1
    assert r.json()["hunches"][0]["context"]["author"]["role"] == "technical staff"


def test_restart_reloads_state(tmp_path):
    app = create_app(tmp_path)
    with TestClient(app) as client:
        ingest(client)
        client.post(
            "/datasets/chi/hunches",
            json={"technique": "annotation", "text": "persists"},
            headers=as_user("u1"),
        )
    app.state.engine.close()

    app2 = create_app(tmp_path)
    with TestClient(app2) as client2:
        r = client2.get("/datasets/chi/hunches", headers=as_user("u1"))
        assert r.json()["total"] == 1
    app2.state.engine.close()
