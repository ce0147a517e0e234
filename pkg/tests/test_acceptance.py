"""Acceptance suite: one test per criterion, one printed line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the pass/fail lines.
"""

import functools
import itertools
import math
import random
import time
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from helpers import author, build_hunch, random_payload_and_scope, simple_dataset, xy_dataset
from oracles import brute_consensus, brute_outliers, brute_rank, kahn_toposort
from hunches.communication.consensus import consensus_for_item
from hunches.communication.curation import CurationState, cast_vote, link_provenance, rank_hunches
from hunches.communication.filtering import WeightSpec
from hunches.core import (
    Assessment,
    Directionality,
    Exclusion,
    LinearModel,
    MarkupStrokes,
    ModelBased,
    Scope,
    Value,
    apply_hunch_view,
    diff_view,
    model_eval,
)
from hunches.errors import CorruptFile, CycleDetected, SelfLink
from hunches.externalization.axes import AxisSpec, ChartViewSpec
from hunches.externalization.glyphs import (
    arrow_glyph,
    hline_glyph,
    jitter_strokes,
    random_noncrossing_pair,
    strike_glyph,
)
from hunches.externalization.models import flag_model_outliers, generate_model_points
from hunches.externalization.sketch import transcribe_markup
from hunches.jsonutil import canonical_dumps
from hunches.service.app import create_app
from hunches.store import hunchfile as hf
from hunches.store.workspace import Workspace, replay

GOLDEN = Path(__file__).parent / "golden" / "hunchfile_v1.json"


def criterion(name):
    def wrap(fn):
        @functools.wraps(fn)
        def inner(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"\nACCEPTANCE FAIL  {name}")
                raise
            print(f"\nACCEPTANCE PASS  {name}")

        return inner

    return wrap


# ---------------------------------------------------------------------------

@criterion("immutability: 1000 mutation sequences leave the base dataset untouched")
def test_c1_immutability(tmp_path):
    rng = random.Random(2026)
    dataset = simple_dataset(values=(3.0, 1.0, 4.0, 1.5, 9.0), dataset_id="seeded")
    started = time.monotonic()
    with Workspace.create(tmp_path, dataset) as ws:
        original_bytes = ws.dataset_bytes()
        original_fp = ws.dataset.fingerprint
        used = set()
        hunch_ids = []
        for seq in range(1000):
            for _ in range(rng.randint(1, 4)):
                move = rng.random()
                if move < 0.45 or not hunch_ids:
                    payload, scope = random_payload_and_scope(rng, dataset, used)
                    h = build_hunch(dataset, payload, scope)
                    ws.add_hunch(h)
                    hunch_ids.append(h.hunch_id)
                elif move < 0.7:
                    ws.vote(rng.choice(hunch_ids), author(f"v{rng.randint(0, 20)}"), rng.choice([1, -1]))
                elif move < 0.9:
                    ws.comment(rng.choice(hunch_ids), author("c"), f"comment {seq}")
                else:
                    try:
                        ws.link(rng.choice(hunch_ids), rng.choice(hunch_ids))
                    except (CycleDetected, SelfLink):
                        pass
            if seq % 97 == 0:
                ws.save()
            assert ws.dataset_bytes() == original_bytes
            assert ws.dataset.fingerprint == original_fp
    elapsed = time.monotonic() - started
    assert elapsed < 60.0, f"took {elapsed:.1f}s"


@criterion("tag coherence: diff deltas equal derived tags on 500 random pairs")
def test_c2_tag_coherence():
    rng = random.Random(500)
    for trial in range(500):
        n = rng.randint(2, 8)
        ds = xy_dataset(
            [(float(k), rng.uniform(-20, 20)) for k in range(n)], dataset_id=f"tc{trial}"
        )
        identity = apply_hunch_view(ds, [])
        assert diff_view(ds, identity) == []

        used = set()
        hunches = []
        excluded = set()
        for _ in range(rng.randint(1, 6)):
            payload, scope = random_payload_and_scope(rng, ds, used)
            if scope.item_refs & excluded:
                continue
            if isinstance(payload, Exclusion):
                excluded |= scope.item_refs
            hunches.append(build_hunch(ds, payload, scope))
        view = apply_hunch_view(ds, hunches)
        deltas = diff_view(ds, view)
        assert {(d.item_id, d.field) for d in deltas} == view.derived_pairs()
        assert len(deltas) == len({(d.item_id, d.field) for d in deltas})


@criterion("inverse mapping: 10000 roundtrips within 0.5% of domain width")
def test_c3_inverse_roundtrip():
    rng = random.Random(11)
    for _ in range(10_000):
        scale = rng.choice(["linear", "log10"])
        if scale == "log10":
            d_lo = 10 ** rng.uniform(-3, 3)
            d_hi = d_lo * 10 ** rng.uniform(0.05, 4)
        else:
            d_lo = rng.uniform(-1e4, 1e4)
            d_hi = d_lo + 10 ** rng.uniform(-2, 5)
        p0 = rng.uniform(0, 2000)
        p1 = p0 + rng.choice([-1, 1]) * rng.uniform(10, 2000)
        axis = AxisSpec("f", scale, (d_lo, d_hi), (p0, p1))
        v = rng.uniform(d_lo, d_hi)
        assert abs(axis.invert(axis.project(v)) - v) <= 0.005 * (d_hi - d_lo)


@criterion("recognizer: >=95% per glyph on jittered corpus; zero false exclusions")
def test_c4_recognizer_corpus():
    rng = random.Random(404)
    view = ChartViewSpec(
        "cal",
        "scatter",
        AxisSpec("x", "linear", (0.0, 100.0), (0.0, 400.0)),
        AxisSpec("y", "linear", (0.0, 100.0), (400.0, 0.0)),
        {"i1": (200.0, 200.0), "i2": (60.0, 340.0), "i3": (340.0, 60.0)},
    )
    ds = xy_dataset([(50.0, 50.0), (15.0, 15.0), (85.0, 85.0)])
    cx, cy = 200.0, 200.0

    def run(make, check):
        hits = 0
        for _ in range(200):
            strokes = MarkupStrokes.of(jitter_strokes(make(), rng))
            t = transcribe_markup(strokes, view, ds)
            if t is not None and check(t):
                hits += 1
        return hits

    assert run(lambda: strike_glyph(cx, cy), lambda t: isinstance(t.payload, Exclusion) and "i1" in t.item_ids) >= 190
    assert run(lambda: arrow_glyph(cx, cy, "higher"), lambda t: isinstance(t.payload, Directionality) and t.payload.direction == "higher") >= 190
    assert run(lambda: arrow_glyph(cx, cy, "lower"), lambda t: isinstance(t.payload, Directionality) and t.payload.direction == "lower") >= 190
    assert run(lambda: hline_glyph(cx - 40, cx + 40, cy), lambda t: isinstance(t.payload, Value) and "i1" in t.item_ids) >= 190

    false_exclusions = 0
    for _ in range(200):
        strokes = MarkupStrokes.of(random_noncrossing_pair(rng, cx, cy))
        t = transcribe_markup(strokes, view, ds)
        if t is not None and isinstance(t.payload, Exclusion):
            false_exclusions += 1
    assert false_exclusions == 0


@criterion("models: exact sd=0 curve, seeded determinism, sane moments, oracle outliers")
def test_c5_model_suite():
    # sd = 0 lies exactly on the curve
    exact = ModelBased(LinearModel(2.5, -1.0), 0.0, 7, (0.0, 3.0), seed=1)
    for x, y in generate_model_points(exact):
        assert y == model_eval(exact.model, x)

    # fixed seed, byte-identical lists across two runs
    noisy = ModelBased(LinearModel(1.0, 0.0), 2.0, 64, (0.0, 10.0), seed=90210)
    assert canonical_dumps(generate_model_points(noisy)) == canonical_dumps(
        generate_model_points(noisy)
    )

    # large-sample residual moments
    big = ModelBased(LinearModel(0.5, 2.0), 1.0, 10_000, (0.0, 50.0), seed=3)
    residuals = [y - model_eval(big.model, x) for x, y in generate_model_points(big)]
    mean = sum(residuals) / len(residuals)
    sd = math.sqrt(sum((r - mean) ** 2 for r in residuals) / (len(residuals) - 1))
    assert abs(mean) <= 0.05
    assert 0.9 <= sd <= 1.1

    # outlier flagging equals brute force on 100 random instances
    rng = random.Random(700)
    for trial in range(100):
        pts = [(rng.uniform(-20, 20), rng.uniform(-50, 50)) for _ in range(rng.randint(1, 30))]
        ds = xy_dataset(pts, dataset_id=f"o{trial}")
        slope, intercept = rng.uniform(-4, 4), rng.uniform(-10, 10)
        sd_m, k = rng.uniform(0.1, 8), rng.uniform(0.1, 5)
        got = flag_model_outliers(ds, "x", "y", LinearModel(slope, intercept), sd_m, k)
        assert got == brute_outliers(ds, "x", "y", lambda x: slope * x + intercept, sd_m, k)


@criterion("aggregation: consensus and ranking match brute force (exhaustive <=4, random <=20)")
def test_c6_aggregation_oracles():
    rng = random.Random(88)

    # Randomized consensus instances, up to 20 hunches each.
    for trial in range(100):
        ds = simple_dataset(
            values=tuple(rng.uniform(-10, 10) for _ in range(rng.randint(2, 6))),
            dataset_id=f"agg{trial}",
        )
        used = set()
        hunches = [
            build_hunch(ds, *random_payload_and_scope(rng, ds, used))
            for _ in range(rng.randint(0, 20))
        ]
        for item_id in ds.item_ids:
            got = consensus_for_item(hunches, item_id, ds)
            want = brute_consensus(hunches, item_id, ds)
            assert got.n_hunches == want["n_hunches"]
            assert got.direction_tally == want["direction_tally"]
            if want["value_stats"] is None:
                assert got.value_stats is None
            else:
                assert got.value_stats == pytest.approx(want["value_stats"])
            assert got.range_overlap == want["range_overlap"]
            assert (got.mean_assessment is None) == (want["mean_assessment"] is None)
            if want["mean_assessment"] is not None:
                assert got.mean_assessment == pytest.approx(want["mean_assessment"])

    # Exhaustive vote/weight combinations for up to 4 hunches, 2 voters.
    ds = simple_dataset()
    weight_grid = [
        WeightSpec(),
        WeightSpec(context_weight=0.0),
        WeightSpec(context_weight=1.0),
        WeightSpec(confidence_scaling=True),
    ]
    for n in range(1, 5):
        hs = [
            build_hunch(
                ds, Assessment(3), Scope.whole_dataset(),
                rationale="ctx" if k % 2 else None,
                confidence=(k % 5) + 1 if k % 3 else None,
                created_at=f"2026-01-01T00:00:{k:02d}.000Z",
            )
            for k in range(n)
        ]
        base = CurationState(hunch_ids=frozenset(h.hunch_id for h in hs))
        for combo in itertools.product([None, 1, -1], repeat=2 * n):
            state, votes, k = base, {}, 0
            for h in hs:
                for voter in ("a", "b"):
                    if combo[k] is not None:
                        state = cast_vote(state, h.hunch_id, author(voter), combo[k])
                        votes[(h.hunch_id, voter)] = combo[k]
                    k += 1
            for weights in weight_grid:
                got = rank_hunches(hs, state, weights)
                want = brute_rank(hs, votes, weights.context_weight, 1.0, weights.confidence_scaling)
                assert [(h.hunch_id, s) for h, s in got] == [(h.hunch_id, s) for h, s in want]

    # Randomized ranking instances beyond 4 hunches.
    for trial in range(40):
        hs = [
            build_hunch(
                ds, Assessment(rng.randint(1, 5)), Scope.whole_dataset(),
                rationale=rng.choice([None, "ctx"]),
                confidence=rng.choice([None, 1, 2, 3, 4, 5]),
                created_at=f"2026-01-02T00:{rng.randint(0, 59):02d}:00.000Z",
            )
            for _ in range(rng.randint(5, 20))
        ]
        state = CurationState(hunch_ids=frozenset(h.hunch_id for h in hs))
        votes = {}
        for h in hs:
            for voter in ("a", "b", "c"):
                v = rng.choice([None, 1, -1])
                if v is not None:
                    state = cast_vote(state, h.hunch_id, author(voter), v)
                    votes[(h.hunch_id, voter)] = v
        weights = WeightSpec(
            context_weight=rng.choice([0.0, 1.0, 2.0]),
            confidence_scaling=rng.choice([True, False]),
        )
        got = rank_hunches(hs, state, weights)
        want = brute_rank(hs, votes, weights.context_weight, 1.0, weights.confidence_scaling)
        assert [(h.hunch_id, s) for h, s in got] == [(h.hunch_id, s) for h, s in want]


@criterion("provenance: 1000 edge insertions stay topologically sortable; cycles rejected")
def test_c7_provenance():
    rng = random.Random(1000)
    nodes = [f"h{k}" for k in range(30)]
    state = CurationState(hunch_ids=frozenset(nodes))
    accepted: set = set()
    rejected = 0
    for _ in range(1000):
        child, parent = rng.choice(nodes), rng.choice(nodes)
        try:
            state = link_provenance(state, child, parent)
        except SelfLink:
            rejected += 1
            assert child == parent
            continue
        except CycleDetected:
            rejected += 1
            assert kahn_toposort(nodes, accepted | {(child, parent)}) is None
            continue
        accepted.add((child, parent))
        assert kahn_toposort(nodes, accepted) is not None
    assert rejected > 0  # the workload genuinely attempted cycles
    assert state.provenance_edges == frozenset(accepted)


@criterion("persistence: golden fixed point, 50 session replays, truncation detection")
def test_c8_persistence(tmp_path):
    # Golden file: parse -> serialize is byte-identical, unknown fields intact.
    golden_bytes = GOLDEN.read_bytes()
    loaded = hf.loads(golden_bytes)
    assert hf.dumps(loaded) == golden_bytes
    assert loaded.extra["x_tool_metadata"]["exporter"] == "golden-fixture"
    assert loaded.stale_hunch_ids() == {"h-golden-0003"}

    # Truncation is detected.
    with pytest.raises(CorruptFile):
        hf.loads(golden_bytes[: len(golden_bytes) - 40])

    # 50 recorded sessions replay to identical state.
    rng = random.Random(50)
    for session in range(50):
        root = tmp_path / f"s{session}"
        ds = simple_dataset(
            values=tuple(rng.uniform(0, 10) for _ in range(rng.randint(2, 5))),
            dataset_id=f"sess{session}",
        )
        with Workspace.create(root, ds) as ws:
            used = set()
            ids = []
            for k in range(rng.randint(3, 12)):
                payload, scope = random_payload_and_scope(rng, ds, used)
                h = build_hunch(ds, payload, scope)
                ws.add_hunch(h)
                ids.append(h.hunch_id)
                if rng.random() < 0.5:
                    ws.vote(rng.choice(ids), author(f"v{k}"), rng.choice([1, -1]))
                if rng.random() < 0.3:
                    ws.comment(rng.choice(ids), author(f"v{k}"), f"note {k}")
                if rng.random() < 0.2 and len(ids) >= 2:
                    try:
                        ws.link(ids[-1], rng.choice(ids[:-1]))
                    except (CycleDetected, SelfLink):
                        pass
            live = ws.state_bytes()
        assert replay(root, ds.dataset_id).state_bytes() == live


# ---------------------------------------------------------------------------
# Scenario tests, end to end over HTTP

def as_user(user, role=None):
    headers = {"X-Author-Id": user}
    if role:
        headers["X-Author-Role"] = role
    return headers


@criterion("scenario: clinician directionality hunch, role-filterable, in consensus")
def test_c9a_clinician_scenario(tmp_path):
    app = create_app(tmp_path)
    with TestClient(app) as client:
        csv = (
            "case_id,recycled_blood_ml\n"
            "s1,120\ns2,0\ns3,45\ns4,10\n"
        )
        r = client.post(
            "/datasets?dataset_id=surgeries&id_field=case_id",
            content=csv,
            headers={"content-type": "text/csv"},
        )
        assert r.status_code == 201

        r = client.post(
            "/datasets/surgeries/hunches",
            json={
                "technique": "elicitation",
                "scope": {"kind": "whole_dataset", "field_ref": "recycled_blood_ml"},
                "question_kind": "direction_choice",
                "answer": "higher",
                "confidence": 4,
                "free_note": "recycled blood is rarely charted in the EHR; true use is far higher",
            },
            headers=as_user("dr-kim", role="clinician"),
        )
        assert r.status_code == 201, r.text
        doc = r.json()
        assert doc["payload"] == {"type": "directionality", "direction": "higher"}
        assert doc["context"]["rationale"].startswith("recycled blood")

        by_role = client.get(
            "/datasets/surgeries/hunches?roles=clinician", headers=as_user("anyone")
        ).json()
        assert by_role["total"] == 1

        consensus = client.get("/datasets/surgeries/items/s3/consensus").json()
        assert consensus["direction_tally"] == {"higher": 1, "lower": 0}

        summary = client.get("/datasets/surgeries/summary?grid=2x2").json()
        assert summary["dataset_level"] == {"directionality": 1}
    app.state.engine.close()


@criterion("scenario: canceled-conference year excluded via strike, view omits it with tags intact")
def test_c9b_chi_attendance_scenario(tmp_path):
    app = create_app(tmp_path)
    with TestClient(app) as client:
        csv = "year,attendance\n2017,2960\n2018,3300\n2019,3800\n2020,0\n2021,5000\n"
        r = client.post(
            "/datasets?dataset_id=chi&id_field=year",
            content=csv,
            headers={"content-type": "text/csv"},
        )
        assert r.status_code == 201
        fingerprint = r.json()["fingerprint"]

        client.post(
            "/datasets/chi/chart-views",
            json={
                "view_id": "main",
                "chart_kind": "line",
                "x_axis": {"field": "year", "scale": "linear", "domain": [2016, 2022], "range_px": [0, 600]},
                "y_axis": {"field": "attendance", "scale": "linear", "domain": [0, 6000], "range_px": [400, 0]},
                "item_anchor": {
                    "2017": [100, 202], "2018": [200, 180], "2019": [300, 147],
                    "2020": [400, 400], "2021": [500, 67],
                },
            },
        )
        # Strike out the 2020 mark.
        strike = [
            [[386, 386], [414, 414]],
            [[386, 414], [414, 386]],
        ]
        r = client.post(
            "/datasets/chi/hunches",
            json={"technique": "markup", "view_id": "main", "strokes": strike, "style": "strike"},
            headers=as_user("hci-person"),
        )
        assert r.status_code == 201, r.text
        markup_doc = r.json()
        assert markup_doc["payload"]["transcription"] == {"type": "exclusion"}
        assert markup_doc["scope"]["item_refs"] == ["2020"]

        r = client.post(
            "/datasets/chi/hunches",
            json={
                "technique": "annotation",
                "text": "2020 attendance is zero because the conference was canceled",
                "scope": {"kind": "single_item", "item_refs": ["2020"]},
                "anchor": {"view_id": "main", "px": 400, "py": 400},
            },
            headers=as_user("hci-person"),
        )
        assert r.status_code == 201

        view = client.get(f"/datasets/chi/views?hunches={markup_doc['hunch_id']}").json()
        ids = [it["item_id"] for it in view["view"]["items"]]
        assert ids == ["2017", "2018", "2019", "2021"]
        assert view["view"]["excluded_item_ids"] == ["2020"]
        assert all(
            tag == "original" for it in view["view"]["items"] for tag in it["origins"].values()
        )
        assert view["diff"] == []

        # The original is untouched throughout.
        assert client.get("/datasets/chi").json()["fingerprint"] == fingerprint
    app.state.engine.close()


@criterion("scenario: structured form with confidence and impact note round-trips")
def test_c9c_form_flow_scenario(tmp_path):
    app = create_app(tmp_path)
    with TestClient(app) as client:
        csv = "region,cases\nA,100\nB,15\n"
        client.post(
            "/datasets?dataset_id=outbreak&id_field=region",
            content=csv,
            headers={"content-type": "text/csv"},
        )
        r = client.post(
            "/datasets/outbreak/hunches",
            json={
                "technique": "elicitation",
                "scope": {"kind": "single_item", "item_refs": ["B"]},
                "question_kind": "trust_rating",
                "answer": 2,
                "confidence": 4,
                "free_note": "region B only reports fully investigated cases",
                "impact_note": "undercount will skew cross-region comparisons",
            },
            headers=as_user("epi-1", role="epidemiologist"),
        )
        assert r.status_code == 201, r.text
        hunch_id = r.json()["hunch_id"]

        fetched = client.get(f"/hunches/{hunch_id}").json()
        assert fetched["payload"] == {"type": "assessment", "rating": 2}
        assert fetched["context"]["confidence"] == 4
        assert fetched["context"]["impact_note"] == "undercount will skew cross-region comparisons"
        assert fetched["context"]["rationale"] == "region B only reports fully investigated cases"
        assert fetched["context"]["author"]["role"] == "epidemiologist"

        consensus = client.get("/datasets/outbreak/items/B/consensus").json()
        assert consensus["mean_assessment"] == 2.0
    app.state.engine.close()


@criterion("scenario: annotation doubly-linked to a chart state with a comment thread")
def test_c9d_doubly_linked_scenario(tmp_path):
    app = create_app(tmp_path)
    with TestClient(app) as client:
        csv = "year,pct_military\n1940,2\n1945,9\n1950,3\n"
        client.post(
            "/datasets?dataset_id=census&id_field=year",
            content=csv,
            headers={"content-type": "text/csv"},
        )
        view_doc = client.post(
            "/datasets/census/chart-views",
            json={
                "view_id": "state-1944",
                "chart_kind": "line",
                "x_axis": {"field": "year", "scale": "linear", "domain": [1938, 1952], "range_px": [0, 700]},
                "y_axis": {"field": "pct_military", "scale": "linear", "domain": [0, 10], "range_px": [300, 0]},
                "item_anchor": {"1940": [100, 240], "1945": [350, 30], "1950": [600, 210]},
            },
        ).json()

        r = client.post(
            "/datasets/census/hunches",
            json={
                "technique": "annotation",
                "text": "expected a bigger jump during the war years",
                "scope": {"kind": "item_group", "item_refs": ["1940", "1945"]},
                "anchor": {"view_id": "state-1944", "px": 225, "py": 135},
            },
            headers=as_user("viewer-7"),
        )
        hunch = r.json()
        assert hunch["chart_anchor"]["view_id"] == "state-1944"

        c1 = client.post(
            f"/hunches/{hunch['hunch_id']}/comments",
            json={"text": "the draft peaked in 1944, data looks plausible to me"},
            headers=as_user("viewer-8"),
        ).json()
        client.post(
            f"/hunches/{hunch['hunch_id']}/comments",
            json={"text": "fair, but demobilization was fast", "parent_comment_id": c1["comment_id"]},
            headers=as_user("viewer-7"),
        )
        threads = client.get(f"/hunches/{hunch['hunch_id']}/comments").json()["threads"]
        assert len(threads) == 1
        assert threads[0]["replies"][0]["comment"]["text"].startswith("fair")

        # Navigation: the anchor's view id resolves to the registered chart state.
        resolved = client.get(
            f"/datasets/census/chart-views/{hunch['chart_anchor']['view_id']}"
        ).json()
        assert resolved == view_doc
    app.state.engine.close()
