"""HTTP API over the engine.

One externalization endpoint with a technique discriminator covers all the
recording techniques; reads are computed from immutable snapshots and every
mutation goes through the per-dataset workspace, which appends to the event
log. Identity is header-asserted (X-Author-Id, optional X-Author-Role and
X-Author-Reputation) and deliberately forgeable: accountability policy is
out of engine scope and documented as such.
"""

from __future__ import annotations

from pathlib import Path
from typing import Annotated, Literal, Optional, Union

from fastapi import Depends, FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field as PydField

from ..communication.consensus import consensus_for_item, summarize
from ..communication.curation import (
    NarrativeRecord,
    Theme,
    compile_report,
    comment_threads,
    rank_hunches,
)
from ..communication.filtering import FilterSpec, WeightSpec, filter_hunches
from ..core.hunch import (
    AuthorRef,
    ChartAnchor,
    DataHunch,
    ModelBased,
    Scope,
    is_stale,
    model_from_dict,
)
from ..core.views import apply_hunch_view, diff_view
from ..errors import (
    AuthRequired,
    HunchError,
    NotModelBased,
    UnknownDataset,
    UnknownHunch,
    UnknownItem,
)
from ..externalization.axes import ChartViewSpec, default_chart_view
from ..externalization.models import generate_model_points
from ..externalization.recording import (
    ElicitationForm,
    record_annotation,
    record_data_edit,
    record_elicitation,
    record_group_manipulation,
    record_manipulation,
    record_markup,
    record_model_hunch,
)
from ..core.hunch import MarkupStrokes
from ..jsonutil import new_id, utc_now_rfc3339
from ..store.ingest import ingest_csv, ingest_rows
from ..store.workspace import Workspace, list_dataset_ids


# ---------------------------------------------------------------------------
# Request bodies

class ScopeModel(BaseModel):
    kind: str
    item_refs: list[str] = []
    field_ref: Optional[str] = None

    def to_scope(self) -> Scope:
        return Scope(self.kind, frozenset(self.item_refs), self.field_ref)


class AnchorModel(BaseModel):
    view_id: str
    px: float
    py: float

    def to_anchor(self) -> ChartAnchor:
        return ChartAnchor(self.view_id, self.px, self.py)


class ElicitationRequest(BaseModel):
    technique: Literal["elicitation"]
    scope: ScopeModel
    question_kind: str
    answer: Union[int, str]
    confidence: Optional[int] = None
    free_note: Optional[str] = None
    impact_note: Optional[str] = None


class AnnotationRequest(BaseModel):
    technique: Literal["annotation"]
    text: str
    scope: Optional[ScopeModel] = None
    anchor: Optional[AnchorModel] = None


class MarkupRequest(BaseModel):
    technique: Literal["markup"]
    view_id: str
    strokes: list[list[tuple[float, float]]]
    style: str = "freeform"
    scope_hint: Optional[ScopeModel] = None
    rationale: Optional[str] = None


class ManipulationRequest(BaseModel):
    technique: Literal["manipulation"]
    view_id: str
    item: str
    px: float
    py: float
    rationale: Optional[str] = None


class GroupManipulationRequest(BaseModel):
    technique: Literal["group_manipulation"]
    view_id: str
    items: list[str]
    dx: float = 0.0
    dy: float = 0.0
    rationale: Optional[str] = None


class DataEditRequest(BaseModel):
    technique: Literal["data_edit"]
    scope: ScopeModel
    edits: Optional[dict[str, float]] = None
    expression: Optional[str] = None
    rationale: Optional[str] = None


class ModelRequest(BaseModel):
    technique: Literal["model"]
    model_spec: dict
    variance: float
    n_points: int
    domain: tuple[float, float]
    seed: int = 0
    x_field: Optional[str] = None
    y_field: Optional[str] = None
    rationale: Optional[str] = None


HunchRequest = Annotated[
    Union[
        ElicitationRequest,
        AnnotationRequest,
        MarkupRequest,
        ManipulationRequest,
        GroupManipulationRequest,
        DataEditRequest,
        ModelRequest,
    ],
    PydField(discriminator="technique"),
]


class VoteRequest(BaseModel):
    value: Literal[1, -1]


class CommentRequest(BaseModel):
    text: str
    parent_comment_id: Optional[str] = None


class ProvenanceRequest(BaseModel):
    parent: str


class AxisModel(BaseModel):
    field: str
    scale: str = "linear"
    domain: tuple[float, float]
    range_px: tuple[float, float]


class ChartViewRequest(BaseModel):
    view_id: Optional[str] = None
    chart_kind: str = "scatter"
    x_axis: AxisModel
    y_axis: AxisModel
    item_anchor: dict[str, tuple[float, float]] = {}


class BlindModeRequest(BaseModel):
    enabled: bool


class NarrativeRequest(BaseModel):
    prompt_answers: dict[str, str] = {}
    free_text: Optional[str] = None


class ThemeModel(BaseModel):
    title: str
    text: str
    hunch_refs: list[str] = []


class ReportRequest(BaseModel):
    included_hunch_ids: list[str]
    themes: list[ThemeModel] = []
    narrative: str = ""


class RowsIngestRequest(BaseModel):
    rows: list[dict]
    dataset_id: Optional[str] = None
    id_field: Optional[str] = None
    kinds: Optional[dict[str, str]] = None


class DeleteRequest(BaseModel):
    superseded_by: Optional[str] = None


# ---------------------------------------------------------------------------
# App state

class EngineState:
    def __init__(self, root: Path):
        self.root = Path(root)
        self.workspaces: dict[str, Workspace] = {}
        self.hunch_index: dict[str, str] = {}  # hunch_id -> dataset_id
        for dataset_id in list_dataset_ids(self.root):
            self._attach(Workspace.open(self.root, dataset_id))

    def _attach(self, ws: Workspace) -> None:
        self.workspaces[ws.dataset.dataset_id] = ws
        for hid in ws.hunches:
            self.hunch_index[hid] = ws.dataset.dataset_id

    def workspace(self, dataset_id: str) -> Workspace:
        if dataset_id not in self.workspaces:
            raise UnknownDataset(f"unknown dataset {dataset_id!r}", dataset_id=dataset_id)
        return self.workspaces[dataset_id]

    def workspace_of_hunch(self, hunch_id: str) -> Workspace:
        if hunch_id not in self.hunch_index:
            raise UnknownHunch(f"unknown hunch {hunch_id!r}", hunch_id=hunch_id)
        return self.workspaces[self.hunch_index[hunch_id]]

    def register_hunch(self, ws: Workspace, hunch: DataHunch) -> None:
        ws.add_hunch(hunch)
        self.hunch_index[hunch.hunch_id] = ws.dataset.dataset_id

    def close(self) -> None:
        for ws in self.workspaces.values():
            ws.close()


def get_author(request: Request) -> AuthorRef:
    author_id = request.headers.get("X-Author-Id")
    if not author_id:
        raise AuthRequired("X-Author-Id header required")
    reputation = request.headers.get("X-Author-Reputation")
    return AuthorRef(
        author_id=author_id,
        display_name=request.headers.get("X-Author-Name", ""),
        role=request.headers.get("X-Author-Role"),
        reputation=int(reputation) if reputation is not None else None,
    )


def _hunch_doc(ws: Workspace, hunch: DataHunch) -> dict:
    d = hunch.to_json_dict()
    d["stale"] = is_stale(hunch, ws.dataset)
    d["deleted"] = hunch.hunch_id in ws.curation.tombstones
    d["net_votes"] = ws.curation.net_votes(hunch.hunch_id)
    return d


def _filter_from_query(
    authors: Optional[str] = None,
    roles: Optional[str] = None,
    after: Optional[str] = None,
    before: Optional[str] = None,
    requires_context: bool = False,
    min_score: Optional[int] = None,
    known_authors_of: Optional[str] = None,
    types: Optional[str] = None,
) -> FilterSpec:
    split = lambda s: frozenset(x for x in s.split(",") if x) if s else None
    return FilterSpec(
        authors=split(authors),
        roles=split(roles),
        after=after,
        before=before,
        requires_context=requires_context,
        min_score=min_score,
        known_authors_of=known_authors_of,
        types=split(types),
    )


def _parse_grid(grid: str) -> tuple[int, int]:
    try:
        w, h = grid.lower().split("x")
        return max(1, int(w)), max(1, int(h))
    except ValueError:
        raise HunchError(f"grid must look like WxH, got {grid!r}") from None


# ---------------------------------------------------------------------------
# App factory

def create_app(root: Path) -> FastAPI:
    app = FastAPI(title="hunches", version="0.1.0")
    state = EngineState(root)
    app.state.engine = state

    @app.exception_handler(HunchError)
    async def engine_error(_request: Request, exc: HunchError):
        return JSONResponse(
            status_code=exc.http_status,
            content={"error": {"code": exc.code, "message": exc.message, "detail": exc.detail}},
        )

    # -- datasets ----------------------------------------------------------

    @app.post("/datasets", status_code=201)
    async def create_dataset(
        request: Request,
        dataset_id: Optional[str] = None,
        id_field: Optional[str] = None,
    ):
        content_type = request.headers.get("content-type", "")
        if content_type.startswith("text/csv"):
            text = (await request.body()).decode("utf-8")
            dataset = ingest_csv(text, dataset_id=dataset_id, id_field=id_field)
        else:
            body = RowsIngestRequest.model_validate_json(await request.body())
            dataset = ingest_rows(
                body.rows,
                dataset_id=body.dataset_id or dataset_id,
                id_field=body.id_field or id_field,
                kinds=body.kinds,
            )
        ws = Workspace.create(state.root, dataset)
        state._attach(ws)
        return _descriptor(ws)

    def _descriptor(ws: Workspace) -> dict:
        return {
            "dataset_id": ws.dataset.dataset_id,
            "fingerprint": ws.dataset.fingerprint,
            "n_items": len(ws.dataset.items),
            "schema": [f.to_json_dict() for f in ws.dataset.schema],
            "blind_mode": ws.blind_mode,
        }

    @app.get("/datasets")
    async def list_datasets():
        return {"datasets": [_descriptor(ws) for ws in state.workspaces.values()]}

    @app.get("/datasets/{dataset_id}")
    async def get_dataset(dataset_id: str):
        ws = state.workspace(dataset_id)
        doc = ws.dataset.to_json_dict()
        doc["blind_mode"] = ws.blind_mode
        return doc

    # -- recording ----------------------------------------------------------

    @app.post("/datasets/{dataset_id}/hunches", status_code=201)
    async def post_hunch(
        dataset_id: str,
        body: HunchRequest,
        author: AuthorRef = Depends(get_author),
    ):
        ws = state.workspace(dataset_id)
        dataset = ws.dataset
        if isinstance(body, ElicitationRequest):
            form = ElicitationForm(
                scope=body.scope.to_scope(),
                question_kind=body.question_kind,
                answer=body.answer,
                confidence=body.confidence,
                free_note=body.free_note,
                impact_note=body.impact_note,
            )
            hunch = record_elicitation(form, author, dataset)
        elif isinstance(body, AnnotationRequest):
            hunch = record_annotation(
                body.text,
                body.scope.to_scope() if body.scope else Scope.whole_dataset(),
                body.anchor.to_anchor() if body.anchor else None,
                author,
                dataset,
            )
        elif isinstance(body, MarkupRequest):
            view = ws.get_chart_view(body.view_id)
            hunch = record_markup(
                MarkupStrokes.of(body.strokes, style=body.style),
                view,
                body.scope_hint.to_scope() if body.scope_hint else None,
                author,
                dataset,
                rationale=body.rationale,
            )
        elif isinstance(body, ManipulationRequest):
            view = ws.get_chart_view(body.view_id)
            hunch = record_manipulation(
                body.item, (body.px, body.py), view, author, dataset, rationale=body.rationale
            )
        elif isinstance(body, GroupManipulationRequest):
            view = ws.get_chart_view(body.view_id)
            hunch = record_group_manipulation(
                body.items, (body.dx, body.dy), view, author, dataset, rationale=body.rationale
            )
        elif isinstance(body, DataEditRequest):
            edits = body.expression if body.expression is not None else (body.edits or {})
            hunch, _view = record_data_edit(
                edits, body.scope.to_scope(), author, dataset, rationale=body.rationale
            )
        else:
            hunch = record_model_hunch(
                model_from_dict(body.model_spec),
                body.variance,
                body.n_points,
                body.domain,
                body.seed,
                author,
                dataset,
                x_field=body.x_field,
                y_field=body.y_field,
                rationale=body.rationale,
            )
        state.register_hunch(ws, hunch)
        return _hunch_doc(ws, hunch)

    # -- reads ---------------------------------------------------------------

    @app.get("/datasets/{dataset_id}/hunches")
    async def get_hunches(
        dataset_id: str,
        author: AuthorRef = Depends(get_author),
        authors: Optional[str] = None,
        roles: Optional[str] = None,
        after: Optional[str] = None,
        before: Optional[str] = None,
        requires_context: bool = False,
        min_score: Optional[int] = None,
        known_authors_of: Optional[str] = None,
        types: Optional[str] = None,
        ranked: bool = False,
        include_deleted: bool = False,
    ):
        ws = state.workspace(dataset_id)
        spec = _filter_from_query(
            authors, roles, after, before, requires_context, min_score, known_authors_of, types
        )
        hunches = filter_hunches(ws.list_hunches(include_deleted=include_deleted), spec)
        withheld = 0
        if ws.blind_mode and not ws.has_contributed(author.author_id):
            mine = [h for h in hunches if h.context.author.author_id == author.author_id]
            withheld = len(hunches) - len(mine)
            hunches = mine
        if ranked:
            scored = rank_hunches(hunches, ws.curation, WeightSpec())
            docs = [dict(_hunch_doc(ws, h), score=s) for h, s in scored]
        else:
            docs = [_hunch_doc(ws, h) for h in hunches]
        return {
            "hunches": docs,
            "total": len(docs),
            "withheld": withheld,
            "blind_mode": ws.blind_mode,
        }

    @app.get("/datasets/{dataset_id}/views")
    async def get_view(dataset_id: str, hunches: str = ""):
        ws = state.workspace(dataset_id)
        ids = [h for h in hunches.split(",") if h]
        selected = [ws.get_hunch(hid) for hid in ids]
        view = apply_hunch_view(ws.dataset, selected)
        return {
            "view": view.to_json_dict(),
            "diff": [d.to_json_dict() for d in diff_view(ws.dataset, view)],
        }

    @app.get("/datasets/{dataset_id}/summary")
    async def get_summary(
        dataset_id: str,
        grid: str = "1x1",
        view: Optional[str] = None,
        authors: Optional[str] = None,
        roles: Optional[str] = None,
        after: Optional[str] = None,
        before: Optional[str] = None,
        requires_context: bool = False,
        min_score: Optional[int] = None,
        known_authors_of: Optional[str] = None,
        types: Optional[str] = None,
    ):
        ws = state.workspace(dataset_id)
        chart = ws.get_chart_view(view) if view else default_chart_view(ws.dataset)
        spec = _filter_from_query(
            authors, roles, after, before, requires_context, min_score, known_authors_of, types
        )
        artifact = summarize(
            ws.list_hunches(), chart, _parse_grid(grid), spec, WeightSpec(), ws.dataset
        )
        doc = artifact.to_json_dict()
        doc["view_id"] = chart.view_id
        return doc

    @app.get("/datasets/{dataset_id}/items/{item_id}/consensus")
    async def get_consensus(dataset_id: str, item_id: str):
        ws = state.workspace(dataset_id)
        if not ws.dataset.has_item(item_id):
            raise UnknownItem(f"unknown item {item_id!r}", item_id=item_id)
        return consensus_for_item(ws.list_hunches(), item_id, ws.dataset).to_json_dict()

    # -- chart views -----------------------------------------------------------

    @app.post("/datasets/{dataset_id}/chart-views", status_code=201)
    async def post_chart_view(dataset_id: str, body: ChartViewRequest):
        ws = state.workspace(dataset_id)
        view = ChartViewSpec(
            view_id=body.view_id or new_id("cv"),
            chart_kind=body.chart_kind,
            x_axis=_axis(body.x_axis),
            y_axis=_axis(body.y_axis),
            item_anchor={k: (v[0], v[1]) for k, v in body.item_anchor.items()},
        )
        ws.register_chart_view(view)
        return view.to_json_dict()

    def _axis(m: AxisModel):
        from ..externalization.axes import AxisSpec

        return AxisSpec(field=m.field, scale=m.scale, domain=m.domain, range_px=m.range_px)

    @app.get("/datasets/{dataset_id}/chart-views/{view_id}")
    async def get_chart_view(dataset_id: str, view_id: str):
        return state.workspace(dataset_id).get_chart_view(view_id).to_json_dict()

    # -- curation ---------------------------------------------------------------

    @app.post("/hunches/{hunch_id}/votes", status_code=201)
    async def post_vote(hunch_id: str, body: VoteRequest, author: AuthorRef = Depends(get_author)):
        ws = state.workspace_of_hunch(hunch_id)
        ws.vote(hunch_id, author, body.value)
        return {"hunch_id": hunch_id, "net_votes": ws.curation.net_votes(hunch_id)}

    @app.post("/hunches/{hunch_id}/comments", status_code=201)
    async def post_comment(
        hunch_id: str, body: CommentRequest, author: AuthorRef = Depends(get_author)
    ):
        ws = state.workspace_of_hunch(hunch_id)
        comment = ws.comment(hunch_id, author, body.text, body.parent_comment_id)
        return comment.to_json_dict()

    @app.get("/hunches/{hunch_id}/comments")
    async def get_comments(hunch_id: str):
        ws = state.workspace_of_hunch(hunch_id)

        def node_doc(node):
            return {
                "comment": node["comment"].to_json_dict(),
                "replies": [node_doc(r) for r in node["replies"]],
            }

        return {"threads": [node_doc(n) for n in comment_threads(ws.curation, hunch_id)]}

    @app.post("/hunches/{hunch_id}/provenance", status_code=201)
    async def post_provenance(hunch_id: str, body: ProvenanceRequest):
        ws = state.workspace_of_hunch(hunch_id)
        ws.link(hunch_id, body.parent)
        return {"child": hunch_id, "parent": body.parent}

    @app.get("/hunches/{hunch_id}")
    async def get_hunch(hunch_id: str):
        ws = state.workspace_of_hunch(hunch_id)
        return _hunch_doc(ws, ws.get_hunch(hunch_id))

    @app.delete("/hunches/{hunch_id}")
    async def delete_hunch(hunch_id: str, body: Optional[DeleteRequest] = None):
        ws = state.workspace_of_hunch(hunch_id)
        ws.delete_hunch(hunch_id, superseded_by=body.superseded_by if body else None)
        return {"hunch_id": hunch_id, "deleted": True}

    @app.get("/hunches/{hunch_id}/model/points")
    async def get_model_points(hunch_id: str):
        ws = state.workspace_of_hunch(hunch_id)
        hunch = ws.get_hunch(hunch_id)
        if not isinstance(hunch.payload, ModelBased):
            raise NotModelBased(f"hunch {hunch_id!r} is not model-based", hunch_id=hunch_id)
        return {"points": [[x, y] for x, y in generate_model_points(hunch.payload)]}

    # -- narratives, reports, blind mode ----------------------------------------

    @app.post("/datasets/{dataset_id}/narratives", status_code=201)
    async def post_narrative(
        dataset_id: str, body: NarrativeRequest, author: AuthorRef = Depends(get_author)
    ):
        ws = state.workspace(dataset_id)
        narrative = NarrativeRecord(
            author=author,
            created_at=utc_now_rfc3339(),
            prompt_answers=body.prompt_answers,
            free_text=body.free_text,
        )
        ws.add_narrative(narrative)
        return narrative.to_json_dict()

    @app.get("/datasets/{dataset_id}/narratives")
    async def get_narratives(dataset_id: str):
        ws = state.workspace(dataset_id)
        return {"narratives": [n.to_json_dict() for n in ws.narratives]}

    @app.post("/datasets/{dataset_id}/reports", status_code=201)
    async def post_report(
        dataset_id: str, body: ReportRequest, author: AuthorRef = Depends(get_author)
    ):
        ws = state.workspace(dataset_id)
        included = [ws.get_hunch(hid) for hid in body.included_hunch_ids]
        report = compile_report(
            included,
            ws.curation,
            author,
            [Theme(t.title, t.text, tuple(t.hunch_refs)) for t in body.themes],
            narrative=body.narrative,
        )
        ws.add_report(report)
        return report.to_json_dict()

    @app.get("/datasets/{dataset_id}/reports")
    async def get_reports(dataset_id: str):
        ws = state.workspace(dataset_id)
        return {"reports": [r.to_json_dict() for r in ws.reports]}

    @app.post("/datasets/{dataset_id}/blind-mode")
    async def set_blind_mode(dataset_id: str, body: BlindModeRequest):
        ws = state.workspace(dataset_id)
        ws.set_blind_mode(body.enabled)
        return {"dataset_id": dataset_id, "blind_mode": ws.blind_mode}

    @app.post("/datasets/{dataset_id}/save")
    async def save_snapshot(dataset_id: str):
        ws = state.workspace(dataset_id)
        path = ws.save()
        return {"saved": str(path)}

    return app
