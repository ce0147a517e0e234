"""Command line entry points: ingest, validate, summarize, export-view, serve."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .communication.consensus import summarize
from .communication.filtering import FilterSpec, WeightSpec
from .core.views import apply_hunch_view, diff_view
from .errors import HunchError
from .externalization.axes import default_chart_view
from .jsonutil import canonical_dumps
from .store import hunchfile
from .store.ingest import ingest_csv, ingest_rows
from .store.workspace import Workspace


def _filter_from_args(args) -> FilterSpec:
    split = lambda s: frozenset(s.split(",")) if s else None
    return FilterSpec(
        authors=split(args.authors),
        roles=split(args.roles),
        after=args.after,
        before=args.before,
        requires_context=args.requires_context,
        min_score=args.min_score,
        known_authors_of=None,
        types=split(args.types),
    )


def cmd_ingest(args) -> int:
    path = Path(args.source)
    text = path.read_text(encoding="utf-8")
    kinds = dict(kv.split("=", 1) for kv in args.kinds.split(",")) if args.kinds else None
    if path.suffix.lower() == ".json":
        dataset = ingest_rows(json.loads(text), args.dataset_id, args.id_field, kinds)
    else:
        dataset = ingest_csv(text, args.dataset_id, args.id_field, kinds)
    with Workspace.create(Path(args.root), dataset) as ws:
        ws.save()
    print(canonical_dumps({
        "dataset_id": dataset.dataset_id,
        "fingerprint": dataset.fingerprint,
        "n_items": len(dataset.items),
    }))
    return 0


def cmd_validate(args) -> int:
    hf = hunchfile.load(args.hunchfile)
    reports = hf.validation_reports()
    stale = hf.stale_hunch_ids()
    bad = 0
    for hunch in hf.hunches:
        report = reports.get(hunch.hunch_id)
        flags = []
        if hunch.hunch_id in stale:
            flags.append("STALE")
        if report is not None and not report.ok:
            bad += 1
            flags.append("INVALID")
            print(f"{hunch.hunch_id}: {' '.join(flags)}")
            for v in report.violations:
                print(f"  - [{v.rule}] {v.message}")
        else:
            print(f"{hunch.hunch_id}: {' '.join(flags) or 'ok'}")
    print(f"{len(hf.hunches)} hunches, {bad} invalid, {len(stale)} stale")
    return 1 if bad else 0


def cmd_summarize(args) -> int:
    with Workspace.open(Path(args.root), args.dataset_id, readonly=True) as ws:
        chart = ws.get_chart_view(args.chart_view) if args.chart_view else default_chart_view(ws.dataset)
        w, h = (int(x) for x in args.grid.lower().split("x"))
        artifact = summarize(
            ws.list_hunches(), chart, (w, h), _filter_from_args(args), WeightSpec(), ws.dataset
        )
        print(canonical_dumps(artifact.to_json_dict()))
    return 0


def cmd_export_view(args) -> int:
    with Workspace.open(Path(args.root), args.dataset_id, readonly=True) as ws:
        ids = [x for x in args.hunches.split(",") if x]
        selected = [ws.get_hunch(hid) for hid in ids]
        view = apply_hunch_view(ws.dataset, selected)
        doc = {
            "view": view.to_json_dict(),
            "diff": [d.to_json_dict() for d in diff_view(ws.dataset, view)],
        }
        Path(args.out).write_text(canonical_dumps(doc), encoding="utf-8")
        print(f"wrote {args.out}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(Path(args.root)), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hunches", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="ingest a CSV or JSON-rows file into a store")
    p.add_argument("source")
    p.add_argument("--root", default="./hunches-store")
    p.add_argument("--dataset-id", dest="dataset_id")
    p.add_argument("--id-field", dest="id_field")
    p.add_argument("--kinds", help="field kind overrides, e.g. year=ordinal,city=categorical")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("validate", help="validate every hunch in an interchange file")
    p.add_argument("hunchfile")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("summarize", help="print the summary artifact for a dataset")
    p.add_argument("dataset_id")
    p.add_argument("--root", default="./hunches-store")
    p.add_argument("--grid", default="4x3")
    p.add_argument("--chart-view", dest="chart_view")
    p.add_argument("--authors")
    p.add_argument("--roles")
    p.add_argument("--after")
    p.add_argument("--before")
    p.add_argument("--requires-context", dest="requires_context", action="store_true")
    p.add_argument("--min-score", dest="min_score", type=int)
    p.add_argument("--types")
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("export-view", help="materialize hunches into a tagged view file")
    p.add_argument("dataset_id")
    p.add_argument("--root", default="./hunches-store")
    p.add_argument("--hunches", required=True, help="comma-separated hunch ids, applied in order")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export_view)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--root", default="./hunches-store")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8008)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HunchError as e:
        print(f"error [{e.code}]: {e.message}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
