"""End-to-end demo: a small crowd records hunches against a conference
attendance series, curates them, and exports a tagged view.

Run from the repo root:

    python3 scripts/demo_session.py [store-dir]
"""

import sys
import tempfile
from pathlib import Path

from hunches.communication.consensus import summarize
from hunches.communication.curation import Theme, compile_report, rank_hunches
from hunches.communication.filtering import FilterSpec, WeightSpec
from hunches.core import AuthorRef, Scope
from hunches.core.views import apply_hunch_view, diff_view
from hunches.externalization.axes import default_chart_view
from hunches.externalization.glyphs import strike_glyph
from hunches.externalization.recording import (
    ElicitationForm,
    record_annotation,
    record_data_edit,
    record_elicitation,
    record_markup,
)
from hunches.core.hunch import MarkupStrokes
from hunches.store.ingest import ingest_csv
from hunches.store.workspace import Workspace

CSV = """year,attendance
2017,2960
2018,3300
2019,3800
2020,0
2021,5000
"""


def main() -> int:
    root = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp(prefix="hunches-demo-"))
    dataset = ingest_csv(CSV, dataset_id="chi-attendance", id_field="year")
    print(f"ingested {len(dataset.items)} rows, fingerprint {dataset.fingerprint[:12]}...")

    ada = AuthorRef("ada", "Ada", role="organizer")
    bo = AuthorRef("bo", "Bo", role="attendee")

    with Workspace.create(root, dataset) as ws:
        chart = default_chart_view(dataset, x_field="year", y_field="attendance", view_id="main")
        ws.register_chart_view(chart)

        # Ada strikes out the canceled year and explains why.
        anchor_px = chart.item_anchor["2020"]
        strike = MarkupStrokes.of(strike_glyph(*anchor_px), style="strike")
        markup = ws.add_hunch(record_markup(strike, chart, None, ada, dataset))
        note = ws.add_hunch(
            record_annotation(
                "2020 is zero because the conference was canceled, not because nobody came",
                Scope.single_item("2020"),
                None,
                ada,
                dataset,
            )
        )

        # Bo trusts the series overall but thinks 2021 double-counts virtual seats.
        trust = ws.add_hunch(
            record_elicitation(
                ElicitationForm(Scope.whole_dataset(), "trust_rating", 4, confidence=3),
                bo,
                dataset,
            )
        )
        edit, _ = record_data_edit({"2021": 4100.0}, Scope.single_item("2021", "attendance"), bo, dataset,
                                   rationale="virtual registrations inflated the count")
        ws.add_hunch(edit)

        ws.vote(markup.hunch_id, bo, 1)
        ws.vote(note.hunch_id, bo, 1)
        ws.comment(note.hunch_id, bo, "same in every canceled-event dataset I have seen")
        ws.link(edit.hunch_id, note.hunch_id)

        ranked = rank_hunches(ws.list_hunches(), ws.curation, WeightSpec())
        print("\nranked hunches (score = net votes x weight):")
        for hunch, score in ranked:
            kind = hunch.payload.kind
            print(f"  {score:6.2f}  {hunch.hunch_id}  {kind:<18} by {hunch.context.author.author_id}")

        artifact = summarize(ws.list_hunches(), chart, (5, 4), FilterSpec(), WeightSpec(), dataset)
        print("\nheatmap over the chart (rows are pixel bands):")
        for row in artifact.heatmap:
            print("  " + " ".join(str(c) for c in row))
        print(f"dataset-level hunches: {dict(artifact.dataset_level)}")

        view = apply_hunch_view(dataset, [ws.get_hunch(markup.hunch_id), edit])
        print(f"\nview {view.view_id}: {len(view.items)} items, excluded {sorted(view.excluded_item_ids)}")
        for delta in diff_view(dataset, view):
            print(f"  {delta.item_id}.{delta.field}: {delta.before} -> {delta.after}")

        report = compile_report(
            ws.list_hunches(), ws.curation, ada,
            [Theme("pandemic artifacts", "2020 and 2021 need caveats", (markup.hunch_id, edit.hunch_id))],
            narrative="attendance is a decent proxy for community size outside 2020-2021",
        )
        ws.add_report(report)
        path = ws.save()
        print(f"\nsaved interchange snapshot to {path}")
        print("events logged:", ws.next_seq - 1)
    return 0


if __name__ == "__main__":
    sys.exit(main())
