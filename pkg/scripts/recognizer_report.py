"""Recognizer calibration report: accuracy per glyph over a jittered corpus.

    python3 scripts/recognizer_report.py [n-per-glyph] [jitter-px] [seed]
"""

import random
import sys

from hunches.core.hunch import Directionality, Exclusion, MarkupStrokes, Value
from hunches.externalization.axes import AxisSpec, ChartViewSpec
from hunches.externalization.glyphs import (
    arrow_glyph,
    hline_glyph,
    jitter_strokes,
    random_noncrossing_pair,
    strike_glyph,
)
from hunches.externalization.sketch import transcribe_markup
from hunches.store.ingest import ingest_rows


def main() -> int:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 200
    jitter = float(sys.argv[2]) if len(sys.argv) > 2 else 3.0
    seed = int(sys.argv[3]) if len(sys.argv) > 3 else 404
    rng = random.Random(seed)

    view = ChartViewSpec(
        "cal",
        "scatter",
        AxisSpec("x", "linear", (0.0, 100.0), (0.0, 400.0)),
        AxisSpec("y", "linear", (0.0, 100.0), (400.0, 0.0)),
        {"i1": (200.0, 200.0), "i2": (60.0, 340.0), "i3": (340.0, 60.0)},
    )
    ds = ingest_rows([{"x": 50.0, "y": 50.0}, {"x": 15.0, "y": 15.0}, {"x": 85.0, "y": 85.0}])
    cx, cy = 200.0, 200.0

    glyphs = {
        "strike X": (lambda: strike_glyph(cx, cy), lambda t: isinstance(t.payload, Exclusion)),
        "arrow up": (lambda: arrow_glyph(cx, cy, "higher"),
                     lambda t: isinstance(t.payload, Directionality) and t.payload.direction == "higher"),
        "arrow down": (lambda: arrow_glyph(cx, cy, "lower"),
                       lambda t: isinstance(t.payload, Directionality) and t.payload.direction == "lower"),
        "hline": (lambda: hline_glyph(cx - 40, cx + 40, cy), lambda t: isinstance(t.payload, Value)),
    }

    print(f"corpus: {n} instances/glyph, jitter <= {jitter}px/coordinate, seed {seed}\n")
    print(f"{'glyph':<12} {'recognized':>10} {'accuracy':>9}")
    for name, (make, check) in glyphs.items():
        hits = 0
        for _ in range(n):
            strokes = MarkupStrokes.of(jitter_strokes(make(), rng, amount=jitter))
            t = transcribe_markup(strokes, view, ds)
            if t is not None and check(t):
                hits += 1
        print(f"{name:<12} {hits:>7}/{n} {hits / n:>8.1%}")

    false_excl = 0
    for _ in range(n):
        strokes = MarkupStrokes.of(random_noncrossing_pair(rng, cx, cy))
        t = transcribe_markup(strokes, view, ds)
        if t is not None and isinstance(t.payload, Exclusion):
            false_excl += 1
    print(f"\nfalse exclusions on {n} non-crossing pairs: {false_excl}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
