"""Synthetic canonical glyphs, used to calibrate and regression-test the recognizer."""

from __future__ import annotations

import math
import random
from typing import Sequence

from .sketch import Point, Stroke, strokes_cross


def strike_glyph(cx: float, cy: float, half: float = 14.0) -> list[list[Point]]:
    """An X centered on (cx, cy): two crossing diagonals."""
    return [
        [(cx - half, cy - half), (cx + half, cy + half)],
        [(cx - half, cy + half), (cx + half, cy - half)],
    ]


def arrow_glyph(
    cx: float,
    cy: float,
    direction: str = "higher",
    shaft_len: float = 40.0,
    barb_len: float = 16.0,
) -> list[list[Point]]:
    """A vertical arrow centered on (cx, cy); screen y grows downward."""
    sign = -1.0 if direction == "higher" else 1.0
    tail = (cx, cy - sign * shaft_len / 2)
    tip = (cx, cy + sign * shaft_len / 2)
    b = barb_len / math.sqrt(2)
    head = [
        (cx - b, tip[1] - sign * b),
        tip,
        (cx + b, tip[1] - sign * b),
    ]
    return [[tail, tip], head]


def hline_glyph(x0: float, x1: float, y: float) -> list[list[Point]]:
    return [[(x0, y), (x1, y)]]


def jitter_strokes(
    strokes: Sequence[Stroke], rng: random.Random, amount: float = 3.0
) -> list[list[Point]]:
    """Perturb every vertex coordinate by uniform(-amount, amount)."""
    return [
        [(x + rng.uniform(-amount, amount), y + rng.uniform(-amount, amount)) for x, y in s]
        for s in strokes
    ]


def random_noncrossing_pair(
    rng: random.Random, cx: float, cy: float, spread: float = 30.0, length: float = 30.0
) -> list[list[Point]]:
    """Two random segments near (cx, cy) guaranteed not to cross each other.

    Exercises the recognizer's no-false-exclusion guarantee: pairs may be
    perpendicular and arbitrarily close to the mark, but never intersect.
    """
    while True:
        strokes = []
        for _ in range(2):
            mx = cx + rng.uniform(-spread, spread)
            my = cy + rng.uniform(-spread, spread)
            theta = rng.uniform(0, math.pi)
            dx, dy = math.cos(theta) * length / 2, math.sin(theta) * length / 2
            strokes.append([(mx - dx, my - dy), (mx + dx, my + dy)])
        if not strokes_cross(strokes[0], strokes[1]):
            return strokes
