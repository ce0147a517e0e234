"""Model-based hunches: seeded point generation and misfit flagging.

Noise is produced by a fixed, portable generator so identical hunches give
byte-identical point lists everywhere: SplitMix64 for the uniform stream,
Box-Muller for normals. Both algorithms are specified in the README format
notes; do not swap them without bumping the interchange format version.
"""

from __future__ import annotations

import math

from ..core.dataset import Dataset
from ..core.hunch import ModelBased, ModelSpec, model_eval
from ..errors import MissingField

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """The SplitMix64 sequence of Steele, Lea and Flood; 64-bit state."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_unit(self) -> float:
        # 53 significant bits, shifted into (0, 1] so log() is always defined.
        return ((self.next_u64() >> 11) + 1) * (2.0 ** -53)


class GaussianStream:
    """Standard normals via the Box-Muller transform over a SplitMix64 stream."""

    def __init__(self, seed: int):
        self._uniform = SplitMix64(seed)
        self._spare: float | None = None

    def next_gauss(self) -> float:
        if self._spare is not None:
            z, self._spare = self._spare, None
            return z
        u1 = self._uniform.next_unit()
        u2 = self._uniform.next_unit()
        r = math.sqrt(-2.0 * math.log(u1))
        self._spare = r * math.sin(2.0 * math.pi * u2)
        return r * math.cos(2.0 * math.pi * u2)


def sample_xs(domain: tuple[float, float], n: int) -> list[float]:
    """n x positions equally spaced over the domain, endpoints included."""
    lo, hi = domain
    if n == 1:
        return [lo]
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


def generate_model_points(hunch: ModelBased) -> list[tuple[float, float]]:
    """Points the model stands for: y = model(x) + noise, noise ~ N(0, sd).

    Pure in (model, variance, n_points, domain, seed); identical inputs give
    identical output bitwise. With sd = 0 the points lie exactly on the curve.
    """
    xs = sample_xs(hunch.domain, hunch.n_points)
    if hunch.variance == 0:
        return [(x, model_eval(hunch.model, x)) for x in xs]
    gauss = GaussianStream(hunch.seed)
    return [(x, model_eval(hunch.model, x) + hunch.variance * gauss.next_gauss()) for x in xs]


def flag_model_outliers(
    dataset: Dataset,
    x_field: str,
    y_field: str,
    model: ModelSpec,
    sd: float,
    k: float,
) -> frozenset[str]:
    """Items whose residual against the model exceeds k standard deviations.

    Items with a null in either field cannot be scored and are never flagged.
    """
    if sd <= 0:
        raise ValueError("sd must be positive")
    if k <= 0:
        raise ValueError("k must be positive")
    for name in (x_field, y_field):
        if dataset.get_field(name) is None:
            raise MissingField(f"unknown field {name!r}", field=name)
    flagged = set()
    for item in dataset.items:
        x, y = item.values.get(x_field), item.values.get(y_field)
        if x is None or y is None:
            continue
        if abs(y - model_eval(model, x)) > k * sd:
            flagged.add(item.item_id)
    return frozenset(flagged)


def residuals(dataset: Dataset, x_field: str, y_field: str, model: ModelSpec) -> dict[str, float]:
    """Per-item residuals y - model(x), skipping items with nulls."""
    out = {}
    for item in dataset.items:
        x, y = item.values.get(x_field), item.values.get(y_field)
        if x is None or y is None:
            continue
        out[item.item_id] = y - model_eval(model, x)
    return out
