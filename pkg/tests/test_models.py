"""Model-based hunches: deterministic generation and misfit flagging."""

import math
import random
import statistics

import pytest

from helpers import xy_dataset
from hunches.core.hunch import CustomModel, ExponentialModel, LinearModel, ModelBased, model_eval
from hunches.core.expr import parse_expr
from hunches.errors import MissingField
from hunches.externalization.models import (
    GaussianStream,
    flag_model_outliers,
    generate_model_points,
    sample_xs,
)
from hunches.jsonutil import canonical_dumps
from oracles import brute_outliers


def model_hunch(model=None, variance=0.0, n_points=3, domain=(1.0, 3.0), seed=0):
    return ModelBased(
        model=model or LinearModel(2.0, 0.0),
        variance=variance,
        n_points=n_points,
        domain=domain,
        seed=seed,
    )


def test_zero_variance_lies_exactly_on_the_line():
    points = generate_model_points(model_hunch())
    assert points == [(1.0, 2.0), (2.0, 4.0), (3.0, 6.0)]


def test_identity_line_five_points():
    points = generate_model_points(model_hunch(LinearModel(1.0, 0.0), n_points=5, domain=(0.0, 4.0)))
    assert points == [(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (3.0, 3.0), (4.0, 4.0)]


def test_degenerate_exponential_is_constant():
    points = generate_model_points(model_hunch(ExponentialModel(1.0, 0.0), n_points=4, domain=(0.0, 3.0)))
    assert [y for _x, y in points] == [1.0, 1.0, 1.0, 1.0]


def test_custom_model_expression():
    model = CustomModel(parse_expr("x * x", variable="x"))
    assert model_eval(model, 3.0) == 9.0


def test_single_point_sits_at_domain_start():
    assert sample_xs((2.0, 5.0), 1) == [2.0]
    assert sample_xs((2.0, 5.0), 2) == [2.0, 5.0]


def test_same_seed_is_byte_identical():
    h = model_hunch(variance=1.5, n_points=50, domain=(0.0, 10.0), seed=424242)
    a = canonical_dumps(generate_model_points(h))
    b = canonical_dumps(generate_model_points(h))
    assert a == b


def test_different_seeds_differ():
    a = generate_model_points(model_hunch(variance=1.0, seed=1))
    b = generate_model_points(model_hunch(variance=1.0, seed=2))
    assert a != b


def test_noise_moments_large_sample():
    """Statistical oracle: residual mean within 0.05 of 0, sd within [0.9, 1.1]."""
    h = model_hunch(variance=1.0, n_points=10_000, domain=(0.0, 100.0), seed=7)
    residuals = [y - model_eval(h.model, x) for x, y in generate_model_points(h)]
    assert abs(statistics.fmean(residuals)) <= 0.05
    assert 0.9 <= statistics.stdev(residuals) <= 1.1


def test_gaussian_stream_is_reproducible():
    a = [GaussianStream(5).next_gauss() for _ in range(10)]
    b = [GaussianStream(5).next_gauss() for _ in range(10)]
    assert a == b


def test_flag_outliers_forced_example(points_dataset):
    # points (1,2),(2,4),(3,20) against y=2x: residuals 0, 0, 14.
    flagged = flag_model_outliers(points_dataset, "x", "y", LinearModel(2.0, 0.0), sd=1.0, k=3.0)
    assert flagged == {"i3"}


def test_flag_outliers_huge_k_flags_nothing(points_dataset):
    assert flag_model_outliers(points_dataset, "x", "y", LinearModel(2.0, 0.0), sd=1.0, k=1e18) == frozenset()


def test_flag_outliers_missing_field(points_dataset):
    with pytest.raises(MissingField):
        flag_model_outliers(points_dataset, "x", "nope", LinearModel(2.0, 0.0), sd=1.0, k=3.0)


def test_flag_outliers_matches_brute_force():
    rng = random.Random(31)
    for trial in range(60):
        pts = [(rng.uniform(-10, 10), rng.uniform(-30, 30)) for _ in range(rng.randint(1, 25))]
        ds = xy_dataset(pts, dataset_id=f"m{trial}")
        slope, intercept = rng.uniform(-3, 3), rng.uniform(-5, 5)
        sd, k = rng.uniform(0.1, 5), rng.uniform(0.1, 4)
        got = flag_model_outliers(ds, "x", "y", LinearModel(slope, intercept), sd, k)
        want = brute_outliers(ds, "x", "y", lambda x: slope * x + intercept, sd, k)
        assert got == want


def test_flag_outliers_skips_nulls():
    from hunches.core import DataItem, Dataset, Field

    ds = Dataset.create(
        "n1",
        [Field("x", "quantitative"), Field("y", "quantitative")],
        [DataItem("a", {"x": 1.0, "y": None}), DataItem("b", {"x": 1.0, "y": 99.0})],
    )
    assert flag_model_outliers(ds, "x", "y", LinearModel(0.0, 0.0), 1.0, 3.0) == {"b"}
