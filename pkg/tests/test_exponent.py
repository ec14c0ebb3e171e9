"""The piecewise objective and its exact LP minimisation."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from widthcalc.exponent import (
    build_objective,
    candidate_vertices,
    classify_region,
    minimize,
    regularity_margins,
)
from widthcalc.oracle import Lcg, h_high_value, h_low_style_value
from widthcalc.params import ParameterError, ProblemSpec, partition_indices

rationals = st.fractions(min_value=F(1, 6), max_value=F(6), max_denominator=10)


def _spec(r, p, q):
    return ProblemSpec(
        r=tuple(F(v) for v in r), p=tuple(F(v) for v in p), q=F(q)
    )


def test_balanced_large_p_pair_has_exponent_one_half():
    res = minimize(build_objective(_spec((1, 1), (3, 3), 2)))
    assert res.theta == F(1, 2)
    assert res.argmin_alpha == (F(1, 2), F(1, 2))
    assert res.unique
    assert {t[0] for t in res.active_pieces} == {"large-p"}


def test_small_p_pair_minimum_is_the_margin():
    res = minimize(build_objective(_spec((1, 1), ("3/2", "3/2"), 2)))
    assert res.theta == F(1, 3)


def test_high_q_balanced_pair_keeps_one_half():
    res = minimize(build_objective(_spec((1, 1), (3, 3), 4)))
    assert res.theta == F(1, 2)
    assert res.argmin_s == 1


def test_small_smoothness_minimum_sits_on_a_vertex():
    res = minimize(build_objective(_spec((1, "1/4"), (8, "8/5"), 2)))
    assert res.theta == F(3, 16)
    assert res.argmin_alpha == (F(0), F(1))
    assert any(t[0] == "cross-lambda" for t in res.active_pieces)


def test_flat_objective_reports_non_unique_argmin():
    # r = (2, 2), p = (3, 3/2), q = 2 ties theta1 with the margin: the
    # optimal face is a segment, not a point.
    res = minimize(build_objective(_spec((2, 2), (3, "3/2"), 2)))
    assert res.theta == F(1)
    assert not res.unique


def test_regularity_margins_worked_example():
    spec = _spec((1, "1/4"), (8, "8/5"), 2)
    assert regularity_margins(spec) == (F(2), F(-1, 2))


def _tset(spec):
    part = partition_indices(spec)
    every = frozenset(range(spec.d))
    if part.I == every:
        return (0,)
    if part.K == every:
        return (1, 2)
    if part.I | part.J == every:
        return (0, 2)
    return (0, 1, 2)


@pytest.mark.parametrize(
    "r,p,q",
    [
        ((1, 1), (3, 3), 4),  # all mid: vertex 2 must be skipped
        ((1, 2), ("3/2", "5/4"), 3),  # all small
        ((1, 1), (5, "7/2"), 3),  # all large/mid mix
        ((2, 1), (8, "3/2"), 4),  # straddles both thresholds
        ((1, 3), (6, "4/3"), "7/2"),
    ],
)
def test_candidate_vertices_cover_the_lp_minimum(r, p, q):
    spec = _spec(r, p, q)
    vertices = candidate_vertices(spec)
    theta = minimize(build_objective(spec)).theta
    values = [h_high_value(spec, alpha, s) for alpha, s in vertices]
    assert min(values[t] for t in _tset(spec)) == theta


def test_candidate_vertices_reject_low_q_and_irregular_specs():
    with pytest.raises(ParameterError):
        candidate_vertices(_spec((1, 1), (3, 3), 2))
    with pytest.raises(ParameterError):
        candidate_vertices(_spec((1, "1/4"), (8, "8/5"), 4))  # a margin reaches 1


def _feasible_point(rng, spec):
    q = spec.q
    s = rng.fraction_between(1, q / 2) if q > 2 else F(1)
    weights = [rng.fraction_between(0, 4) for _ in range(spec.d)]
    total = sum(weights)
    return tuple(w * s / total for w in weights), s


def test_region_systems_agree_with_direct_maximisation():
    rng = Lcg(5)
    specs = [
        _spec((2, 1), (8, "3/2"), 4),
        _spec((1, 1), (3, 5), 4),
        _spec((1, 2), ("7/4", "5/4"), 3),
        _spec(("1/2", 3), (9, "4/3"), "5/2"),
    ]
    for spec in specs:
        obj = build_objective(spec)
        for _ in range(100):
            alpha, s = _feasible_point(rng, spec)
            tag = classify_region(spec, alpha, s)
            top = max(piece.value(alpha, s) for piece in obj.pieces)
            active = {pc.provenance for pc in obj.pieces if pc.value(alpha, s) == top}
            assert tag in active


def test_region_classification_rejects_threshold_exponents():
    with pytest.raises(ParameterError):
        classify_region(_spec((1, 1), (2, 5), 4), (F(1, 2), F(1, 2)), F(1))
    with pytest.raises(ParameterError):
        classify_region(_spec((1, 1), (3, 5), 4), (F(1), F(1)), F(1))  # sum != s


@settings(max_examples=60, deadline=None)
@given(
    st.tuples(rationals, rationals),
    st.tuples(rationals.map(lambda x: 1 + x), rationals.map(lambda x: 1 + x)),
    rationals.map(lambda x: 1 + x),
)
def test_minimum_is_invariant_under_coordinate_swap(r, p, q):
    spec = ProblemSpec(r=r, p=p, q=q)
    flipped = spec.permuted((1, 0))
    assert (
        minimize(build_objective(spec)).theta
        == minimize(build_objective(flipped)).theta
    )


def test_low_and_high_objectives_agree_with_oracle_tables():
    spec = _spec((2, 1), (3, "3/2"), 2)
    obj = build_objective(spec)
    point = (F(1, 3), F(2, 3))
    direct = max(piece.value(point, None) for piece in obj.pieces)
    assert direct == h_low_style_value(spec, point)

    spec = _spec((2, 1), (8, "3/2"), 4)
    obj = build_objective(spec)
    alpha, s = (F(1, 2), F(3, 2)), F(2)
    direct = max(piece.value(alpha, s) for piece in obj.pieces)
    assert direct == h_high_value(spec, alpha, s)
