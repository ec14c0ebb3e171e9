"""Finite-dimensional widths: single balls, intersections, dyadic blocks."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from widthcalc.finitedim import (
    BallSpec,
    CheckedInequality,
    IntersectionSpec,
    classify_branch,
    cross_term_dominated,
    dyadic_block_order,
    intersection_order,
    phi_value,
    psi_value,
    single_ball_order,
    vk_lower_bound,
    vk_vertex_norm,
)
from widthcalc.params import ParameterError, ProblemSpec, RangeError
from widthcalc.values import INF, PowerProduct


def _pp(base, exp):
    return PowerProduct.from_pow(base, F(exp))


def _spec(r, p, q):
    return ProblemSpec(r=tuple(F(v) for v in r), p=tuple(F(v) for v in p), q=F(q))


# ---------------------------------------------------------------------------
# single balls


def test_exact_width_for_q_below_p():
    order = single_ball_order(8, 1, 3, 2)
    assert order.branch == "exact"
    assert order.value == _pp(7, "1/6")


def test_exact_width_cube_case():
    order = single_ball_order(16, 4, INF, 2)
    assert order.value == _pp(12, "1/2") == _pp(2, 1) * _pp(3, "1/2")


def test_exact_width_degenerate_cases():
    assert single_ball_order(10, 3, INF, INF).value == PowerProduct.one()
    assert single_ball_order(5, 5, 3, 2).value.is_zero


def test_low_q_width_is_order_one():
    order = single_ball_order(16, 8, 1, 2)
    assert order.branch == "unit" and order.value == PowerProduct.one()


def test_high_q_gaussian_factor_full_strength():
    order = single_ball_order(16, 8, 2, 4)
    assert order.branch == "gaussian"
    assert order.value == _pp(2, "-1/2")


def test_high_q_gaussian_factor_partial_strength():
    # omega = (1/3 - 1/4) / (1/2 - 1/4) = 1/3
    order = single_ball_order(16, 8, 3, 4)
    assert order.branch == "gaussian"
    assert order.value == _pp(2, "-1/6")


def test_high_q_small_budget_saturates_at_one():
    assert single_ball_order(16, 1, 2, 4).branch == "unit"
    assert single_ball_order(16, 0, 2, 4).branch == "unit"


def test_single_ball_rejects_bad_arguments():
    with pytest.raises(RangeError):
        single_ball_order(10, 6, 1, 2)  # p < q needs n <= N/2
    with pytest.raises(ParameterError):
        single_ball_order(10, 2, 2, INF)  # q = inf needs p = inf
    with pytest.raises(ParameterError):
        single_ball_order(10, 2, "1/2", 2)
    with pytest.raises(ParameterError):
        single_ball_order(10, 11, 3, 2)
    with pytest.raises(ParameterError):
        single_ball_order(0, 0, 3, 2)


def test_vertex_norms():
    assert vk_vertex_norm(3, 8) == _pp(2, 1)
    assert vk_vertex_norm(INF, 5) == PowerProduct.one()
    with pytest.raises(ParameterError):
        vk_vertex_norm(3, 0)


def test_sparse_set_lower_bounds():
    assert vk_lower_bound(64, 16, 2, 9) == _pp(3, 1)
    # q = 4: the budget pivot N^(2/q) k^(1-2/q) = 64 * 4 = 256
    assert vk_lower_bound(4096, 256, 4, 16) == _pp(2, 1)
    assert vk_lower_bound(4096, 512, 4, 16) == _pp(2, "1/2")
    with pytest.raises(RangeError):
        vk_lower_bound(64, 40, 2, 9)


# ---------------------------------------------------------------------------
# intersections


def test_ball_and_intersection_validation():
    with pytest.raises(ParameterError):
        BallSpec("1/2", 1)
    with pytest.raises(ParameterError):
        BallSpec(3, 0)
    with pytest.raises(ParameterError):
        IntersectionSpec(64, 16, 2, ())
    spec = IntersectionSpec(64, 16, 2, ((3, "1/2"), ("3/2", 1)))
    assert all(isinstance(b, BallSpec) for b in spec.balls)
    assert spec.balls[0].nu == _pp(2, -1)


def test_checked_inequality_is_rederived():
    good = CheckedInequality("ok", PowerProduct.one(), _pp(2, 1))
    bad = CheckedInequality("bad", _pp(2, 1), PowerProduct.one())
    assert good.holds and not bad.holds


def test_cross_term_interpolates_cube_and_cross_polytope():
    spec = IntersectionSpec(16, 4, 2, ((INF, "1/4"), (1, 1)))
    order = intersection_order(spec)
    assert order.branch == "cross-lambda"
    assert order.value == _pp(2, -1)
    case, cert = classify_branch(spec)
    assert case == "cross-lambda-dominant"
    assert cert.kind == "Vk-inclusion" and cert.k == 4
    assert cert.scale == _pp(2, -2)
    assert cert.certified_value == order.value
    assert cert.verify()


LOW_Q_CASES = [
    # (balls, case, kind, k, value)
    ((("3/2", "1/4"), (3, 1)), "small-dominant", "B1-inclusion", 1, _pp(2, -2)),
    (((3, "1/64"), ("3/2", 10)), "large-dominant", "Binf-inclusion", 64, _pp(2, -5)),
    (((3, "1/2"), ("3/2", 1)), "cross-lambda-dominant", "Vk-inclusion", 8, _pp(2, "-1/2")),
]


@pytest.mark.parametrize("balls,case,kind,k,value", LOW_Q_CASES)
def test_low_q_dominance_patterns(balls, case, kind, k, value):
    spec = IntersectionSpec(64, 16, 2, balls)
    got_case, cert = classify_branch(spec)
    assert got_case == case
    assert cert.kind == kind and cert.k == k
    assert cert.verify()
    assert cert.certified_value == value == intersection_order(spec).value


HIGH_Q_CASES = [
    ((("3/2", "1/8"), (3, 1)), "small-dominant", "B1-inclusion", 1, _pp(2, -4)),
    (((8, "1/64"), ("3/2", 100)), "large-dominant", "Binf-inclusion", 4096, _pp(2, "-9/2")),
    (((3, 1), ("3/2", 100), (8, 100)), "mid-dominant", "Vk-inclusion", 16, _pp(2, "-1/3")),
    (((8, "1/16"), ("3/2", 1)), "cross-lambda-dominant", "Vk-inclusion", 168, _pp(2, "-40/13")),
    (((8, "1/2"), ("3/2", 2)), "cross-mu-dominant", "Vk-inclusion", 12, _pp(2, "-8/13")),
]


@pytest.mark.parametrize("balls,case,kind,k,value", HIGH_Q_CASES)
def test_high_q_dominance_patterns(balls, case, kind, k, value):
    spec = IntersectionSpec(4096, 256, 4, balls)
    got_case, cert = classify_branch(spec)
    assert got_case == case
    assert cert.kind == kind and cert.k == k
    assert cert.verify()
    assert cert.certified_value == value == intersection_order(spec).value


def test_threshold_exponents_stay_unclassified():
    assert classify_branch(IntersectionSpec(64, 16, 2, ((2, 1), (3, 1)))) == (
        "unclassified",
        None,
    )
    assert classify_branch(IntersectionSpec(4096, 256, 4, ((2, 1), (8, 1)))) == (
        "unclassified",
        None,
    )


def test_display_range_is_enforced():
    spec = IntersectionSpec(4096, 8, 4, ((8, 1),))
    with pytest.raises(RangeError):
        intersection_order(spec)  # n < N^(2/q)
    with pytest.raises(RangeError):
        intersection_order(IntersectionSpec(16, 9, 2, ((3, 1),)))


def test_one_ball_intersection_matches_single_ball():
    # below q the two displays agree exactly on the shared range
    for p in (F(3), F(3, 2), F(2)):
        if p >= 4:
            continue
        one = intersection_order(IntersectionSpec(4096, 256, 4, ((p, 1),)))
        alone = single_ball_order(4096, 256, p, 4)
        assert one.value == alone.value
    # above q the intersection uses N where the exact width has N - n
    one = intersection_order(IntersectionSpec(4096, 256, 4, ((8, 1),)))
    alone = single_ball_order(4096, 256, 8, 4)
    ratio = one.value / alone.value
    assert PowerProduct.one() <= ratio <= _pp(2, 1)


# ---------------------------------------------------------------------------
# dyadic blocks


def test_low_q_block_order_matches_phi():
    spec = _spec((1, 2), (3, "3/2"), 2)
    assert phi_value(spec, (F(3), F(2))) == F(7, 2)
    order = dyadic_block_order(spec, (3, 2), 4)
    assert order.value == _pp(2, "-7/2")


def test_high_q_block_order_matches_psi():
    spec = _spec((2, 1), (8, "3/2"), 4)
    m_vec, m, log_n = (2, 3), F(5), F(3)
    rate = psi_value(spec, tuple(F(v) for v in m_vec), m, log_n)
    assert rate == F(4)
    order = dyadic_block_order(spec, m_vec, 2**3)
    assert order.value == _pp(2, -rate)


@given(
    st.tuples(st.integers(0, 6), st.integers(0, 6)).filter(lambda t: sum(t) >= 2),
    st.integers(0, 3),
)
@settings(max_examples=60, deadline=None)
def test_block_orders_follow_the_low_q_rate(m_vec, shift):
    spec = _spec(("1/2", 3), (4, "4/3"), 2)
    m = sum(m_vec)
    n = min(2**shift, 2 ** (m - 1))
    order = dyadic_block_order(spec, m_vec, n)
    assert order.value == _pp(2, -phi_value(spec, tuple(F(v) for v in m_vec)))


@given(
    st.tuples(st.integers(1, 6), st.integers(1, 6)),
)
@settings(max_examples=60, deadline=None)
def test_block_orders_follow_the_high_q_rate(m_vec):
    spec = _spec((2, "1/2"), (8, "3/2"), 4)
    m = sum(m_vec)
    log_n = -(-m // 2)  # smallest integer L with 2^L >= N^(2/q)
    if log_n > m - 1:
        return
    order = dyadic_block_order(spec, m_vec, 2**log_n)
    rate = psi_value(spec, tuple(F(v) for v in m_vec), F(m), F(log_n))
    assert order.value == _pp(2, -rate)


@given(
    st.tuples(rationals := st.fractions(min_value=0, max_value=8, max_denominator=12),
              rationals),
    st.fractions(min_value=F(1, 4), max_value=6, max_denominator=8),
)
@settings(max_examples=80, deadline=None)
def test_block_rate_is_positively_homogeneous(t_vec, c):
    spec = _spec((1, "1/3"), (5, "5/4"), 2)
    scaled = tuple(c * v for v in t_vec)
    assert phi_value(spec, scaled) == c * phi_value(spec, t_vec)


@given(
    st.tuples(st.fractions(min_value=0, max_value=8, max_denominator=12),
              st.fractions(min_value=0, max_value=8, max_denominator=12)),
)
@settings(max_examples=100, deadline=None)
def test_interpolated_cross_rates_are_dominated(m_vec):
    for spec in (
        _spec((2, 1), (8, "3/2"), 4),
        _spec((1, "1/2"), (3, "4/3"), "5/2"),
    ):
        checks = cross_term_dominated(spec, m_vec)
        assert checks and all(c.holds for c in checks)


def test_domination_needs_a_straddling_pair():
    spec = _spec((1, 1), (8, 8), 4)
    assert cross_term_dominated(spec, (F(1), F(1))) == ()
    with pytest.raises(ParameterError):
        cross_term_dominated(_spec((1, 1), (3, "3/2"), 2), (F(1), F(1)))
