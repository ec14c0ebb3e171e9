"""Closed-form width exponents and total regime classification.

For a spec (r̄, p̄, q) write

    margin  =  <r̄>/d + 1/q − <r̄>/<p̄ ∘ r̄>          (compactness margin)
    M_j     =  Σ_i (1/r_i)(1/p_i − 1/p_j)           (regularity sums)

The class embeds boundedly into L_q iff margin ≥ 0.  It embeds compactly
iff margin > 0, except that when every p_k ≤ q a failed regularity sum
(M_j ≥ 1 for some j) already forces a non-compact embedding; that screen
is labelled ``T3-noncompact``.

When the embedding is compact the widths decay like n^(−θ) and θ has a
closed form in the regimes below (θ1 = <r̄>/d throughout):

    T1.1   all p_j ≥ q                    θ = θ1          (no regularity needed)
    T1.2a  q ≤ 2, all p_j ≤ q            θ = margin
    T1.2b  q ≤ 2, p̄ straddles q          θ = min{θ1, margin},  needs θ1 ≠ margin
    T1.3a  q > 2, all p_j ≤ 2            θ = min{θ2, θ3},      needs θ2 ≠ θ3
    T1.3b  q > 2, all p_j ≥ 2, some < q  θ = min{θ1, θ3},      needs θ1 ≠ θ3
    T1.3c  q > 2, p̄ straddles 2          θ = strict min of {θ1, θ2, θ3}

with θ2 = <r̄>/d + 1/2 − <r̄>/<p̄ ∘ r̄> and θ3 = (q/2)·margin.  The T1.2*
and T1.3* rows additionally require every M_j < 1.

In the plane (d = 2) the regularity sums can fail while the embedding
stays compact: with p_hi > q > p_lo the failure is exactly

    r_lo ≤ 1/p_lo − 1/p_hi          (small smoothness in the lo direction)

and the exponent is still explicit.  With λ and μ the interpolation
weights of 1/q resp. 1/2 between 1/p_hi and 1/p_lo, and

    ŝ = 1 / (1 − r_lo (1 − 2/q) / (1/p_lo − 1/p_hi))   ∈ [1, q/2],

    T4.1   q ≤ 2             θ = min{θ1, λ r_lo},        needs θ1 ≠ λ r_lo
    T4.2a  q > 2, p_lo ≥ 2   θ = min{θ1, ŝ λ r_lo},      needs θ1 ≠ ŝ λ r_lo
    T4.2b  q > 2, p_lo < 2   θ = strict min of {θ1, ŝ λ r_lo, μ r_lo}

Any required strict inequality that fails is a tie: the estimate is not
certified, the case label is ``uncovered`` and ``tie`` is set.  Everything
here is exact rational arithmetic; the LP route in `exponent` recomputes
the same θ values from the raw piecewise objective and the two are checked
against each other in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .params import ProblemSpec

__all__ = [
    "RegimeReport",
    "CASE_LABELS",
    "check_bounded",
    "check_compact",
    "check_regularity",
    "regularity_sums",
    "noncompact_screen",
    "regular_exponent",
    "small_smoothness_exponent",
    "classify_regime",
]

_ONE = Fraction(1)
_HALF = Fraction(1, 2)

CASE_LABELS = (
    "T1.1",
    "T1.2a",
    "T1.2b",
    "T1.3a",
    "T1.3b",
    "T1.3c",
    "T4.1",
    "T4.2a",
    "T4.2b",
    "T3-noncompact",
    "uncovered",
)


@dataclass(frozen=True)
class RegimeReport:
    bounded: bool
    compact: bool
    regularity: bool
    case: str
    thetas: dict[str, Fraction] = field(default_factory=dict)
    exponent: Fraction | None = None
    tie: bool = False


def regularity_sums(spec: ProblemSpec) -> tuple[Fraction, ...]:
    """M_j = Σ_i (1/r_i)(1/p_i − 1/p_j) for each j."""
    inv_r = [_ONE / r for r in spec.r]
    inv_p = [_ONE / p for p in spec.p]
    total_r = sum(inv_r)
    dot = sum(ir * ip for ir, ip in zip(inv_r, inv_p))
    return tuple(dot - ip * total_r for ip in inv_p)


def check_bounded(spec: ProblemSpec) -> bool:
    return spec.compact_margin() >= 0


def check_regularity(spec: ProblemSpec) -> bool:
    """All regularity sums strictly below 1."""
    return all(m < 1 for m in regularity_sums(spec))


def noncompact_screen(spec: ProblemSpec) -> bool | None:
    """Non-compactness screen for the all-p≤q range.

    Returns None when some p_j > q (the screen does not apply), else
    whether some regularity sum reaches 1, which forces a non-compact
    embedding regardless of the compactness margin.
    """
    if any(pj > spec.q for pj in spec.p):
        return None
    return any(m >= 1 for m in regularity_sums(spec))


def check_compact(spec: ProblemSpec) -> bool:
    """Compact embedding: positive margin and the screen does not fire."""
    if noncompact_screen(spec):
        return False
    return spec.compact_margin() > 0


def _theta1(spec: ProblemSpec) -> Fraction:
    return spec.r_mean() / spec.d


def _strict_min(values: dict[str, Fraction]) -> tuple[Fraction | None, bool]:
    """(strict minimum, tie flag): None exponent when the min is shared."""
    items = sorted(values.items(), key=lambda kv: kv[1])
    if len(items) > 1 and items[0][1] == items[1][1]:
        return None, True
    return items[0][1], False


def regular_exponent(spec: ProblemSpec) -> RegimeReport | None:
    """The T1 closed forms, or None when their preconditions fail.

    Requires a strictly positive margin.  The all-p≥q row never needs the
    regularity sums; the other rows do.
    """
    margin = spec.compact_margin()
    bounded = margin >= 0
    regular = check_regularity(spec)
    q = spec.q
    t1 = _theta1(spec)
    if all(pj >= q for pj in spec.p):
        # margin >= theta1 > 0 automatically in this row.
        return RegimeReport(
            bounded=True,
            compact=True,
            regularity=regular,
            case="T1.1",
            thetas={"theta1": t1},
            exponent=t1,
        )
    if margin <= 0 or not regular:
        return None
    if q <= 2:
        thetas = {"theta1": t1, "theta2": margin}
        if all(pj <= q for pj in spec.p):
            return RegimeReport(bounded, True, regular, "T1.2a", thetas, margin)
        # p̄ straddles q
        if t1 == margin:
            return RegimeReport(bounded, True, regular, "uncovered", thetas, None, tie=True)
        return RegimeReport(bounded, True, regular, "T1.2b", thetas, min(t1, margin))
    # q > 2 with some p_j < q
    t2 = t1 + _HALF - spec.r_mean() / spec.pr_mean()
    t3 = (q / 2) * margin
    thetas = {"theta1": t1, "theta2": t2, "theta3": t3}
    if all(pj <= 2 for pj in spec.p):
        if t2 == t3:
            return RegimeReport(bounded, True, regular, "uncovered", thetas, None, tie=True)
        return RegimeReport(bounded, True, regular, "T1.3a", thetas, min(t2, t3))
    if all(pj >= 2 for pj in spec.p):
        if t1 == t3:
            return RegimeReport(bounded, True, regular, "uncovered", thetas, None, tie=True)
        return RegimeReport(bounded, True, regular, "T1.3b", thetas, min(t1, t3))
    exponent, tie = _strict_min(thetas)
    if tie:
        return RegimeReport(bounded, True, regular, "uncovered", thetas, None, tie=True)
    return RegimeReport(bounded, True, regular, "T1.3c", thetas, exponent)


def small_smoothness_exponent(spec: ProblemSpec) -> RegimeReport | None:
    """The planar T4 closed forms, or None when their preconditions fail.

    Preconditions: d = 2, the p̄ straddle p_lo < q < p_hi (either coordinate
    order), small smoothness r_lo ≤ 1/p_lo − 1/p_hi, and a positive margin.
    """
    if spec.d != 2:
        return None
    margin = spec.compact_margin()
    if margin <= 0:
        return None
    if spec.p[0] > spec.q > spec.p[1]:
        hi, lo = 0, 1
    elif spec.p[1] > spec.q > spec.p[0]:
        hi, lo = 1, 0
    else:
        return None
    x_hi, x_lo = _ONE / spec.p[hi], _ONE / spec.p[lo]
    r_lo = spec.r[lo]
    if r_lo > x_lo - x_hi:
        return None
    regular = check_regularity(spec)  # always False here; reported for context
    q = spec.q
    t1 = _theta1(spec)
    lam = (_ONE / q - x_hi) / (x_lo - x_hi)
    if q <= 2:
        thetas = {"theta1": t1, "theta2": lam * r_lo}
        exponent, tie = _strict_min(thetas)
        case = "uncovered" if tie else "T4.1"
        return RegimeReport(True, True, regular, case, thetas, exponent, tie)
    s_hat = _ONE / (_ONE - r_lo * (_ONE - 2 / q) / (x_lo - x_hi))
    if spec.p[lo] >= 2:
        thetas = {"theta1": t1, "theta2": s_hat * lam * r_lo}
        exponent, tie = _strict_min(thetas)
        case = "uncovered" if tie else "T4.2a"
        return RegimeReport(True, True, regular, case, thetas, exponent, tie)
    mu = (_HALF - x_hi) / (x_lo - x_hi)
    thetas = {"theta1": t1, "theta2": s_hat * lam * r_lo, "theta3": mu * r_lo}
    exponent, tie = _strict_min(thetas)
    case = "uncovered" if tie else "T4.2b"
    return RegimeReport(True, True, regular, case, thetas, exponent, tie)


def classify_regime(spec: ProblemSpec) -> RegimeReport:
    """Total classification: every spec gets exactly one case label.

    Order of screens: the non-compact screen (all p ≤ q, a regularity sum
    reaching 1) wins; then all-p≥q (always compact); then a non-positive
    margin (non-compact, no estimate); then the regular T1 rows; then the
    planar small-smoothness rows; everything else is ``uncovered``.
    """
    margin = spec.compact_margin()
    bounded = margin >= 0
    regular = check_regularity(spec)
    if noncompact_screen(spec):
        return RegimeReport(bounded, False, regular, "T3-noncompact")
    report = regular_exponent(spec)
    if report is not None:
        return report
    if margin <= 0:
        return RegimeReport(bounded, False, regular, "uncovered")
    report = small_smoothness_exponent(spec)
    if report is not None:
        return report
    return RegimeReport(bounded, True, regular, "uncovered")
