"""Problem parameters and the exact arithmetic they share.

A smoothness/integrability specification is a triple (r̄, p̄, q) with

    r̄ = (r_1, ..., r_d),   r_j > 0        directional smoothness orders,
    p̄ = (p_1, ..., p_d),   1 < p_j < ∞    directional integrability,
    q,                      1 < q < ∞     target integrability.

Everything downstream is driven by a handful of exact quantities:

    <ā>           = d / (1/a_1 + ... + 1/a_d)       harmonic mean,
    ā ∘ b̄         = (a_1 b_1, ..., a_d b_d)          coordinatewise product,
    <r̄>/d + 1/q − <r̄>/<p̄ ∘ r̄>                        compactness margin.

All arithmetic is over `fractions.Fraction`; nothing in this module rounds.

Index conventions: coordinates are 0-based everywhere in code.  Rendered
output (CLI, reports) prints 1-based names like ``p1`` to match the flag
names, and that is purely presentation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "ParameterError",
    "RangeError",
    "ProblemSpec",
    "IndexPartition",
    "InterpCoeffs",
    "harmonic_mean",
    "hadamard",
    "partition_indices",
    "interp_coeffs",
    "as_fraction",
]

#: Hard cap on the number of coordinates.  The closed forms are cheap at any
#: d, but the grid oracle enumerates a d-simplex lattice and the pair maps
#: are quadratic, so keep d honest.
MAX_DIMENSION = 16


class ParameterError(ValueError):
    """A parameter lies outside its mathematical domain."""


class RangeError(ParameterError):
    """A structurally valid parameter violates a range precondition."""


def as_fraction(x) -> Fraction:
    """Coerce `x` to an exact Fraction.

    Accepts Fraction, int, or a string like "3/4" or "2".  Floats are
    rejected on purpose: a float argument is almost always a silent loss
    of exactness at the call site.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParameterError(f"not an exact rational: {x!r}") from exc
    raise ParameterError(
        f"expected an exact rational (Fraction, int, or 'a/b' string), got {type(x).__name__}"
    )


def harmonic_mean(values: Iterable[Fraction]) -> Fraction:
    """Harmonic mean <ā> = d / Σ 1/a_j of positive rationals."""
    vals = [as_fraction(v) for v in values]
    if not vals:
        raise ParameterError("harmonic mean of an empty tuple")
    for v in vals:
        if v <= 0:
            raise ParameterError(f"harmonic mean needs positive entries, got {v}")
    return Fraction(len(vals)) / sum(Fraction(1) / v for v in vals)


def hadamard(a: Iterable[Fraction], b: Iterable[Fraction]) -> tuple[Fraction, ...]:
    """Coordinatewise product ā ∘ b̄."""
    av = tuple(as_fraction(x) for x in a)
    bv = tuple(as_fraction(x) for x in b)
    if len(av) != len(bv):
        raise ParameterError(f"length mismatch: {len(av)} vs {len(bv)}")
    return tuple(x * y for x, y in zip(av, bv))


@dataclass(frozen=True)
class ProblemSpec:
    """An exact (r̄, p̄, q) triple with validated domains."""

    r: tuple[Fraction, ...]
    p: tuple[Fraction, ...]
    q: Fraction

    def __init__(self, r, p, q):
        object.__setattr__(self, "r", tuple(as_fraction(x) for x in r))
        object.__setattr__(self, "p", tuple(as_fraction(x) for x in p))
        object.__setattr__(self, "q", as_fraction(q))
        self._validate()

    def _validate(self) -> None:
        d = len(self.r)
        if d < 2:
            raise ParameterError(f"need at least 2 coordinates, got {d}")
        if d > MAX_DIMENSION:
            raise RangeError(f"d = {d} exceeds the supported maximum {MAX_DIMENSION}")
        if len(self.p) != d:
            raise ParameterError(f"|p| = {len(self.p)} does not match |r| = {d}")
        for j, rj in enumerate(self.r):
            if rj <= 0:
                raise ParameterError(f"r{j + 1} = {rj} must be > 0")
        for j, pj in enumerate(self.p):
            if pj <= 1:
                raise ParameterError(f"p{j + 1} = {pj} must be > 1 (and finite)")
        if self.q <= 1:
            raise ParameterError(f"q = {self.q} must be > 1 (and finite)")

    @property
    def d(self) -> int:
        return len(self.r)

    def r_mean(self) -> Fraction:
        """Harmonic mean <r̄> of the smoothness orders."""
        return harmonic_mean(self.r)

    def pr_mean(self) -> Fraction:
        """Harmonic mean <p̄ ∘ r̄> of the coordinatewise products p_j r_j."""
        return harmonic_mean(hadamard(self.p, self.r))

    def compact_margin(self) -> Fraction:
        """<r̄>/d + 1/q − <r̄>/<p̄ ∘ r̄>, the exact compactness margin.

        ≥ 0 means the class embeds boundedly into L_q; > 0 is the strict
        margin required by every order estimate in this package.
        """
        rm = self.r_mean()
        return rm / self.d + Fraction(1) / self.q - rm / self.pr_mean()

    def permuted(self, order: tuple[int, ...]) -> "ProblemSpec":
        """The same spec with coordinates reordered by `order`."""
        if sorted(order) != list(range(self.d)):
            raise ParameterError(f"not a permutation of 0..{self.d - 1}: {order}")
        return ProblemSpec(
            r=tuple(self.r[i] for i in order),
            p=tuple(self.p[i] for i in order),
            q=self.q,
        )

    def __str__(self) -> str:
        rs = ",".join(str(x) for x in self.r)
        ps = ",".join(str(x) for x in self.p)
        return f"ProblemSpec(r=({rs}), p=({ps}), q={self.q})"


@dataclass(frozen=True)
class IndexPartition:
    """Coordinates split by how p_j compares with the thresholds.

    For q ≤ 2 the only threshold is q itself:

        I0  = {j : p_j ≥ q}     J0  = {j : p_j ≤ q}
        I0p = {j : p_j > q}     J0p = {j : p_j < q}

    For q > 2 there are two thresholds, q and 2:

        I   = {j : p_j ≥ q}     J  = {j : 2 ≤ p_j ≤ q}    K  = {j : p_j ≤ 2}
        Ip  = {j : p_j > q}     Jp = {j : 2 < p_j < q}    Kp = {j : p_j < 2}

    Sets are closed, primed sets open, so boundary coordinates (p_j = q, or
    p_j = 2 when q > 2) belong to two closed sets and no open one.
    """

    regime: str  # "low-q" (q ≤ 2) or "high-q" (q > 2)
    I0: frozenset[int] | None = None
    J0: frozenset[int] | None = None
    I0p: frozenset[int] | None = None
    J0p: frozenset[int] | None = None
    I: frozenset[int] | None = None
    J: frozenset[int] | None = None
    K: frozenset[int] | None = None
    Ip: frozenset[int] | None = None
    Jp: frozenset[int] | None = None
    Kp: frozenset[int] | None = None


def partition_indices(spec: ProblemSpec) -> IndexPartition:
    """Split coordinate indices by the comparisons p_j vs q (and 2 if q > 2)."""
    q = spec.q
    if q <= 2:
        return IndexPartition(
            regime="low-q",
            I0=frozenset(j for j, pj in enumerate(spec.p) if pj >= q),
            J0=frozenset(j for j, pj in enumerate(spec.p) if pj <= q),
            I0p=frozenset(j for j, pj in enumerate(spec.p) if pj > q),
            J0p=frozenset(j for j, pj in enumerate(spec.p) if pj < q),
        )
    two = Fraction(2)
    return IndexPartition(
        regime="high-q",
        I=frozenset(j for j, pj in enumerate(spec.p) if pj >= q),
        J=frozenset(j for j, pj in enumerate(spec.p) if two <= pj <= q),
        K=frozenset(j for j, pj in enumerate(spec.p) if pj <= two),
        Ip=frozenset(j for j, pj in enumerate(spec.p) if pj > q),
        Jp=frozenset(j for j, pj in enumerate(spec.p) if two < pj < q),
        Kp=frozenset(j for j, pj in enumerate(spec.p) if pj < two),
    )


def _interp_weight(level: Fraction, pi: Fraction, pj: Fraction) -> Fraction:
    """Weight λ with  level = (1−λ)/p_i + λ/p_j,  exact.

    Well defined whenever p_i ≠ p_j; the callers only ask for pairs with
    1/p_j > level > 1/p_i, which lands λ strictly inside (0, 1).
    """
    xi, xj = Fraction(1) / pi, Fraction(1) / pj
    return (level - xi) / (xj - xi)


@dataclass(frozen=True)
class InterpCoeffs:
    """Interpolation weights between coordinate pairs.

    lam[(i, j)] solves 1/q = (1−λ)/p_i + λ/p_j; defined for p_i > q > p_j
    (within the pair families the objective construction needs).

    mu[(i, j)] solves 1/2 = (1−μ)/p_i + μ/p_j; only present when q > 2,
    for p_i > 2 > p_j.
    """

    lam: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)
    mu: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)


def interp_coeffs(spec: ProblemSpec, part: IndexPartition | None = None) -> InterpCoeffs:
    """All λ (and, for q > 2, μ) pair weights the objective ever uses.

    q ≤ 2: λ over I0p × J0p.
    q > 2: λ over Ip × (Jp ∪ K), μ over (I ∪ Jp) × Kp.

    d ≤ 16 keeps both maps tiny, so they are built eagerly.
    """
    part = part or partition_indices(spec)
    inv_q = Fraction(1) / spec.q
    half = Fraction(1, 2)
    lam: dict[tuple[int, int], Fraction] = {}
    mu: dict[tuple[int, int], Fraction] = {}
    if part.regime == "low-q":
        for i in sorted(part.I0p):
            for j in sorted(part.J0p):
                lam[(i, j)] = _interp_weight(inv_q, spec.p[i], spec.p[j])
    else:
        targets = sorted(part.Jp | part.K)
        for i in sorted(part.Ip):
            for j in targets:
                if i == j:
                    continue
                lam[(i, j)] = _interp_weight(inv_q, spec.p[i], spec.p[j])
        sources = sorted(part.I | part.Jp)
        for i in sources:
            for j in sorted(part.Kp):
                if i == j:
                    continue
                mu[(i, j)] = _interp_weight(half, spec.p[i], spec.p[j])
    return InterpCoeffs(lam=lam, mu=mu)
