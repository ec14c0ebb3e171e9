"""Width exponents as minima of piecewise-linear objectives.

The decay exponent of the widths d_n of a smoothness class (r̄, p̄, q) is the
minimum of a finite max of affine functions over a simplex-like domain:

    q ≤ 2:   h(ᾱ)     over D  = {ᾱ ≥ 0, Σ α_j = 1},
    q > 2:   h̃(ᾱ, s)  over D̃ = {ᾱ ≥ 0, Σ α_j = s, 1 ≤ s ≤ q/2},

where the affine pieces are built from the index partition of p̄ against q
(and 2 when q > 2).  With x_j := 1/p_j the piece families are

    large-p   (p_j ≥ q):          r_j α_j
    small-p   (p_j ≤ q, q ≤ 2):   r_j α_j + 1/q − x_j
    mid-p     (2 ≤ p_j ≤ q < ∞):  r_j α_j − (1/2) c_j (s − 1),
                                  c_j = (x_j − 1/q)/(1/2 − 1/q)
    small-p   (p_j ≤ 2 < q):      r_j α_j − s x_j + 1/2
    cross-lambda (p_i > q > p_j): (1−λ_ij) r_i α_i + λ_ij r_j α_j
    cross-mu  (p_i > 2 > p_j):    (1−μ_ij) r_i α_i + μ_ij r_j α_j − s/2 + 1/2

with λ_ij, μ_ij the exact interpolation weights of 1/q resp. 1/2 between
x_i and x_j.  A family with an empty index set contributes no pieces.

The minimum, its argmin, whether the argmin is the unique minimiser, and
the active pieces there are all computed exactly with a rational simplex;
widths then decay like n^(−θ) (θ > 0) while θ ≤ 0 flags a class that is not
compactly embedded (the widths do not vanish).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import params
from ._simplex import solve_lp
from .params import ParameterError, ProblemSpec

__all__ = [
    "AffinePiece",
    "PiecewiseMax",
    "ExponentResult",
    "build_objective",
    "minimize",
    "candidate_vertices",
    "classify_region",
    "render_provenance",
]

_HALF = Fraction(1, 2)
_ONE = Fraction(1)
_ZERO = Fraction(0)

#: Provenance tag: (family, indices), 0-based indices.
Provenance = tuple[str, tuple[int, ...]]


def render_provenance(tag: Provenance) -> str:
    """Human form of a piece tag, 1-based: cross-lambda[i=1,j=3]."""
    family, idx = tag
    if len(idx) == 1:
        return f"{family}[j={idx[0] + 1}]"
    return f"{family}[i={idx[0] + 1},j={idx[1] + 1}]"


@dataclass(frozen=True)
class AffinePiece:
    """One affine piece  Σ coeffs_j α_j + s_coeff·s + const."""

    coeffs: tuple[Fraction, ...]
    s_coeff: Fraction
    const: Fraction
    provenance: Provenance

    def value(self, alpha: tuple[Fraction, ...], s: Fraction | None = None) -> Fraction:
        acc = sum((c * a for c, a in zip(self.coeffs, alpha)), start=self.const)
        if self.s_coeff:
            if s is None:
                raise ParameterError("piece has an s term but no s was given")
            acc += self.s_coeff * s
        return acc


@dataclass(frozen=True)
class PiecewiseMax:
    """max over pieces, together with its domain description."""

    dim: int
    has_s: bool
    s_max: Fraction | None  # q/2 when has_s, else None
    pieces: tuple[AffinePiece, ...]

    def value(self, alpha: tuple[Fraction, ...], s: Fraction | None = None) -> Fraction:
        if len(alpha) != self.dim:
            raise ParameterError(f"point has {len(alpha)} coordinates, objective wants {self.dim}")
        if self.has_s and s is None:
            raise ParameterError("objective needs an s coordinate")
        return max(p.value(alpha, s) for p in self.pieces)

    def active_at(
        self, alpha: tuple[Fraction, ...], s: Fraction | None = None
    ) -> tuple[Provenance, ...]:
        vals = [(p.value(alpha, s), p.provenance) for p in self.pieces]
        top = max(v for v, _ in vals)
        return tuple(tag for v, tag in vals if v == top)


@dataclass(frozen=True)
class ExponentResult:
    theta: Fraction
    argmin_alpha: tuple[Fraction, ...]
    argmin_s: Fraction | None
    unique: bool
    active_pieces: tuple[Provenance, ...]
    compact: str  # "compact" | "not-compact" | "boundary"


def _unit_coeffs(d: int, terms: dict[int, Fraction]) -> tuple[Fraction, ...]:
    out = [_ZERO] * d
    for j, c in terms.items():
        out[j] = c
    return tuple(out)


def build_objective(spec: ProblemSpec) -> PiecewiseMax:
    """Assemble the exact piecewise objective for `spec` (regime-dependent)."""
    d = spec.d
    part = params.partition_indices(spec)
    coeff = params.interp_coeffs(spec, part)
    inv_q = _ONE / spec.q
    pieces: list[AffinePiece] = []
    if part.regime == "low-q":
        for j in sorted(part.I0):
            pieces.append(
                AffinePiece(_unit_coeffs(d, {j: spec.r[j]}), _ZERO, _ZERO, ("large-p", (j,)))
            )
        for j in sorted(part.J0):
            const = inv_q - _ONE / spec.p[j]
            pieces.append(
                AffinePiece(_unit_coeffs(d, {j: spec.r[j]}), _ZERO, const, ("small-p", (j,)))
            )
        for (i, j), lam in sorted(coeff.lam.items()):
            cs = _unit_coeffs(d, {i: (1 - lam) * spec.r[i], j: lam * spec.r[j]})
            pieces.append(AffinePiece(cs, _ZERO, _ZERO, ("cross-lambda", (i, j))))
        return PiecewiseMax(dim=d, has_s=False, s_max=None, pieces=tuple(pieces))
    # q > 2
    theta_q = _HALF - inv_q
    for j in sorted(part.I):
        pieces.append(
            AffinePiece(_unit_coeffs(d, {j: spec.r[j]}), _ZERO, _ZERO, ("large-p", (j,)))
        )
    for j in sorted(part.J):
        cj = (_ONE / spec.p[j] - inv_q) / theta_q
        pieces.append(
            AffinePiece(
                _unit_coeffs(d, {j: spec.r[j]}),
                -_HALF * cj,
                _HALF * cj,
                ("mid-p", (j,)),
            )
        )
    for j in sorted(part.K):
        pieces.append(
            AffinePiece(
                _unit_coeffs(d, {j: spec.r[j]}),
                -_ONE / spec.p[j],
                _HALF,
                ("small-p", (j,)),
            )
        )
    for (i, j), lam in sorted(coeff.lam.items()):
        cs = _unit_coeffs(d, {i: (1 - lam) * spec.r[i], j: lam * spec.r[j]})
        pieces.append(AffinePiece(cs, _ZERO, _ZERO, ("cross-lambda", (i, j))))
    for (i, j), mu in sorted(coeff.mu.items()):
        cs = _unit_coeffs(d, {i: (1 - mu) * spec.r[i], j: mu * spec.r[j]})
        pieces.append(AffinePiece(cs, -_HALF, _HALF, ("cross-mu", (i, j))))
    return PiecewiseMax(dim=d, has_s=True, s_max=spec.q / 2, pieces=tuple(pieces))


def _epigraph_lp(obj: PiecewiseMax):
    """Standard-form data for  min t  s.t.  pieces ≤ t  on the domain.

    Variables (all ≥ 0):  α_0..α_{d−1} [, σ] , t⁺, t⁻   with s = 1 + σ and
    t = t⁺ − t⁻ (θ may be negative for non-compact classes).
    """
    d = obj.dim
    n = d + (1 if obj.has_s else 0) + 2
    i_sigma = d if obj.has_s else None
    i_tp, i_tm = n - 2, n - 1
    cost = [_ZERO] * n
    cost[i_tp], cost[i_tm] = _ONE, -_ONE
    # Σ α − σ = 1  (or Σ α = 1 when there is no s).
    row = [_ONE] * d + [_ZERO] * (n - d)
    if i_sigma is not None:
        row[i_sigma] = -_ONE
    A_eq, b_eq = [row], [_ONE]
    A_ub, b_ub = [], []
    if i_sigma is not None:
        up = [_ZERO] * n
        up[i_sigma] = _ONE
        A_ub.append(up)
        b_ub.append(obj.s_max - _ONE)
    for piece in obj.pieces:
        row = list(piece.coeffs) + [_ZERO] * (n - d)
        if i_sigma is not None:
            row[i_sigma] = piece.s_coeff
        row[i_tp], row[i_tm] = -_ONE, _ONE
        A_ub.append(row)
        # piece ≤ t with s = 1 + σ folds s_coeff into the constant.
        b_ub.append(-piece.const - (piece.s_coeff if obj.has_s else _ZERO))
    return cost, A_eq, b_eq, A_ub, b_ub, i_sigma


def _face_constraints(obj: PiecewiseMax, theta: Fraction):
    """Constraints of the optimal face {max of pieces = θ} ∩ domain.

    Same variables as the epigraph LP minus t; every point of the domain
    has objective ≥ θ, so max ≤ θ pins the face exactly.
    """
    d = obj.dim
    n = d + (1 if obj.has_s else 0)
    i_sigma = d if obj.has_s else None
    row = [_ONE] * d + ([_ZERO] if obj.has_s else [])
    if i_sigma is not None:
        row[i_sigma] = -_ONE
    A_eq, b_eq = [row], [_ONE]
    A_ub, b_ub = [], []
    if i_sigma is not None:
        up = [_ZERO] * n
        up[i_sigma] = _ONE
        A_ub.append(up)
        b_ub.append(obj.s_max - _ONE)
    for piece in obj.pieces:
        row = list(piece.coeffs) + ([piece.s_coeff] if obj.has_s else [])
        A_ub.append(row)
        b_ub.append(theta - piece.const - (piece.s_coeff if obj.has_s else _ZERO))
    return n, A_eq, b_eq, A_ub, b_ub


def minimize(obj: PiecewiseMax) -> ExponentResult:
    """Exact minimum of the objective over its domain, with uniqueness.

    Uniqueness is decided by probing the optimal face: the face is a
    polytope, and it is a single point iff every coordinate has equal
    minimum and maximum over it (face dimension zero).
    """
    if not obj.pieces:
        raise ParameterError("objective has no pieces")
    cost, A_eq, b_eq, A_ub, b_ub, i_sigma = _epigraph_lp(obj)
    res = solve_lp(cost, A_eq, b_eq, A_ub, b_ub)
    if res.status != "optimal":  # the domain is compact and nonempty
        raise ParameterError(f"degenerate objective: LP status {res.status}")
    theta = res.value
    alpha = res.x[: obj.dim]
    s = (_ONE + res.x[i_sigma]) if i_sigma is not None else None
    unique = True
    n, fA_eq, fb_eq, fA_ub, fb_ub = _face_constraints(obj, theta)
    for var in range(n):
        c = [_ZERO] * n
        c[var] = _ONE
        lo = solve_lp(c, fA_eq, fb_eq, fA_ub, fb_ub)
        c[var] = -_ONE
        hi = solve_lp(c, fA_eq, fb_eq, fA_ub, fb_ub)
        if lo.status != "optimal" or hi.status != "optimal":
            raise ParameterError("optimal face probe failed")
        if lo.value != -hi.value:
            unique = False
            break
    if theta > 0:
        compact = "compact"
    elif theta < 0:
        compact = "not-compact"
    else:
        compact = "boundary"
    return ExponentResult(
        theta=theta,
        argmin_alpha=alpha,
        argmin_s=s,
        unique=unique,
        active_pieces=obj.active_at(alpha, s),
        compact=compact,
    )


def regularity_margins(spec: ProblemSpec) -> tuple[Fraction, ...]:
    """The d sums  Σ_i (1/r_i)(1/p_i − 1/p_j),  one per j.

    Every sum < 1 is the regularity condition under which the interior
    candidate vertices below stay inside the domain.
    """
    inv_r = [_ONE / r for r in spec.r]
    inv_p = [_ONE / p for p in spec.p]
    return tuple(
        sum(ir * (ip - inv_p[j]) for ir, ip in zip(inv_r, inv_p)) for j in range(spec.d)
    )


def candidate_vertices(
    spec: ProblemSpec,
) -> tuple[tuple[tuple[Fraction, ...], Fraction], ...]:
    """The four candidate minimisers ξ_1..ξ_4 for q > 2 (exact).

    ξ_1 = (ᾱ¹, 1), ξ_2 = (ᾱ², 1), ξ_3 = ((q/2)ᾱ², q/2), ξ_4 = ((q/2)ᾱ¹, q/2)

    where ᾱ¹ equalises r_j α_j and ᾱ² equalises the small-p pieces:

        α¹_j = (1/r_j) / Σ_i (1/r_i)
        α²_j = (1 − Σ_i (1/r_i)(1/p_i − 1/p_j)) / (r_j Σ_i (1/r_i)).

    Requires q > 2 and all regularity sums < 1 (so every ᾱ² coordinate is
    positive and the points are genuinely inside the domain).
    """
    if spec.q <= 2:
        raise ParameterError("candidate vertices are defined for q > 2")
    margins = regularity_margins(spec)
    if any(m >= 1 for m in margins):
        raise ParameterError("regularity sums must all be < 1 for candidate vertices")
    inv_r_sum = sum(_ONE / r for r in spec.r)
    a1 = tuple((_ONE / r) / inv_r_sum for r in spec.r)
    a2 = tuple((_ONE - margins[j]) / (spec.r[j] * inv_r_sum) for j in range(spec.d))
    half_q = spec.q / 2
    a3 = tuple(half_q * v for v in a2)
    a4 = tuple(half_q * v for v in a1)
    return ((a1, _ONE), (a2, _ONE), (a3, half_q), (a4, half_q))


def classify_region(
    spec: ProblemSpec, alpha: tuple[Fraction, ...], s: Fraction
) -> Provenance:
    """Which piece is active at (ᾱ, s), decided by inequality systems only.

    This is the deliberately LP-free route: each piece family owns a region
    of the domain cut out by exact linear inequalities in (ᾱ, s), and the
    active piece at a point can be read off from which system the point
    satisfies.  Requires q > 2 and every p_i off the thresholds 2 and q
    (on thresholds the regions are glued and the answer is ambiguous);
    the point must be feasible.  Boundaries between regions are resolved
    by scanning families in a fixed order, so the returned piece is always
    one of the active ones.
    """
    q = spec.q
    if q <= 2:
        raise ParameterError("region classification is defined for q > 2")
    for j, pj in enumerate(spec.p):
        if pj == 2 or pj == q:
            raise ParameterError(f"p{j + 1} on a threshold (2 or q): regions are glued")
    d = spec.d
    if len(alpha) != d:
        raise ParameterError("point dimension mismatch")
    if any(a < 0 for a in alpha) or sum(alpha) != s or not (_ONE <= s <= q / 2):
        raise ParameterError("point is not in the feasible domain")
    part = params.partition_indices(spec)
    x = [_ONE / p for p in spec.p]
    g = [alpha[j] * spec.r[j] for j in range(d)]
    theta_q = _HALF - _ONE / q
    s1 = s - _ONE

    I, J, K = sorted(part.I), sorted(part.J), sorted(part.K)

    def ratio(i: int, j: int) -> Fraction:
        return (g[i] - g[j]) / (x[i] - x[j])

    for j in I:
        if all(g[j] - g[i] >= 0 for i in range(d)):
            return ("large-p", (j,))
    for j in J:
        if all(g[j] - g[i] >= _HALF * ((x[j] - x[i]) / theta_q) * s1 for i in range(d)):
            return ("mid-p", (j,))
    for j in K:
        if all(g[j] - g[i] >= s * x[j] - s * x[i] for i in range(d)):
            return ("small-p", (j,))
    for i in I:
        for j in sorted(part.J | part.K):
            if g[i] - g[j] > 0:
                continue
            if g[i] - g[j] < _HALF * ((x[i] - x[j]) / theta_q) * s1:
                continue
            rij = ratio(i, j)
            if all(rij >= ratio(i, k) for k in J + K if k != j):
                if all(rij <= ratio(k, j) for k in I if k != i):
                    return ("cross-lambda", (i, j))
    for i in sorted(part.I | part.J):
        for j in K:
            if g[i] - g[j] > _HALF * ((x[i] - x[j]) / theta_q) * s1:
                continue
            if g[i] - g[j] < s * x[i] - s * x[j]:
                continue
            rij = ratio(i, j)
            if all(rij >= ratio(i, k) for k in K if k != j):
                if all(rij <= ratio(k, j) for k in I + J if k != i):
                    return ("cross-mu", (i, j))
    raise ParameterError("no region system matched (should be impossible on the domain)")
