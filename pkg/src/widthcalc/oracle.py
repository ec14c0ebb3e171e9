"""Independent recomputation oracles for the decay-exponent machinery.

The closed forms in `closedform` and the LP route in `exponent` share no
code with this module beyond the parameter types.  Everything here is
rebuilt from the defining formulas so that a bug in either route shows up
as a disagreement:

  * `grid_minimize` brackets the true minimum of the piecewise objective
    by brute force on a rational lattice.  The objective is a max of
    affine pieces, hence Lipschitz; rounding any feasible point onto the
    lattice moves each coordinate by at most 1/G, so

        best − gap ≤ min ≤ best,   gap = (Σ_j max|coeff_j| + max|s coeff|)/G.

    Floats only prefilter lattice points; every candidate is re-evaluated
    in exact rational arithmetic before it can become `best`.
  * `check_scaling_identities` verifies, with zero tolerance, the two
    structural identities that tie the asymptotic objective to the
    finite-block rates: the s-face identity (the q > 2 objective on the
    face s = q/2 equals q/2 times the low-q-shaped objective) and the
    log-rescaling identity ψ(t̄, t; L) = L · h̃(t̄/L, t/L), plus positive
    homogeneity of the block rate φ.
  * `cross_validate` samples problem specs stratified over all nine
    closed-form branches and compares the closed form against the LP
    minimum, optionally against a grid bracket, and runs identity spot
    checks.  Reports are deterministic functions of (seed, samples): the
    generator is a fixed 64-bit linear congruential recurrence and the
    output contains no timestamps or environment details.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import closedform
from .exponent import build_objective, minimize
from .finitedim import BallSpec, IntersectionSpec, phi_value, psi_value
from .params import ParameterError, ProblemSpec, RangeError, as_fraction
from .values import INF, decimal_str

__all__ = [
    "Lcg",
    "BRANCH_LABELS",
    "SCREEN_LABEL",
    "GRID_ENV",
    "sample_branch",
    "sample_intersection",
    "h_low_style_value",
    "h_high_value",
    "GridBracket",
    "default_grid",
    "grid_minimize",
    "refine_bracket",
    "IdentityReport",
    "check_scaling_identities",
    "ValidationRecord",
    "ValidationReport",
    "cross_validate",
]

GRID_ENV = "WIDTHCALC_GRID"
_GUARD = 1 << 20

BRANCH_LABELS = (
    "T1.1",
    "T1.2a",
    "T1.2b",
    "T1.3a",
    "T1.3b",
    "T1.3c",
    "T4.1",
    "T4.2a",
    "T4.2b",
)
SCREEN_LABEL = "T3-noncompact"

_ONE = Fraction(1)
_HALF = Fraction(1, 2)


class Lcg:
    """Deterministic 64-bit linear congruential generator.

    Multiplier and increment are Knuth's MMIX constants modulo 2^64.  The
    top 63 bits feed rejection sampling, so draws are unbiased and the
    stream depends on nothing but the seed.
    """

    _A = 6364136223846793005
    _C = 1442695040888963407
    _MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self._state = seed & self._MASK
        self._step()

    def _step(self) -> int:
        self._state = (self._state * self._A + self._C) & self._MASK
        return self._state

    def rand_below(self, n: int) -> int:
        if n <= 0:
            raise ParameterError(f"rand_below needs n ≥ 1, got {n}")
        span = ((1 << 63) // n) * n
        while True:
            v = self._step() >> 1
            if v < span:
                return v % n

    def coin(self) -> bool:
        return bool(self._step() >> 63)

    def fraction_between(self, lo, hi, max_den: int = 12) -> Fraction:
        """A rational strictly inside (lo, hi) with denominator ≤ max_den."""
        lo, hi = as_fraction(lo), as_fraction(hi)
        if not lo < hi:
            raise ParameterError(f"empty interval ({lo}, {hi})")
        feasible = []
        for den in range(1, max_den + 1):
            nmin = math.floor(lo * den) + 1
            nmax = math.ceil(hi * den) - 1
            if nmin <= nmax:
                feasible.append((den, nmin, nmax))
        if not feasible:
            raise ParameterError(
                f"no rational with denominator ≤ {max_den} in ({lo}, {hi})"
            )
        den, nmin, nmax = feasible[self.rand_below(len(feasible))]
        return Fraction(nmin + self.rand_below(nmax - nmin + 1), den)


# ---------------------------------------------------------------------------
# stratified samplers, one proposal shape per closed-form branch


def _low_q(rng: Lcg) -> Fraction:
    return Fraction(2) if rng.rand_below(4) == 0 else rng.fraction_between(1, 2)


def _propose(rng: Lcg, label: str) -> ProblemSpec:
    F = Fraction
    if label == "T1.1":
        q = rng.fraction_between(1, 8)
        p = tuple(q + rng.fraction_between(0, 6) for _ in range(2))
        r = tuple(rng.fraction_between(F(1, 4), 4) for _ in range(2))
    elif label == "T1.2a":
        q = _low_q(rng)
        p = tuple(rng.fraction_between(1, q) for _ in range(2))
        r = tuple(rng.fraction_between(F(1, 2), 5) for _ in range(2))
    elif label == "T1.2b":
        q = _low_q(rng)
        p = (q + rng.fraction_between(0, 5), rng.fraction_between(1, q))
        r = tuple(rng.fraction_between(F(1, 2), 5) for _ in range(2))
    elif label == "T1.3a":
        q = rng.fraction_between(2, 8)
        p = tuple(rng.fraction_between(1, 2) for _ in range(2))
        r = tuple(rng.fraction_between(1, 6) for _ in range(2))
    elif label == "T1.3b":
        q = rng.fraction_between(2, 8)
        p = (rng.fraction_between(2, q), rng.fraction_between(2, q + 4))
        r = tuple(rng.fraction_between(F(1, 2), 5) for _ in range(2))
    elif label == "T1.3c":
        q = rng.fraction_between(2, 8)
        p = (rng.fraction_between(2, q + 4), rng.fraction_between(1, 2))
        r = tuple(rng.fraction_between(1, 6) for _ in range(2))
    elif label == SCREEN_LABEL:
        q = rng.fraction_between(1, 6)
        p = tuple(rng.fraction_between(1, q) for _ in range(2))
        r = tuple(rng.fraction_between(F(1, 8), 1) for _ in range(2))
    elif label in ("T4.1", "T4.2a", "T4.2b"):
        if label == "T4.1":
            q = _low_q(rng)
            p_lo = rng.fraction_between(1, q)
        elif label == "T4.2a":
            q = rng.fraction_between(2, 8)
            p_lo = rng.fraction_between(2, q)
        else:
            q = rng.fraction_between(2, 8)
            p_lo = rng.fraction_between(1, 2)
        p_hi = q + rng.fraction_between(F(1, 4), 6)
        gap = _ONE / p_lo - _ONE / p_hi
        r_lo = gap * rng.fraction_between(F(1, 2), 1)
        r_hi = rng.fraction_between(F(1, 2), 4)
        p, r = (p_lo, p_hi), (r_lo, r_hi)
    else:
        raise ParameterError(f"unknown branch label {label!r}")
    if rng.coin():
        p, r = p[::-1], r[::-1]
    return ProblemSpec(r=r, p=p, q=q)


def sample_branch(rng: Lcg, label: str, max_tries: int = 50_000) -> ProblemSpec:
    """Rejection-sample a spec whose classified case equals `label`."""
    if label not in BRANCH_LABELS and label != SCREEN_LABEL:
        raise ParameterError(f"unknown branch label {label!r}")
    for _ in range(max_tries):
        try:
            spec = _propose(rng, label)
        except (ParameterError, ZeroDivisionError):
            continue
        if closedform.classify_regime(spec).case == label:
            return spec
    raise RuntimeError(f"failed to sample a {label} instance in {max_tries} tries")


def sample_intersection(rng: Lcg, max_balls: int = 3) -> IntersectionSpec:
    """A random valid ball intersection with an admissible budget n.

    N is a power of two in [8, 1024], q ∈ (1, 8], radii in [1/64, 64], ball
    exponents rational in (1, 10) or inf.  The budget is drawn uniformly
    from the admissible window, resampling q when the q > 2 window
    N^(2/q) ≤ n ≤ N/2 is empty.
    """
    for _ in range(10_000):
        q = rng.fraction_between(1, 8, max_den=8)
        N = 2 ** (3 + rng.rand_below(8))
        if q <= 2:
            n_lo = 0
        else:
            a, b = q.numerator, q.denominator
            n_lo = max(1, int(N ** (2 * b / a)) - 2)
            while n_lo**a < N ** (2 * b):
                n_lo += 1
        n_hi = N // 2
        if n_lo > n_hi:
            continue
        n = n_lo + rng.rand_below(n_hi - n_lo + 1)
        count = 2 + rng.rand_below(max_balls - 1)
        balls = []
        for _ in range(count):
            p = INF if rng.rand_below(6) == 0 else rng.fraction_between(1, 10, max_den=8)
            nu = rng.fraction_between(Fraction(1, 64), 64, max_den=16)
            balls.append(BallSpec(p, nu))
        return IntersectionSpec(N=N, n=n, q=q, balls=tuple(balls))
    raise RuntimeError("could not sample an admissible intersection")


# ---------------------------------------------------------------------------
# independent objective evaluation


def _low_style_pieces(spec: ProblemSpec):
    """The low-q shape of the objective, regardless of the actual q."""
    x_q = _ONE / spec.q
    x = [_ONE / pj for pj in spec.p]
    pieces = []
    for j in range(spec.d):
        if x[j] <= x_q:
            pieces.append(({j: spec.r[j]}, Fraction(0), Fraction(0)))
        if x[j] >= x_q:
            pieces.append(({j: spec.r[j]}, Fraction(0), x_q - x[j]))
    for i in range(spec.d):
        for j in range(spec.d):
            if x[i] < x_q < x[j]:
                lam = (x_q - x[i]) / (x[j] - x[i])
                pieces.append(
                    ({i: (1 - lam) * spec.r[i], j: lam * spec.r[j]}, Fraction(0), Fraction(0))
                )
    return pieces


def _high_pieces(spec: ProblemSpec):
    """The q > 2 objective in (ᾱ, s): coefficient maps, s slope, constant."""
    x_q = _ONE / spec.q
    theta_q = _HALF - x_q
    x = [_ONE / pj for pj in spec.p]
    pieces = []
    for j in range(spec.d):
        if x[j] <= x_q:
            pieces.append(({j: spec.r[j]}, Fraction(0), Fraction(0)))
        if x_q <= x[j] <= _HALF:
            cj = (x[j] - x_q) / theta_q
            pieces.append(({j: spec.r[j]}, -cj / 2, cj / 2))
        if x[j] >= _HALF:
            pieces.append(({j: spec.r[j]}, -x[j], _HALF))
    for i in range(spec.d):
        for j in range(spec.d):
            if x[i] < x_q < x[j]:
                lam = (x_q - x[i]) / (x[j] - x[i])
                pieces.append(
                    ({i: (1 - lam) * spec.r[i], j: lam * spec.r[j]}, Fraction(0), Fraction(0))
                )
            if x[i] < _HALF < x[j]:
                mu = (_HALF - x[i]) / (x[j] - x[i])
                pieces.append(
                    ({i: (1 - mu) * spec.r[i], j: mu * spec.r[j]}, -_HALF, _HALF)
                )
    return pieces


def _piece_value(piece, alpha, s) -> Fraction:
    coeffs, s_coeff, const = piece
    v = const + (s_coeff * s if s is not None else 0)
    for j, c in coeffs.items():
        v += c * alpha[j]
    return v


def h_low_style_value(spec: ProblemSpec, alpha) -> Fraction:
    """Low-q-shaped objective at ᾱ (exact; no simplex constraint checked)."""
    alpha = tuple(as_fraction(a) for a in alpha)
    return max(_piece_value(pc, alpha, None) for pc in _low_style_pieces(spec))


def h_high_value(spec: ProblemSpec, alpha, s) -> Fraction:
    """q > 2 objective at (ᾱ, s) (exact; algebraic, domain not enforced)."""
    if spec.q <= 2:
        raise ParameterError("the (ᾱ, s) objective is defined for q > 2")
    alpha = tuple(as_fraction(a) for a in alpha)
    s = as_fraction(s)
    return max(_piece_value(pc, alpha, s) for pc in _high_pieces(spec))


def _objective_value(spec: ProblemSpec, alpha, s) -> Fraction:
    if spec.q <= 2:
        return h_low_style_value(spec, alpha)
    return h_high_value(spec, alpha, s)


# ---------------------------------------------------------------------------
# brute-force lattice bracket


@dataclass(frozen=True)
class GridBracket:
    """Two-sided bracket: best − gap ≤ true minimum ≤ best, exactly."""

    grid: int
    best_value: Fraction
    gap: Fraction
    argmin: tuple[Fraction, ...]
    argmin_s: Fraction | None
    points: int

    @property
    def lower(self) -> Fraction:
        return self.best_value - self.gap

    def contains(self, value) -> bool:
        value = as_fraction(value)
        return self.lower <= value <= self.best_value


def default_grid(d: int) -> int:
    env = os.environ.get(GRID_ENV)
    if env is not None:
        try:
            g = int(env)
        except ValueError:
            raise ParameterError(f"{GRID_ENV} must be an integer, got {env!r}") from None
        if g < 1:
            raise ParameterError(f"{GRID_ENV} must be ≥ 1, got {g}")
        return g
    return 64 * d


def _compositions(total: int, d: int) -> np.ndarray:
    if d == 1:
        return np.array([[total]], dtype=np.int64)
    if d == 2:
        a = np.arange(total + 1, dtype=np.int64)
        return np.column_stack([a, total - a])
    blocks = []
    for first in range(total + 1):
        rest = _compositions(total - first, d - 1)
        col = np.full((rest.shape[0], 1), first, dtype=np.int64)
        blocks.append(np.hstack([col, rest]))
    return np.vstack(blocks)


def grid_minimize(spec: ProblemSpec, grid: int | None = None) -> GridBracket:
    """Exact bracket of the objective minimum from a denominator-G lattice.

    q ≤ 2: points ᾱ = ā/G with ā ∈ Z≥0^d, Σā = G.  q > 2: additionally
    s = k/G for G ≤ k ≤ ⌊qG/2⌋ with Σā = k.  Lattice values are computed
    in float64 to shortlist candidates near the minimum; candidates are
    then re-evaluated exactly, so `best_value` is the exact lattice
    minimum and the Lipschitz gap argument gives the lower bound.
    """
    d = spec.d
    G = default_grid(d) if grid is None else int(grid)
    if G < 1:
        raise ParameterError(f"grid must be ≥ 1, got {G}")
    q = spec.q
    pieces = _low_style_pieces(spec) if q <= 2 else _high_pieces(spec)
    has_s = q > 2
    if has_s:
        k_max = (G * q.numerator) // (2 * q.denominator)
        counts = sum(math.comb(k + d - 1, d - 1) for k in range(G, k_max + 1))
    else:
        counts = math.comb(G + d - 1, d - 1)
    if counts > _GUARD:
        raise RangeError(
            f"lattice of {counts} points exceeds the {_GUARD} guard; "
            f"lower the grid (argument or {GRID_ENV})"
        )
    if has_s:
        block_rows = [_compositions(k, d) for k in range(G, k_max + 1)]
        a_int = np.vstack(block_rows)
        s_int = np.concatenate(
            [np.full(len(b), k, dtype=np.int64) for b, k in zip(block_rows, range(G, k_max + 1))]
        )
    else:
        a_int = _compositions(G, d)
        s_int = None
    coeff = np.zeros((len(pieces), d))
    s_coeff = np.zeros(len(pieces))
    const = np.zeros(len(pieces))
    for idx, (cmap, sc, c0) in enumerate(pieces):
        for j, cj in cmap.items():
            coeff[idx, j] = float(cj)
        s_coeff[idx] = float(sc)
        const[idx] = float(c0)
    vals = (a_int / G) @ coeff.T + const[None, :]
    if s_int is not None:
        vals += (s_int / G)[:, None] * s_coeff[None, :]
    obj = vals.max(axis=1)
    threshold = obj.min() + 1e-9
    candidates = np.nonzero(obj <= threshold)[0]
    best_val: Fraction | None = None
    best_alpha: tuple[Fraction, ...] | None = None
    best_s: Fraction | None = None
    for row in candidates:
        alpha = tuple(Fraction(int(a), G) for a in a_int[row])
        s = Fraction(int(s_int[row]), G) if s_int is not None else None
        v = max(_piece_value(pc, alpha, s) for pc in pieces)
        key = (alpha, s if s is not None else Fraction(0))
        if (
            best_val is None
            or v < best_val
            or (v == best_val and key < (best_alpha, best_s if best_s is not None else Fraction(0)))
        ):
            best_val, best_alpha, best_s = v, alpha, s
    lip = sum(
        max(abs(cmap.get(j, Fraction(0))) for cmap, _, _ in pieces) for j in range(d)
    )
    if has_s:
        lip += max(abs(sc) for _, sc, _ in pieces)
    return GridBracket(
        grid=G,
        best_value=best_val,
        gap=Fraction(lip, G),
        argmin=best_alpha,
        argmin_s=best_s,
        points=int(len(a_int)),
    )


def refine_bracket(spec: ProblemSpec, bracket: GridBracket) -> GridBracket:
    """Re-run at four times the lattice density; the gap shrinks by 4."""
    return grid_minimize(spec, bracket.grid * 4)


# ---------------------------------------------------------------------------
# structural identities


@dataclass(frozen=True)
class IdentityReport:
    checked: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def check_scaling_identities(spec: ProblemSpec, points: int = 100, seed: int = 0) -> IdentityReport:
    """Exact spot checks of the identities linking block rates to exponents.

    Per sampled point, for q > 2:
      s-face:        h̃(ᾱ, q/2) = (q/2) · h_low(2ᾱ/q) at Σᾱ = q/2,
      log-rescaling: ψ(t̄, t; L) = L · h̃(t̄/L, t/L),
      homogeneity:   φ(c t̄) = c · φ(t̄).
    For q ≤ 2 only the homogeneity and the normalisation φ(t̄) = t·h(t̄/t)
    apply.  All comparisons are exact; any nonzero residual is a failure.
    """
    rng = Lcg(seed)
    failures: list[str] = []
    checked = 0
    d = spec.d
    low = _low_style_pieces(spec)
    high = _high_pieces(spec) if spec.q > 2 else None
    half_q = spec.q / 2
    for _ in range(points):
        t_vec = tuple(rng.fraction_between(0, 4) for _ in range(d))
        t = sum(t_vec)
        c = rng.fraction_between(0, 8)
        checked += 1
        if phi_value(spec, tuple(c * v for v in t_vec)) != c * phi_value(spec, t_vec):
            failures.append(f"homogeneity at t={t_vec} c={c}")
        checked += 1
        unit = tuple(v / t for v in t_vec)
        if phi_value(spec, t_vec) != t * max(_piece_value(pc, unit, None) for pc in low):
            failures.append(f"phi normalisation at t={t_vec}")
        if high is not None:
            u = tuple(rng.fraction_between(0, 4) for _ in range(d))
            scale = half_q / sum(u)
            alpha = tuple(scale * v for v in u)  # Σ = q/2 exactly
            lhs = max(_piece_value(pc, alpha, half_q) for pc in high)
            shrunk = tuple(a / half_q for a in alpha)
            rhs = half_q * max(_piece_value(pc, shrunk, None) for pc in low)
            checked += 1
            if lhs != rhs:
                failures.append(f"s-face at alpha={alpha}")
            s_var = rng.fraction_between(0, 6)
            log_n = rng.fraction_between(0, 10)
            lhs = psi_value(spec, t_vec, s_var, log_n)
            rescaled = tuple(v / log_n for v in t_vec)
            rhs = log_n * max(_piece_value(pc, rescaled, s_var / log_n) for pc in high)
            checked += 1
            if lhs != rhs:
                failures.append(f"log-rescaling at t={t_vec} s={s_var} L={log_n}")
    return IdentityReport(checked=checked, failures=tuple(failures))


# ---------------------------------------------------------------------------
# stratified cross-validation


@dataclass(frozen=True)
class ValidationRecord:
    branch: str
    spec: ProblemSpec
    case: str
    theta: Fraction | None
    theta_lp: Fraction
    grid_lower: Fraction | None
    grid_best: Fraction | None
    identity_points: int
    ok: bool
    detail: str


def _fmt_tuple(values) -> str:
    return ",".join(str(v) for v in values)


def _json_number(x: Fraction | None):
    if x is None:
        return None
    return {"ratio": f"{x.numerator}/{x.denominator}", "decimal": decimal_str(x)}


@dataclass(frozen=True)
class ValidationReport:
    seed: int
    samples: int
    grid: int | None
    records: tuple[ValidationRecord, ...]

    @property
    def ok(self) -> bool:
        return all(rec.ok for rec in self.records)

    def branch_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for rec in self.records:
            counts[rec.branch] = counts.get(rec.branch, 0) + 1
        return counts

    def to_text(self) -> str:
        lines = [
            "widthcalc verification report",
            f"seed={self.seed} samples={self.samples} grid={self.grid if self.grid else '-'}",
        ]
        counts = self.branch_counts()
        lines.append(
            "branches: "
            + (" ".join(f"{k}={counts[k]}" for k in sorted(counts)) if counts else "none")
        )
        for rec in self.records:
            spec = rec.spec
            parts = [
                rec.branch,
                f"r={_fmt_tuple(spec.r)}",
                f"p={_fmt_tuple(spec.p)}",
                f"q={spec.q}",
                f"case={rec.case}",
                f"theta={rec.theta}",
                f"lp={rec.theta_lp}",
            ]
            if rec.grid_lower is not None:
                parts.append(f"grid=[{rec.grid_lower},{rec.grid_best}]")
            if rec.identity_points:
                parts.append(f"id={rec.identity_points}")
            parts.append("ok" if rec.ok else f"FAIL({rec.detail})")
            lines.append(" ".join(parts))
        failed = sum(1 for rec in self.records if not rec.ok)
        lines.append(f"result: {'PASS' if failed == 0 else 'FAIL'} ({failed} failures)")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "kind": "verification-report",
            "seed": self.seed,
            "samples": self.samples,
            "grid": self.grid,
            "ok": self.ok,
            "branches": self.branch_counts(),
            "records": [
                {
                    "branch": rec.branch,
                    "r": [str(v) for v in rec.spec.r],
                    "p": [str(v) for v in rec.spec.p],
                    "q": str(rec.spec.q),
                    "case": rec.case,
                    "theta": _json_number(rec.theta),
                    "theta_lp": _json_number(rec.theta_lp),
                    "grid_lower": _json_number(rec.grid_lower),
                    "grid_best": _json_number(rec.grid_best),
                    "identity_points": rec.identity_points,
                    "ok": rec.ok,
                    "detail": rec.detail,
                }
                for rec in self.records
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"


def cross_validate(
    samples: int,
    seed: int,
    grid: int | None = None,
    identity_points: int = 0,
) -> ValidationReport:
    """Sample specs round-robin over the nine branches and compare routes.

    Each record checks (1) the classified case matches the stratum,
    (2) the closed-form exponent equals the LP minimum exactly, (3) when
    `grid` is set, the bracket contains the exponent, and (4) when
    `identity_points` is set, the scaling identities hold exactly.
    """
    rng = Lcg(seed)
    records: list[ValidationRecord] = []
    for i in range(samples):
        label = BRANCH_LABELS[i % len(BRANCH_LABELS)]
        spec = sample_branch(rng, label)
        report = closedform.classify_regime(spec)
        result = minimize(build_objective(spec))
        problems: list[str] = []
        if report.case != label:
            problems.append(f"case={report.case}!={label}")
        if report.exponent is None:
            problems.append("no closed-form exponent")
        elif report.exponent != result.theta:
            problems.append(f"closed={report.exponent}!=lp={result.theta}")
        g_lower = g_best = None
        if grid is not None:
            bracket = grid_minimize(spec, grid)
            g_lower, g_best = bracket.lower, bracket.best_value
            if not bracket.contains(result.theta):
                problems.append(f"lp={result.theta} outside [{g_lower},{g_best}]")
        id_count = 0
        if identity_points:
            id_report = check_scaling_identities(
                spec, points=identity_points, seed=rng.rand_below(1 << 32)
            )
            id_count = id_report.checked
            if not id_report.ok:
                problems.append("; ".join(id_report.failures))
        records.append(
            ValidationRecord(
                branch=label,
                spec=spec,
                case=report.case,
                theta=report.exponent,
                theta_lp=result.theta,
                grid_lower=g_lower,
                grid_best=g_best,
                identity_points=id_count,
                ok=not problems,
                detail="; ".join(problems),
            )
        )
    return ValidationReport(seed=seed, samples=samples, grid=grid, records=tuple(records))
