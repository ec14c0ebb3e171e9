"""
Decay exponents from first principles
=====================================

A problem spec bundles smoothness orders r̄, integrability exponents p̄,
and a target exponent q.  The decay exponent θ is the minimum of a small
piecewise-affine objective; the regime classifier names the closed form
that produces the same number.
"""

from fractions import Fraction as F

from widthcalc import ProblemSpec, build_objective, classify_regime, minimize, render_provenance

# A balanced pair: both coordinates equally smooth, both exponents above q.
spec = ProblemSpec(r=(F(1), F(1)), p=(F(3), F(3)), q=F(2))

report = classify_regime(spec)
print("case:     ", report.case)
print("compact:  ", report.compact, "(margin", spec.compact_margin(), ")")
print("exponent: ", report.exponent)

# The same number falls out of the LP route, together with the witness
# point and the pieces active there.
result = minimize(build_objective(spec))
print("lp theta: ", result.theta)
print("argmin:   ", tuple(str(a) for a in result.argmin_alpha))
print("active:   ", [render_provenance(t) for t in result.active_pieces])
print("unique:   ", result.unique)

# Lowering one integrability exponent below q moves the minimum to an
# interpolated piece and drags the exponent down with it.  At p2 = 3/2
# the competing exponents tie exactly; the classifier refuses to pick a
# winner and reports the spec as uncovered instead.
print()
print("q = 2, p2 sliding below q:")
for p2 in (F(3), F(2), F(3, 2), F(6, 5)):
    spec = ProblemSpec(r=(F(1), F(1)), p=(F(3), p2), q=F(2))
    report = classify_regime(spec)
    theta = report.exponent
    theta_text = str(theta) if theta is not None else "-"
    print(f"  p2 = {str(p2):4s}  case = {report.case:9s}  theta = {theta_text}")

# Rough classes stop being compactly embedded: the exponent follows the
# margin down, and at zero the compact verdict flips.
print()
for r1 in (F(1), F(1, 4), F(1, 5), F(1, 8)):
    spec = ProblemSpec(r=(r1, F(1)), p=(F(3, 2), F(3, 2)), q=F(2))
    report = classify_regime(spec)
    print(f"  r1 = {str(r1):4s}  margin = {str(spec.compact_margin()):6s}"
          f"  compact = {report.compact}")
