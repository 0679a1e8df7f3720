"""Lyapunov-Schmidt reduction on the pitchfork, odd versus even multiplicity.

For L(lambda) = [lambda] with the cubic nonlinearity -u^3 the trivial branch
loses stability at 0: the multiplicity is 1 (odd), the reduced determinant
changes sign across the center, and nontrivial branches u = +-sqrt(lambda)
exist on the positive side.  Squaring the path ([lambda^2]) makes the
multiplicity even and the sign change disappears.
"""

import numpy as np

from algmult import (
    MatPoly,
    MonomialTerm,
    NonlinearProblem,
    Path,
    Poly,
    QQ,
    branch_probe,
    complement_derivative_check,
    nonlinear_eigenvalue_verdict,
    reduced_operator,
    solve_complement,
)

lam = Poly.variable(QQ)

pitchfork = NonlinearProblem(
    Path(MatPoly(QQ, [[lam]])), 0, [[MonomialTerm(-1.0, 0, (3,))]]
)
even = NonlinearProblem(
    Path(MatPoly(QQ, [[lam**2]])), 0, [[MonomialTerm(-1.0, 0, (3,))]]
)
coupled = NonlinearProblem(
    Path(MatPoly.diag(QQ, [lam, Poly.one(QQ)])),
    0,
    [[MonomialTerm(-1.0, 0, (3, 0))], [MonomialTerm(1.0, 0, (2, 0))]],
)

print("coupled problem: diag(lambda, 1) with N = (-u1^3, u1^2)")
y = solve_complement(coupled, 0.0, np.array([0.5]))
print(f"  complement solve at x = 0.5: y = {y[0]:+.6f} (closed form -x^2 = -0.25)")
print(f"  derivative check deviation: {complement_derivative_check(coupled, 0.1):.2e}")
exact, numeric, disc = reduced_operator(coupled, 0.02)
print(f"  reduced operator at 0.02: schur route {exact[0,0]:+.6f}, "
      f"finite differences {numeric[0,0]:+.6f}, discrepancy {disc:.2e}")

for name, problem in (("pitchfork", pitchfork), ("even touch", even)):
    verdict = nonlinear_eigenvalue_verdict(problem)
    print(f"\n{name}: chi = {verdict.chi} ({'odd' if verdict.odd else 'even'})")
    print(f"  reduced determinant at -delta, +delta: "
          f"{verdict.det_minus:+.4f}, {verdict.det_plus:+.4f}")
    print(f"  sign change: {verdict.sign_change}")
    print(f"  verdict: {verdict.verdict}")

print("\nbranch probe on the pitchfork:")
for sol in branch_probe(pitchfork):
    print(f"  lambda = {sol.lam:+.3f}: u = {sol.u[0]:+.9f} "
          f"(residual {sol.residual:.1e})")
print("no solutions on the negative side, two branches at +-sqrt(0.01) = +-0.1")
