"""Partial multiplicities and the Jordan linearization with exact witnesses.

The Smith normal form over the polynomial ring diagonalizes a path through
unimodular transforms.  Vanishing orders of the invariant factors at a
center are the partial multiplicities there; one Jordan block per partial
multiplicity gives a constant matrix whose shifted pencil is unimodularly
equivalent to the local diagonal, padded with the identity.
"""

from algmult import (
    MatPoly,
    Path,
    Poly,
    QQ,
    build_linearization,
    local_partial_multiplicities,
    local_smith_of_schur,
    projection_pair,
    smith_form,
)

lam = Poly.variable(QQ)

a = MatPoly(QQ, [[1, lam], [lam, 0]])
sf = smith_form(a)
print("invariant factors of the running example:",
      [f.to_string() for f in sf.factors])
print("left witness: ", sf.left.to_string_rows())
print("right witness:", sf.right.to_string_rows())

path = Path(MatPoly.diag(QQ, [lam**2, lam, Poly.one(QQ)]))
lsf = local_partial_multiplicities(path.matrix, 0)
print("\npartial multiplicities of diag(lambda^2, lambda, 1) at 0:",
      lsf.kappas)

pair = projection_pair(path, 0)
schur_lsf = local_smith_of_schur(path, pair)
print("partial multiplicities of its Schur operator:", schur_lsf.kappas)

lin = build_linearization(schur_lsf)
print(f"\nlinearization size M = {lin.size}")
print("block-Jordan matrix:")
for row in lin.lin.rows:
    print("  ", [str(e) for e in row])
pencil = MatPoly.lambda_identity_minus(lin.lin)
print("char poly of the linearization:", pencil.det().to_string())
print("equivalence witnesses p1, p2 are unimodular:",
      lin.p1.det().degree == 0 and lin.p2.det().degree == 0)
