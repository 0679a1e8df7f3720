"""The multiplicity of a pencil as a geometric intersection count.

For a pencil lambda*I - T the scalar line pierces the determinantal variety
at each eigenvalue.  The order at which the line escapes the tangent
varieties of the determinant map, and the length of the local quotient ring
after eliminating the line's equations, both reproduce the classical
multiplicity.
"""

import random

from algmult import (
    ConstMat,
    QQ,
    det_derivative,
    det_differential_sum,
    intersection_index_pencil,
    pencil_routes_agree,
    random_jordan_pencil,
    tangent_order,
    MatPoly,
)

t = ConstMat(QQ, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])  # nilpotent 3-block
print("pencil base T:")
for row in t.rows:
    print("  ", [str(e) for e in row])

report = tangent_order(t, 0)
print(f"\ntangent order at 0: {report.order}")
for item in report.per_order:
    inside = "inside" if not item.value else "escapes at"
    print(f"  order {item.order}: value {item.value} ({inside} the tangent "
          f"variety), methods: {item.method}")

res = intersection_index_pencil(t, 0)
print(f"\nintersection index: {res.index}")
print(f"reduced univariate generator: {res.generator.to_string('x1')}")
print(f"monomial basis size of the local quotient: {res.monomial_basis_size}")

base = MatPoly.lambda_identity_minus(t).eval(0)
print("\ntwo differentiation routes at the eigenvalue:")
for r in (1, 2, 3):
    print(f"  r = {r}: combinatorial sum {det_differential_sum(base, r)}, "
          f"derivative {det_derivative(t, 0, r)}")

rng = random.Random(7)
agreements = sum(
    pencil_routes_agree(*random_jordan_pencil(rng, QQ, max_size=4)[:2])
    for _ in range(25)
)
print(f"\nrandom planted Jordan pencils, three-way agreement: {agreements}/25")
