"""Schur operator, block factorization, and the local determinant.

Splitting a path by a projection pair adapted to kernel and range leaves an
invertible top-left block.  Eliminating it produces the Schur operator on
the kernel; the path factors exactly through unit-triangular witnesses, and
det(L11) * det(Schur) acts as a determinant near the center: it vanishes
exactly where the path is singular.
"""

from algmult import (
    MatPoly,
    Path,
    Poly,
    QQ,
    block_split,
    factorization_witness,
    invertibility_via_localdet,
    local_determinant,
    projection_pair,
    schur_inverse_identity,
    schur_operator,
)

lam = Poly.variable(QQ)
path = Path(MatPoly(QQ, [[1, lam], [lam, 0]]))
pair = projection_pair(path, 0)

print("projections:")
print("  P (onto the kernel):", pair.p.rows)
print("  Q (onto the range): ", pair.q.rows)

l11, l12, l21, l22 = block_split(path, pair)
print("\nblocks in the adapted bases:")
print("  L11 =", l11.to_string_rows())
print("  L12 =", l12.to_string_rows())
print("  L21 =", l21.to_string_rows())
print("  L22 =", l22.to_string_rows())

s = schur_operator(path, pair)
print("\nSchur operator:", s.matrix.to_string_rows())
print("center validity excludes the points:", list(s.bad_points) or "none")

witness = factorization_witness(path, pair)
print("\nunit-triangular factorization (left * middle * right):")
print("  left:  ", witness.left.to_string_rows())
print("  middle:", witness.middle.to_string_rows())
print("  right: ", witness.right.to_string_rows())

ld = local_determinant(path, pair)
print("\nlocal determinant:", ld.value.to_string())
for probe in (-2, -1, 1, 3):
    verdict = invertibility_via_localdet(path, pair, probe)
    print(f"  invertible at lambda = {probe}: {verdict}")

print("\ninverse identity (Schur^-1 equals the kernel corner of L^-1):",
      schur_inverse_identity(path, pair))
