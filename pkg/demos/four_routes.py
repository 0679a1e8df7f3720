"""Compute the multiplicity of a matrix-polynomial path by four routes.

The running example L(lambda) = [[1, lambda], [lambda, 0]] is singular only
at lambda = 0.  Its determinant is -lambda^2, so the multiplicity there is 2,
and every other route has to reproduce that number exactly.
"""

import random

from algmult import (
    MatPoly,
    Path,
    Poly,
    QQ,
    algebraic_order,
    chi_via_det,
    chi_via_intersection,
    chi_via_schur,
    chi_via_smith,
    generalized_spectrum,
    projection_pair,
    random_planted_instance,
)
from algmult.cli import build_certificate, certificate_to_json

lam = Poly.variable(QQ)
path = Path(MatPoly(QQ, [[1, lam], [lam, 0]]), label="running example")

print("path:", path.matrix.to_string_rows())
print("det:", path.det.to_string())

spectrum = generalized_spectrum(path)
print("\nfield eigenvalues and multiplicities:")
for value, mult in spectrum.eigenvalues:
    print(f"  lambda0 = {value}: chi = {mult}")

pair = projection_pair(path, 0)
print("\nroute 1, determinant order:   ", chi_via_det(path, 0))
print("route 2, Schur operator order:", chi_via_schur(path, pair))
print("route 3, partial multiplicities:", chi_via_smith(path, pair))
print("route 4, intersection index:  ", chi_via_intersection(path, pair).index)
print("inverse blow-up exponent:     ", algebraic_order(path, 0))

# The same cross-check on a random instance with planted ground truth.
rng = random.Random(2024)
inst = random_planted_instance(rng, max_size=4, max_degree=3)
print(f"\nplanted instance: size {inst.path.size}, center {inst.center}, "
      f"planted chi = {inst.chi}")
cert = build_certificate(inst.path, inst.center)
print("certificate:")
import json

print(json.dumps(certificate_to_json(inst.field, cert), indent=2))
assert cert.agree
