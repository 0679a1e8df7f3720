"""Schur operator, local determinant, factorization, inverse identity."""

import random
from fractions import Fraction

import pytest

from algmult import (
    DegeneratePathError,
    MatPoly,
    Path,
    Poly,
    QQ,
    RatMat,
    RationalFunction,
    RegularityError,
    chi_via_det,
    chi_via_schur,
    factorization_witness,
    invertibility_via_localdet,
    local_determinant,
    projection_pair,
    random_planted_instance,
    schur_inverse_identity,
    schur_operator,
)

from helpers import matpoly_cofactor_det, random_matpoly

LAM = Poly.variable(QQ)


def running_path() -> Path:
    return Path(MatPoly(QQ, [[1, LAM], [LAM, 0]]))


def canonical(path, lam0=0):
    return projection_pair(path, lam0)


class TestSchurOperator:
    def test_running_example(self):
        path = running_path()
        s = schur_operator(path, canonical(path))
        assert s.size == 1
        assert s.matrix[0, 0] == RationalFunction(Poly(QQ, [0, 0, -1]))

    def test_invertible_center_is_empty(self):
        path = Path(MatPoly(QQ, [[1 + LAM]]))
        s = schur_operator(path, canonical(path))
        assert s.size == 0
        assert s.matrix.det() == RationalFunction.one(QQ)

    def test_full_kernel_is_bottom_block(self):
        path = Path(MatPoly.diag(QQ, [LAM, LAM]))
        s = schur_operator(path, canonical(path))
        assert s.matrix.to_matpoly() == MatPoly.diag(QQ, [LAM, LAM])

    def test_invalid_pair_rejected(self):
        path = running_path()
        other = Path(MatPoly.diag(QQ, [LAM, LAM]))
        pair = canonical(other)
        with pytest.raises(ValueError):
            schur_operator(path, pair)

    def test_regular_at_center(self):
        rng = random.Random(1)
        for _ in range(10):
            inst = random_planted_instance(rng, max_size=4, max_degree=3)
            for seed in (None, 1, 2):
                pair = projection_pair(inst.path, inst.center, seed=seed)
                s = schur_operator(inst.path, pair)
                assert s.matrix.is_regular_at(inst.center)
                assert s.size == pair.kernel_dim


class TestLocalDeterminant:
    def test_running_example(self):
        path = running_path()
        ld = local_determinant(path, canonical(path))
        assert ld.value == RationalFunction(Poly(QQ, [0, 0, -1]))

    def test_invertible_center(self):
        path = Path(MatPoly(QQ, [[1 + LAM, 0], [0, 1]]))
        ld = local_determinant(path, canonical(path))
        assert ld.value.evaluate(0) != 0

    def test_block_elimination_identity_on_random_blocks(self):
        # det(M) = det(A) * det(M/A) for random 4x4 with invertible top block,
        # checked against the cofactor determinant oracle
        rng = random.Random(2)
        done = 0
        while done < 10:
            m = random_matpoly(rng, QQ, 4, 1)
            a = m.submatrix(range(2), range(2))
            if a.det().is_zero:
                continue
            done += 1
            b = m.submatrix(range(2), range(2, 4)).to_ratmat()
            c = m.submatrix(range(2, 4), range(2)).to_ratmat()
            d = m.submatrix(range(2, 4), range(2, 4)).to_ratmat()
            complement = d - c * a.inverse() * b
            lhs = RationalFunction(matpoly_cofactor_det(m))
            rhs = complement.det() * RationalFunction(matpoly_cofactor_det(a))
            assert lhs == rhs

    def test_order_matches_full_determinant(self):
        rng = random.Random(3)
        for _ in range(10):
            inst = random_planted_instance(rng, max_size=4, max_degree=3)
            pair = projection_pair(inst.path, inst.center)
            ld = local_determinant(inst.path, pair)
            from algmult.scalars import _ord_int

            order = _ord_int(ld.value.num, inst.center) - _ord_int(
                ld.value.den, inst.center
            )
            assert order == inst.chi


class TestInvertibilityViaLocalDet:
    def test_regular_point_true(self):
        path = running_path()
        assert invertibility_via_localdet(path, canonical(path), 1)

    def test_center_false(self):
        path = running_path()
        assert not invertibility_via_localdet(path, canonical(path), 0)

    def test_eigenvalue_elsewhere_false(self):
        path = Path(MatPoly.diag(QQ, [Poly(QQ, [-3, 1]), Poly.one(QQ)]))
        pair = projection_pair(path, 3)
        assert not invertibility_via_localdet(path, pair, 3)

    def test_outside_validity_region_rejected(self):
        # top-left block is 1 - lambda^2: the local determinant breaks down
        # at lambda = 1, away from the center 0
        path = Path(MatPoly(QQ, [[Poly(QQ, [1, 0, -1]), LAM], [LAM, 0]]))
        pair = projection_pair(path, 0)
        with pytest.raises(RegularityError):
            invertibility_via_localdet(path, pair, 1)

    def test_agrees_with_direct_determinant_on_samples(self):
        rng = random.Random(4)
        for _ in range(10):
            inst = random_planted_instance(rng, max_size=3, max_degree=2)
            pair = projection_pair(inst.path, inst.center)
            s = schur_operator(inst.path, pair)
            for probe in (-3, -1, 2, 5):
                lam = Fraction(probe)
                if not s.matrix.is_regular_at(lam):
                    continue
                got = invertibility_via_localdet(inst.path, pair, lam)
                assert got == bool(inst.path.eval(lam).det())


class TestFactorizationWitness:
    def test_running_example_blocks(self):
        path = running_path()
        w = factorization_witness(path, canonical(path))
        assert w.left.to_matpoly() == MatPoly(QQ, [[1, 0], [LAM, 1]])
        assert w.right.to_matpoly() == MatPoly(QQ, [[1, LAM], [0, 1]])
        assert w.middle.to_matpoly() == MatPoly.diag(QQ, [Poly.one(QQ), Poly(QQ, [0, 0, -1])])

    def test_invertible_center_trivial_factors(self):
        path = Path(MatPoly(QQ, [[1 + LAM, 0], [0, 1]]))
        w = factorization_witness(path, canonical(path))
        assert w.left == RatMat.identity(QQ, 2)
        assert w.right == RatMat.identity(QQ, 2)

    def test_unimodular_factors_on_random_instances(self):
        rng = random.Random(5)
        one = RationalFunction.one(QQ)
        for _ in range(10):
            inst = random_planted_instance(rng, max_size=4, max_degree=3)
            for seed in (None, 2):
                pair = projection_pair(inst.path, inst.center, seed=seed)
                w = factorization_witness(inst.path, pair)
                assert w.left.det() == one
                assert w.right.det() == one
                assert w.left * w.middle * w.right == w.adapted.to_ratmat()


class TestInverseIdentity:
    def test_running_example(self):
        path = running_path()
        assert schur_inverse_identity(path, canonical(path))

    def test_full_kernel(self):
        path = Path(MatPoly.diag(QQ, [LAM, LAM]))
        assert schur_inverse_identity(path, canonical(path))

    def test_random_instances_with_seeded_pairs(self):
        rng = random.Random(6)
        done = 0
        while done < 25:
            inst = random_planted_instance(rng, max_size=4, max_degree=3)
            pair = projection_pair(inst.path, inst.center)
            if pair.kernel_dim < 1:
                continue
            done += 1
            assert schur_inverse_identity(inst.path, pair)
            for seed in range(1, 6):
                seeded = projection_pair(inst.path, inst.center, seed=seed)
                assert schur_inverse_identity(inst.path, seeded)

    def test_degenerate_rejected(self):
        path = Path(MatPoly(QQ, [[LAM, LAM], [LAM, LAM]]))
        pair = canonical(path)
        with pytest.raises(DegeneratePathError):
            schur_inverse_identity(path, pair)

    def test_trivial_kernel_rejected(self):
        path = Path(MatPoly(QQ, [[1 + LAM]]))
        with pytest.raises(ValueError):
            schur_inverse_identity(path, canonical(path))


class TestChiViaSchur:
    def test_running_example(self):
        path = running_path()
        assert chi_via_schur(path, canonical(path)) == 2

    def test_invertible_center(self):
        path = Path(MatPoly(QQ, [[1 + LAM]]))
        assert chi_via_schur(path, canonical(path)) == 0

    def test_diagonal(self):
        path = Path(MatPoly.diag(QQ, [LAM, LAM**2]))
        assert chi_via_schur(path, canonical(path)) == 3

    def test_matches_det_route_for_every_pair(self):
        rng = random.Random(7)
        for _ in range(20):
            inst = random_planted_instance(rng, max_size=4, max_degree=3)
            chi = chi_via_det(inst.path, inst.center)
            for seed in (None, 1, 2, 3, 4, 5):
                pair = projection_pair(inst.path, inst.center, seed=seed)
                assert chi_via_schur(inst.path, pair) == chi

    def test_degenerate_rejected(self):
        path = Path(MatPoly(QQ, [[LAM, LAM], [LAM, LAM]]))
        with pytest.raises(DegeneratePathError):
            chi_via_schur(path, canonical(path))
