import random
from fractions import Fraction

import pytest

from amalg import GF, QQ
from amalg.errors import InputError
from amalg.linalg import (Echelon, GradedAbelianGroup, GradedMap,
                          GradedVectorSpace, ZGradedMap, echelon_rewrites,
                          invert_columns, kernel_cokernel, matvec,
                          normalize_torsion, row_reduce, rref,
                          smith_normal_form, z_in_rowspan, z_kernel_basis,
                          z_map_cokernel, z_map_kernel, z_quotient,
                          z_rowspan_basis)


def frac(rows):
    return [[Fraction(x) for x in row] for row in rows]


class TestRowReduce:
    def test_identity(self):
        rank, kernel, image = row_reduce(frac([[1, 0], [0, 1]]), 2, QQ)
        assert rank == 2
        assert kernel == []

    def test_equal_rows_rational(self):
        rank, kernel, image = row_reduce(frac([[1, 1], [1, 1]]), 2, QQ)
        assert rank == 1
        assert len(kernel) == 1
        # kernel vectors satisfy M v = 0 exactly
        for v in kernel:
            assert matvec(frac([[1, 1], [1, 1]]), v, QQ) == [0, 0]

    def test_equal_rows_mod2(self):
        F2 = GF(2)
        rank, kernel, image = row_reduce([[1, 1], [1, 1]], 2, F2)
        assert rank == 1
        assert kernel == [[1, 1]]

    def test_rank_nullity_random(self):
        rng = random.Random(7)
        for field in (QQ, GF(2), GF(5)):
            for _ in range(25):
                m, n = rng.randint(0, 5), rng.randint(1, 5)
                rows = [[field.of(rng.randint(-3, 3)) for _ in range(n)]
                        for _ in range(m)]
                rank, kernel, image = row_reduce(rows, n, field)
                assert rank + len(kernel) == n
                assert len(image) == rank
                for v in kernel:
                    assert all(x == 0 for x in matvec(rows, v, field))

    def test_rref_pivots_deterministic(self):
        rows = frac([[0, 2, 4], [0, 1, 2], [3, 0, 0]])
        rank, pivots, red = rref(rows, 3, QQ)
        assert pivots == [0, 1]
        assert red[0][0] == 1 and red[1][1] == 1


class TestEchelon:
    @pytest.mark.parametrize("field", [QQ, GF(2), GF(3)])
    def test_incremental_rank(self, field):
        sp = Echelon(field, 3)
        assert sp.add([field.of(1), field.of(1), field.zero])
        assert not sp.add([field.of(1), field.of(1), field.zero])
        assert sp.add([field.zero, field.of(1), field.of(1)])
        assert sp.rank == 2
        assert sp.contains([field.of(1), field.of(2), field.of(1)])

    def test_residual_gf2(self):
        sp = Echelon(GF(2), 3)
        sp.add([1, 1, 0])
        assert sp.residual([1, 0, 0]) == [0, 1, 0]


class TestEchelonRewrites:
    def test_rewrite_semantics(self):
        # x0 + x1 = 0, x1 + x2 = 0 over GF(2): pivots x0, x1
        pivots, rw = echelon_rewrites([{0: 1, 1: 1}, {1: 1, 2: 1}], 3, GF(2))
        assert pivots == [0, 1]
        assert rw[0] == [(2, 1)]
        assert rw[1] == [(2, 1)]

    def test_rewrite_rational(self):
        pivots, rw = echelon_rewrites(
            [{0: Fraction(2), 2: Fraction(1)}], 3, QQ)
        assert pivots == [0]
        assert rw[0] == [(2, Fraction(-1, 2))]


class TestInvert:
    def test_round_trip(self):
        cols = frac([[2, 1], [1, 1]])  # columns (2,1) and (1,1)
        inv = invert_columns(cols, QQ)
        # coordinates of (1, 0): solve 2a + b = 1, a + b = 0
        assert matvec(inv, [Fraction(1), Fraction(0)], QQ) == [1, -1]


class TestSmith:
    def test_diag_2_3(self):
        snf = smith_normal_form([[2, 0], [0, 3]])
        assert snf.factors == [1, 6]

    def test_zero_matrix(self):
        snf = smith_normal_form([[0, 0], [0, 0]])
        assert snf.factors == []
        assert snf.rank == 0

    def test_hand_reduction(self):
        # [[2,4],[6,8]]: gcd of entries 2, |det| = 8, so factors are (2, 4)
        snf = smith_normal_form([[2, 4], [6, 8]])
        assert snf.factors == [2, 4]

    def _check(self, M):
        m, n = len(M), len(M[0])
        snf = smith_normal_form(M)
        # U M V is the diagonal of invariant factors
        UM = [[sum(snf.U[i][k] * M[k][j] for k in range(m))
               for j in range(n)] for i in range(m)]
        D = [[sum(UM[i][k] * snf.V[k][j] for k in range(n))
              for j in range(n)] for i in range(m)]
        for i in range(m):
            for j in range(n):
                want = snf.factors[i] if i == j and i < snf.rank else 0
                assert D[i][j] == want
        for a, b in zip(snf.factors, snf.factors[1:]):
            assert b % a == 0
        # transforms are unimodular: tracked inverses multiply to identity
        for A, B, k in ((snf.U, snf.Uinv, m), (snf.V, snf.Vinv, n)):
            I = [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(k)]
                 for i in range(k)]
            assert I == [[1 if i == j else 0 for j in range(k)]
                         for i in range(k)]

    def test_random_transforms(self):
        rng = random.Random(11)
        for _ in range(40):
            m, n = rng.randint(1, 4), rng.randint(1, 4)
            M = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
            self._check(M)

    def test_det_invariance(self):
        M = [[4, 2, 0], [2, 8, 2], [0, 2, 12]]
        snf = smith_normal_form(M)
        det = (4 * (8 * 12 - 4) - 2 * (2 * 12 - 0) + 0)
        prod = 1
        for f in snf.factors:
            prod *= f
        assert prod == abs(det)


class TestZGroups:
    def test_quotient(self):
        assert z_quotient(2, [[2, 0], [0, 3]]) == (0, (6,))
        assert z_quotient(3, [[2, 4, 6]]) == (2, (2,))
        assert z_quotient(2, []) == (2, ())

    def test_kernel_basis(self):
        rows = [[1, 1], [1, 1]]
        basis = z_kernel_basis(rows, 2)
        assert len(basis) == 1
        v = basis[0]
        assert v[0] * rows[0][0] + v[1] * rows[1][0] == 0

    def test_rowspan_membership(self):
        rows = [[2, 0], [0, 2]]
        assert z_in_rowspan(rows, [4, 2])
        assert not z_in_rowspan(rows, [1, 0])
        basis = z_rowspan_basis([[2, 0], [4, 0], [0, 3]], 2)
        assert len(basis) == 2

    def test_map_kernel_torsion(self):
        # (Z/2)^2 -> Z/2 sending both generators to the generator
        free, torsion, gens = z_map_kernel(
            2, [[2, 0], [0, 2]], 1, [[2]], [[1], [1]])
        assert (free, torsion) == (0, (2,))
        # multiplication by 2 on Z: kernel 0, cokernel Z/2
        free, torsion, _ = z_map_kernel(1, [], 1, [], [[2]])
        assert (free, torsion) == (0, ())
        assert z_map_cokernel(1, [], [[2]]) == (0, (2,))

    def test_normalize_torsion(self):
        assert normalize_torsion([2, 4, 3]) == (2, 12)
        assert normalize_torsion([2, 2]) == (2, 2)
        assert normalize_torsion([1, 1]) == ()
        assert normalize_torsion([6, 4]) == (2, 12)


class TestGradedCarriers:
    def test_truncation_is_explicit(self):
        V = GradedVectorSpace(QQ, {0: 1, 3: 2}, 5)
        assert V.dim(4) == 0
        with pytest.raises(InputError):
            V.dim(6)

    def test_kernel_cokernel_field(self):
        V = GradedVectorSpace(QQ, {0: 1}, 0)
        zero = GradedMap(V, V, {0: [[Fraction(0)]]})
        ker, cok = kernel_cokernel(zero)
        assert ker.dim(0) == 1 and cok.dim(0) == 1

    def test_kernel_cokernel_integer(self):
        f = ZGradedMap({1: (1, [], 1, [], [[2]])}, 2)
        ker, cok = kernel_cokernel(f)
        assert ker.piece(1) == (0, ())
        assert cok.piece(1) == (0, (2,))

    def test_graded_abelian_group_validation(self):
        with pytest.raises(InputError):
            GradedAbelianGroup({0: (1, (3, 2))}, 2)
        g = GradedAbelianGroup({2: (2, (2, 2, 2)), 3: (0, (2, 2)),
                                4: (1, ())}, 6)
        assert g.describe(2) == "Z^2 + (Z/2)^3"
        assert g.describe(3) == "Z/2 + Z/2"
        assert g.describe(4) == "Z"
        assert g.describe(5) == "0"
