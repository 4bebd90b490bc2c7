import random
from fractions import Fraction

import pytest

from amalg import GF, QQ
from amalg.errors import DegreeOverflow, InputError
from amalg.linalg import (GradedVectorSpace, ModuleData,
                           tensor_over_algebra, trivial_module)
from amalg.ncpoly import NcPoly, parse_ncpoly, poly_degree, word_name
from amalg.presented import (AlgebraMorphism, PresentedAlgebra,
                             check_morphism, naive_quotient_dims,
                             truncated_basis)


def exterior_xy(field=QQ):
    return PresentedAlgebra.build(
        field, [("x", 3), ("y", 3)], ["x^2", "y^2", "x*y + y*x"])


def truncated_poly_f2():
    return PresentedAlgebra.build(GF(2), [("a", 1)], ["a^4"])


def pushout_presentation_q():
    # generators: the positive-degree bases of Ext(x,y) and Ext(t)(x)Ext(s),
    # relations: base identification x + y = s plus all product contractions
    gens = [("x", 3), ("y", 3), ("xy", 6), ("t", 1), ("s", 3), ("ts", 4)]
    rels = [
        "x + y - s",
        "x^2", "y^2", "x*y - xy", "y*x + xy",
        "x*xy", "xy*x", "y*xy", "xy*y", "xy^2",
        "t^2", "s^2", "t*s - ts", "s*t + ts",
        "t*ts", "ts*t", "s*ts", "ts*s", "ts^2",
    ]
    return PresentedAlgebra.build(QQ, gens, rels)


class TestParse:
    def test_two_terms_homogeneous(self):
        A = exterior_xy()
        p = parse_ncpoly("x*y - y*x", A.generators, QQ)
        assert len(p.terms) == 2
        assert poly_degree(p, A.generators) == 6

    def test_power(self):
        A = PresentedAlgebra.build(QQ, [("a", 1)], [])
        p = parse_ncpoly("a^4", A.generators, QQ)
        assert p.terms == {(0, 0, 0, 0): Fraction(1)}

    def test_difference_of_images(self):
        gens = [("d", 3), ("x", 3), ("y", 3)]
        A = PresentedAlgebra.build(QQ, gens, [])
        p = parse_ncpoly("d - x - y", A.generators, QQ)
        assert poly_degree(p, A.generators) == 3
        assert len(p.terms) == 3

    def test_unknown_generator(self):
        A = exterior_xy()
        with pytest.raises(InputError, match="unknown generator"):
            parse_ncpoly("x*z", A.generators, QQ)

    def test_malformed(self):
        A = exterior_xy()
        with pytest.raises(InputError):
            parse_ncpoly("x*y %", A.generators, QQ)

    def test_round_trip_names(self):
        A = exterior_xy()
        p = parse_ncpoly("x*y", A.generators, QQ)
        w = next(iter(p.terms))
        assert word_name(w, A.generators) == "x*y"

    def test_coefficients(self):
        A = exterior_xy()
        p = parse_ncpoly("1/2*x - 3*y", A.generators, QQ)
        assert p.terms[(0,)] == Fraction(1, 2)
        assert p.terms[(1,)] == Fraction(-3)


class TestTruncatedBasis:
    def test_exterior_two_classes(self):
        T = truncated_basis(exterior_xy(), 6)
        assert T.dims() == [1, 0, 0, 2, 0, 0, 1]

    def test_truncated_polynomial_f2(self):
        T = truncated_basis(truncated_poly_f2(), 4)
        assert T.dims() == [1, 1, 1, 1, 0]

    def test_pushout_presentation_q(self):
        T = truncated_basis(pushout_presentation_q(), 6)
        assert T.dims() == [1, 1, 0, 2, 3, 1, 1]

    def test_matches_raw_word_span(self):
        # the production basis agrees with the literal span of all u*r*v
        cases = [
            (exterior_xy(), 6),
            (truncated_poly_f2(), 4),
            (pushout_presentation_q(), 6),
            (PresentedAlgebra.build(GF(2), [("a", 1), ("b", 1)],
                                    ["a*b + b*a", "a^4", "b^4"]), 6),
        ]
        for A, N in cases:
            assert truncated_basis(A, N).dims() == naive_quotient_dims(A, N)

    def test_basis_words_deglex_minimal(self):
        T = truncated_basis(exterior_xy(), 6)
        assert T.basis_names(3) == ["x", "y"]
        assert T.basis_names(6) == ["x*y"]

    def test_reduce_idempotent(self):
        T = truncated_basis(pushout_presentation_q(), 6)
        for d in range(7):
            for i, w in enumerate(T.basis_words(d)):
                v = T.reduce_word(w)
                assert v[i] == 1 and sum(1 for c in v if c != 0) == 1

    def test_monotone_under_relations(self):
        A = exterior_xy()
        B = PresentedAlgebra.build(QQ, [("x", 3), ("y", 3)],
                                   ["x^2", "y^2", "x*y + y*x", "x*y"])
        ta, tb = truncated_basis(A, 6), truncated_basis(B, 6)
        for d in range(7):
            assert tb.dim(d) <= ta.dim(d)

    def test_inert_relation_flagged(self):
        A = PresentedAlgebra.build(QQ, [("x", 3), ("y", 3)],
                                   ["x^2", "y^2", "x*y + y*x"])
        T = truncated_basis(A, 4)
        assert T.inert_relations == [0, 1, 2]
        assert T.dims() == [1, 0, 0, 2, 0]


class TestMultiply:
    def setup_method(self):
        self.T = truncated_basis(exterior_xy(), 6)
        self.A = self.T.algebra

    def test_xy_is_basis_element(self):
        d, v = self.T.multiply_mod_ideal(self.A.parse("x"), self.A.parse("y"))
        assert d == 6 and v == [Fraction(1)]

    def test_square_is_zero(self):
        d, v = self.T.multiply_mod_ideal(self.A.parse("x"), self.A.parse("x"))
        assert v == [Fraction(0)]

    def test_koszul_sign_from_relations(self):
        d, v = self.T.multiply_mod_ideal(self.A.parse("x + y"),
                                         self.A.parse("x"))
        assert d == 6 and v == [Fraction(-1)]

    def test_degree_overflow(self):
        with pytest.raises(DegreeOverflow):
            self.T.multiply_mod_ideal(self.A.parse("x*y"), self.A.parse("y"))

    def test_associativity_random(self):
        T = truncated_basis(pushout_presentation_q(), 6)
        rng = random.Random(3)
        triples = 0
        while triples < 1000:
            d1, d2, d3 = (rng.randint(0, 3) for _ in range(3))
            if d1 + d2 + d3 > 6:
                continue
            if not (T.dim(d1) and T.dim(d2) and T.dim(d3)):
                continue
            i1 = rng.randrange(T.dim(d1))
            i2 = rng.randrange(T.dim(d2))
            i3 = rng.randrange(T.dim(d3))
            u = T.multiply_basis(d1, i1, d2, i2)
            left = T.mult(d1 + d2, u, d3,
                          [QQ.one if k == i3 else QQ.zero
                           for k in range(T.dim(d3))])
            v = T.multiply_basis(d2, i2, d3, i3)
            right = T.mult(d1, [QQ.one if k == i1 else QQ.zero
                                for k in range(T.dim(d1))], d2 + d3, v)
            assert left == right
            triples += 1

    def test_unit_neutral(self):
        T = self.T
        for d in range(7):
            for i in range(T.dim(d)):
                e = [QQ.one if k == i else QQ.zero for k in range(T.dim(d))]
                assert T.mult(0, T.unit(), d, e) == e
                assert T.mult(d, e, 0, T.unit()) == e


class TestAugmentationIdeal:
    def test_exterior_one_class(self):
        T = truncated_basis(
            PresentedAlgebra.build(QQ, [("x", 3)], ["x^2"]), 4)
        assert T.augmentation_ideal_basis() == {3: [(0,)]}

    def test_trivial_algebra(self):
        T = truncated_basis(PresentedAlgebra.build(QQ, [], []), 4)
        assert T.augmentation_ideal_basis() == {}

    def test_truncated_polynomial(self):
        T = truncated_basis(truncated_poly_f2(), 4)
        basis = T.augmentation_ideal_basis()
        assert sorted(basis) == [1, 2, 3]
        assert [len(basis[d]) for d in (1, 2, 3)] == [1, 1, 1]


class TestMorphisms:
    def test_diagonal_ok(self):
        B0 = truncated_basis(
            PresentedAlgebra.build(QQ, [("d", 3)], ["d^2"]), 6)
        B1 = truncated_basis(exterior_xy(), 6)
        f = AlgebraMorphism(B0, B1, {"d": "x + y"})
        assert check_morphism(f).ok

    def test_degree_mismatch(self):
        B0 = truncated_basis(
            PresentedAlgebra.build(QQ, [("d", 3)], ["d^2"]), 6)
        B2 = truncated_basis(
            PresentedAlgebra.build(QQ, [("t", 1)], ["t^2"]), 6)
        with pytest.raises(InputError, match="degree mismatch"):
            AlgebraMorphism(B0, B2, {"d": "t"})

    def test_second_factor_inclusion(self):
        B0 = truncated_basis(
            PresentedAlgebra.build(QQ, [("d", 3)], ["d^2"]), 6)
        B2 = truncated_basis(
            PresentedAlgebra.build(
                QQ, [("t", 1), ("s", 3)],
                ["t^2", "s^2", "t*s + s*t"]), 6)
        f = AlgebraMorphism(B0, B2, {"d": "s"})
        assert check_morphism(f).ok

    def test_violation_reported(self):
        B0 = truncated_basis(
            PresentedAlgebra.build(QQ, [("d", 3)], ["d^2"]), 6)
        B1 = truncated_basis(
            PresentedAlgebra.build(QQ, [("x", 3)], []), 6)
        f = AlgebraMorphism(B0, B1, {"d": "x"})  # x^2 is not zero here
        report = check_morphism(f)
        assert not report.ok
        assert report.failures == [(0, 6)]

    def test_functoriality_of_composites(self):
        B0 = truncated_basis(
            PresentedAlgebra.build(QQ, [("d", 3)], ["d^2"]), 6)
        B1 = truncated_basis(exterior_xy(), 6)
        diag = AlgebraMorphism(B0, B1, {"d": "x + y"})
        flip = AlgebraMorphism(B1, B1, {"x": "y", "y": "x"})
        assert check_morphism(flip).ok
        comp = flip.compose(diag)
        assert check_morphism(comp).ok
        _, coords = comp.apply(B0.algebra.parse("d"))
        assert coords == B1.reduce_poly(B1.algebra.parse("x + y"))[1]


class TestTensorOverAlgebra:
    def test_trivial_everything(self):
        k = truncated_basis(PresentedAlgebra.build(QQ, [], []), 3)
        mod = ModuleData(
            GradedVectorSpace(QQ, {0: 1}, 3),
            lambda vd, vi, ad, ai: [QQ.zero] * (1 if vd + ad == 0 else 0),
            "right")
        out = tensor_over_algebra(mod, k, trivial_module(QQ, 3, "left"), 3)
        assert out.dim_vector() == [1, 0, 0, 0]

    def test_exterior_over_itself(self):
        A = truncated_basis(PresentedAlgebra.build(QQ, [("x", 3)], ["x^2"]), 3)

        def action(vd, vi, ad, ai):
            e = [QQ.one if k == vi else QQ.zero for k in range(A.dim(vd))]
            a = [QQ.one if k == ai else QQ.zero for k in range(A.dim(ad))]
            return A.mult(vd, e, ad, a)

        V = ModuleData(GradedVectorSpace(QQ, {0: 1, 3: 1}, 3),
                       action, "right")
        out = tensor_over_algebra(V, A, trivial_module(QQ, 3, "left"), 3)
        assert out.dim_vector() == [1, 0, 0, 0]

    def test_exterior_xy_over_diagonal(self):
        # Ext(x,y) as a right module over Ext(x+y): quotient has dims
        # 1, 0, 0, 1 in degrees 0..3 and nothing in 4..6
        B0 = truncated_basis(
            PresentedAlgebra.build(QQ, [("d", 3)], ["d^2"]), 6)
        B1 = truncated_basis(exterior_xy(), 6)
        f = AlgebraMorphism(B0, B1, {"d": "x + y"})

        def action(vd, vi, ad, ai):
            e = [QQ.one if k == vi else QQ.zero for k in range(B1.dim(vd))]
            img = f.word_coords(B0.basis_words(ad)[ai])
            return B1.mult(vd, e, ad, img)

        V = ModuleData(GradedVectorSpace(QQ, dict(
            (d, B1.dim(d)) for d in range(7)), 6), action, "right")
        out = tensor_over_algebra(V, B0, trivial_module(QQ, 6, "left"), 6)
        assert out.dim_vector() == [1, 0, 0, 1, 0, 0, 0]
