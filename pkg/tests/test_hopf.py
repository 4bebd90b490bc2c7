import pytest

from amalg import GF, QQ
from amalg.hopf import HopfData, hopf_check
from amalg.presented import PresentedAlgebra, truncated_basis


def trunc_poly():
    return truncated_basis(
        PresentedAlgebra.build(GF(2), [("a", 1)], ["a^4"]), 4)


class TestHopfCheck:
    def test_primitive_truncated_polynomial(self):
        # psi(a)^4 = a^4 (x) 1 + 1 (x) a^4 = 0 by mod-2 binomials
        report = hopf_check(trunc_poly(), HopfData.primitive(
            trunc_poly().algebra))
        assert report.ok, report.failures

    def test_primitive_exterior_rational(self):
        T = truncated_basis(
            PresentedAlgebra.build(QQ, [("x", 3)], ["x^2"]), 6)
        report = hopf_check(T, HopfData.primitive(T.algebra))
        assert report.ok, report.failures

    def test_non_counital_coproduct_reported(self):
        T = trunc_poly()
        bad = HopfData({"a": [("a", "1")]}, {"a": "a"})
        report = hopf_check(T, bad)
        assert not report.ok
        assert any(axiom == "counit" for axiom, _, _ in report.failures)

    def test_two_exterior_classes(self):
        T = truncated_basis(
            PresentedAlgebra.build(
                QQ, [("x", 3), ("y", 3)], ["x^2", "y^2", "x*y + y*x"]), 6)
        report = hopf_check(T, HopfData.primitive(T.algebra))
        assert report.ok, report.failures

    def test_mixed_degrees_with_signs(self):
        T = truncated_basis(
            PresentedAlgebra.build(
                QQ, [("t", 1), ("s", 3)], ["t^2", "s^2", "t*s + s*t"]), 6)
        report = hopf_check(T, HopfData.primitive(T.algebra))
        assert report.ok, report.failures

    def test_wrong_antipode_reported(self):
        T = truncated_basis(
            PresentedAlgebra.build(QQ, [("x", 3)], ["x^2"]), 6)
        bad = HopfData({"x": [("x", "1"), ("1", "x")]}, {"x": "x"})
        report = hopf_check(T, bad)
        assert any(axiom == "antipode" for axiom, _, _ in report.failures)
