import random

import pytest

from amalg.errors import CheckFailure, InputError
from amalg.groups import (FiniteGroup, GroupAmalgam, GroupHom, Transversal,
                          build_group)


def sl2z_amalgam():
    # Z/4 * Z/6 amalgamated over Z/2 via 1 -> 2 and 1 -> 3
    base = FiniteGroup.cyclic(2)
    left = FiniteGroup.cyclic(4)
    right = FiniteGroup.cyclic(6)
    f1 = GroupHom(base, left, [0, 2])
    f2 = GroupHom(base, right, [0, 3])
    return GroupAmalgam(base, left, right, f1, f2, name="sl2z")


def dinfty_amalgam():
    base = FiniteGroup.trivial()
    left = FiniteGroup.cyclic(2)
    right = FiniteGroup.cyclic(2)
    f1 = GroupHom(base, left, [0])
    f2 = GroupHom(base, right, [0])
    return GroupAmalgam(base, left, right, f1, f2, name="dinfty")


class TestBuildGroup:
    def test_cyclic(self):
        G = build_group(("cyclic", 4))
        assert G.order == 4
        assert G.identity == 0
        assert G.inv(1) == 3

    def test_klein_four(self):
        G = build_group(("product", ("cyclic", 2), ("cyclic", 2)))
        assert G.order == 4
        assert all(G.mul(x, x) == G.identity for x in range(4))

    def test_non_associative_rejected(self):
        # a Latin square with identity that is not a group
        table = [[0, 1, 2, 3, 4],
                 [1, 0, 3, 4, 2],
                 [2, 4, 0, 1, 3],
                 [3, 2, 4, 0, 1],
                 [4, 3, 1, 2, 0]]
        with pytest.raises(InputError, match="witness"):
            FiniteGroup(table)

    def test_missing_inverse_rejected(self):
        with pytest.raises(InputError):
            FiniteGroup([[0, 1], [1, 1]])


class TestTransversal:
    def test_z4_over_z2(self):
        G = FiniteGroup.cyclic(4)
        t = Transversal(G, [0, 2])
        assert t.representatives == [0, 1]

    def test_whole_group(self):
        G = FiniteGroup.cyclic(4)
        t = Transversal(G, [0, 1, 2, 3])
        assert t.representatives == [0]

    def test_z6_over_z3_subgroup(self):
        G = FiniteGroup.cyclic(6)
        t = Transversal(G, [0, 3])
        assert t.representatives == [0, 1, 2]

    def test_not_closed(self):
        G = FiniteGroup.cyclic(6)
        with pytest.raises(InputError, match="closed"):
            Transversal(G, [0, 1])

    def test_decompose(self):
        G = FiniteGroup.cyclic(4)
        t = Transversal(G, [0, 2])
        assert t.decompose(3) == (1, 2)


class TestReduce:
    def test_product_landing_in_subgroup(self):
        A = sl2z_amalgam()
        state = A.reduce([(1, 1), (1, 1)])  # 1 + 1 = 2 in Z/4 = f1(1)
        assert state == ((), 1)

    def test_already_reduced(self):
        A = sl2z_amalgam()
        assert A.reduce([(1, 1)]) == (((1, 1),), 0)

    def test_dinfty_collapse(self):
        A = dinfty_amalgam()
        word = [(1, 1), (2, 1), (1, 1), (1, 1), (2, 1)]
        # a b a * a b collapses to a
        assert A.reduce(word) == (((1, 1),), 0)

    def test_identity_letters_vanish(self):
        A = sl2z_amalgam()
        assert A.reduce([(1, 0), (2, 0), (1, 0)]) == A.identity_word()


class TestMultiply:
    def test_cross_factor(self):
        A = sl2z_amalgam()
        u = A.reduce([(1, 1)])
        v = A.reduce([(2, 1)])
        assert A.multiply(u, v) == A.reduce([(1, 1), (2, 1)])

    def test_unit_law(self):
        A = sl2z_amalgam()
        rng = random.Random(2)
        for _ in range(50):
            word = [(rng.choice((1, 2)), rng.randrange(4))
                    for _ in range(rng.randint(0, 5))]
            word = [(j, x % A.factors[j].order) for j, x in word]
            u = A.reduce(word)
            assert A.multiply(u, A.identity_word()) == u
            assert A.multiply(A.identity_word(), u) == u

    def test_dinfty_multiplication(self):
        A = dinfty_amalgam()
        u = A.reduce([(1, 1), (2, 1), (1, 1)])
        v = A.reduce([(1, 1), (2, 1)])
        assert A.multiply(u, v) == (((1, 1),), 0)

    def test_associativity_random(self):
        for A in (sl2z_amalgam(), dinfty_amalgam()):
            rng = random.Random(13)
            states = list(A.filtration_states(3)[-1])
            states.sort()
            for _ in range(2000):
                u, v, w = (states[rng.randrange(len(states))]
                           for _ in range(3))
                assert A.multiply(A.multiply(u, v), w) == \
                    A.multiply(u, A.multiply(v, w))

    def test_inverse(self):
        A = sl2z_amalgam()
        for state in sorted(A.filtration_states(3)[-1]):
            assert A.multiply(state, A.inverse(state)) == A.identity_word()
            assert A.multiply(A.inverse(state), state) == A.identity_word()


class TestReductionStrategies:
    def test_confluence_random(self):
        for A in (sl2z_amalgam(), dinfty_amalgam()):
            rng = random.Random(4)
            for _ in range(2000):
                n = rng.randint(0, 8)
                word = []
                for _ in range(n):
                    j = rng.choice((1, 2))
                    word.append((j, rng.randrange(A.factors[j].order)))
                assert A.reduce(word) == A.reduce_right_to_left(word)

    def test_idempotence(self):
        A = sl2z_amalgam()
        rng = random.Random(6)
        for _ in range(500):
            n = rng.randint(0, 6)
            word = []
            for _ in range(n):
                j = rng.choice((1, 2))
                word.append((j, rng.randrange(A.factors[j].order)))
            state = A.reduce(word)
            # rereading the normal word as a raw word is a fixed point
            raw = [(j, r) for j, r in state[0]]
            raw.append((1, A.maps[1](state[1])))
            assert A.reduce(raw) == state


class TestFiltration:
    def test_sl2z_sizes(self):
        A = sl2z_amalgam()
        assert A.filtration_sizes(3) == [2, 8, 16, 28]

    def test_dinfty_sizes(self):
        A = dinfty_amalgam()
        assert A.filtration_sizes(10) == [2 * n + 1 for n in range(11)]

    def test_degenerate(self):
        base = FiniteGroup.cyclic(3)
        f = GroupHom(base, base, [0, 1, 2])
        g = GroupHom(base, base, [0, 1, 2])
        A = GroupAmalgam(base, base, base, f, g)
        assert A.filtration_sizes(4) == [3, 3, 3, 3, 3]

    def test_sizes_match_enumeration(self):
        A = sl2z_amalgam()
        states = A.filtration_states(3)
        assert [len(s) for s in states] == A.filtration_sizes(3)


class TestBijectionCheck:
    def test_sl2z(self):
        A = sl2z_amalgam()
        sizes = A.normal_form_bijection_check(6, confluence_samples=500)
        assert sizes[:4] == [2, 8, 16, 28]

    def test_dinfty(self):
        A = dinfty_amalgam()
        sizes = A.normal_form_bijection_check(10, confluence_samples=500)
        assert sizes == [2 * n + 1 for n in range(11)]

    def test_non_injective_rejected_before_enumeration(self):
        base = FiniteGroup.cyclic(2)
        left = FiniteGroup.cyclic(4)
        right = FiniteGroup.cyclic(6)
        f1 = GroupHom(base, left, [0, 0])  # not injective
        f2 = GroupHom(base, right, [0, 3])
        with pytest.raises(InputError, match="not injective"):
            GroupAmalgam(base, left, right, f1, f2)


class TestOrbits:
    def test_shape_12(self):
        A = sl2z_amalgam()
        assert A.orbit_quotient_size((1, 2)) == 12

    def test_shape_0(self):
        A = sl2z_amalgam()
        assert A.orbit_quotient_size((0,)) == 2

    def test_shape_1(self):
        A = sl2z_amalgam()
        assert A.orbit_quotient_size((1,)) == 4

    def test_matches_coset_formula(self):
        A = sl2z_amalgam()
        # |B_(1,2,1)| = 4*6*4 / 2^2 = 24
        assert A.orbit_quotient_size((1, 2, 1)) == 24
