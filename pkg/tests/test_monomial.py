"""Ideal arithmetic against brute-force oracles and known staircases."""

import random
from fractions import Fraction

import pytest

from filtmult import polytope
from filtmult.monomial import (
    MonomialIdeal,
    ideal,
    maximal_ideal,
    minimalize,
    unit_ideal,
)
from filtmult.multiplicity import limit_estimate

from conftest import brute_colength, naive_minimalize, random_primary_ideal


class TestConstruction:
    def test_minimalizes_and_sorts(self):
        I = ideal(2, [(2, 0), (1, 1), (2, 1), (3, 3), (0, 2)])
        assert I.gens == ((0, 2), (1, 1), (2, 0))

    def test_unit_ideal(self):
        u = unit_ideal(3)
        assert u.gens == ((0, 0, 0),)
        assert u.is_unit()

    def test_maximal_ideal(self):
        assert maximal_ideal(2).gens == ((0, 1), (1, 0))

    def test_rejects_bad_dim(self):
        with pytest.raises(ValueError):
            ideal(0, [(1,)])

    def test_rejects_mismatched_exponent(self):
        with pytest.raises(ValueError):
            ideal(2, [(1, 0), (1,)])

    def test_rejects_negative_exponent(self):
        with pytest.raises(ValueError):
            ideal(1, [(-1,)])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            ideal(2, [])


class TestMinimalize:
    def test_antichain_output(self):
        gens = minimalize([(1, 2), (2, 1), (1, 1)], 2)
        assert gens == ((1, 1),)

    @pytest.mark.parametrize("dim", [1, 2, 3, 4])
    def test_matches_naive_filter(self, dim):
        rng = random.Random(400 + dim)
        for _ in range(200):
            pts = [
                tuple(rng.randint(0, 6) for _ in range(dim))
                for _ in range(rng.randint(1, 25))
            ]
            assert minimalize(pts, dim) == naive_minimalize(pts, dim)

    def test_dimension_three_dense(self):
        # the sweep keeps a (y, z) front; hammer it with collisions
        rng = random.Random(77)
        for _ in range(60):
            pts = [
                (rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 3))
                for _ in range(40)
            ]
            assert minimalize(pts, 3) == naive_minimalize(pts, 3)


class TestArithmetic:
    def test_product_example(self):
        m = maximal_ideal(2)
        x2y = ideal(2, [(2, 0), (0, 1)])
        assert (m * x2y).gens == ((0, 2), (1, 1), (3, 0))

    def test_sum_minimalizes(self):
        I = ideal(2, [(3, 0)])
        J = ideal(2, [(1, 1)])
        assert (I + J).gens == ((1, 1), (3, 0))

    def test_power_matches_repeated_product(self):
        I = ideal(2, [(2, 0), (1, 1), (0, 3)])
        prod = unit_ideal(2)
        for k in range(5):
            assert I.power(k) == prod
            prod = prod * I

    def test_power_negative_raises(self):
        with pytest.raises(ValueError):
            maximal_ideal(2).power(-1)

    def test_product_commutes(self, rng):
        for _ in range(30):
            I = random_primary_ideal(rng, 2, 5)
            J = random_primary_ideal(rng, 2, 5)
            assert I * J == J * I

    def test_product_associates(self, rng):
        for _ in range(15):
            I = random_primary_ideal(rng, 3, 3)
            J = random_primary_ideal(rng, 3, 3)
            K = random_primary_ideal(rng, 3, 3)
            assert (I * J) * K == I * (J * K)

    def test_membership_multiplies(self, rng):
        # x^a in I and x^b in J force x^(a+b) into IJ
        for _ in range(30):
            I = random_primary_ideal(rng, 2, 5)
            J = random_primary_ideal(rng, 2, 5)
            a = I.gens[rng.randrange(len(I.gens))]
            b = J.gens[rng.randrange(len(J.gens))]
            assert (I * J).contains(tuple(u + v for u, v in zip(a, b)))

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            maximal_ideal(2) * maximal_ideal(3)


class TestMembership:
    def test_contains(self):
        I = ideal(2, [(2, 0), (0, 1)])
        assert I.contains((2, 0))
        assert I.contains((5, 3))
        assert not I.contains((1, 0))

    def test_contains_ideal(self):
        m = maximal_ideal(2)
        assert m.contains_ideal(m.power(2))
        assert not m.power(2).contains_ideal(m)

    def test_contains_wrong_length(self):
        with pytest.raises(ValueError):
            maximal_ideal(2).contains((1, 2, 3))


class TestPrimary:
    def test_maximal_is_primary(self):
        assert maximal_ideal(3).is_primary()

    def test_principal_in_plane_is_not(self):
        assert not ideal(2, [(1, 0)]).is_primary()

    def test_pure_powers_required_per_axis(self):
        assert ideal(2, [(2, 0), (1, 1), (0, 3)]).is_primary()
        assert not ideal(2, [(2, 0), (1, 1)]).is_primary()


class TestColength:
    def test_known_plane_staircases(self):
        m = maximal_ideal(2)
        # l(R/m^n) = n(n+1)/2
        for n in range(1, 9):
            assert m.power(n).colength() == n * (n + 1) // 2
        assert ideal(2, [(2, 0), (0, 1)]).colength() == 2
        assert ideal(2, [(3, 0), (1, 1), (0, 2)]).colength() == 4

    def test_known_space_staircase(self):
        m3 = maximal_ideal(3)
        # l(R/m^n) = C(n+2, 3)
        for n in range(1, 7):
            assert m3.power(n).colength() == n * (n + 1) * (n + 2) // 6

    def test_dimension_one(self):
        assert ideal(1, [(7,)]).colength() == 7

    def test_unit_has_colength_zero(self):
        assert unit_ideal(2).colength() == 0

    def test_non_primary_raises(self):
        with pytest.raises(ValueError):
            ideal(2, [(1, 0)]).colength()

    def test_matches_box_oracle(self, rng):
        for _ in range(150):
            dim = rng.randint(1, 3)
            I = random_primary_ideal(rng, dim, 6)
            assert I.colength() == brute_colength(I.gens, dim)


class TestCovolume:
    def test_known_values(self):
        assert maximal_ideal(2).covolume() == Fraction(1, 2)
        assert maximal_ideal(2).power(2).covolume() == 2
        assert ideal(2, [(2, 0), (0, 1)]).covolume() == 1
        assert ideal(2, [(3, 0), (1, 1), (0, 2)]).covolume() == Fraction(5, 2)
        assert unit_ideal(2).covolume() == 0

    def test_space_simplex(self):
        assert maximal_ideal(3).covolume() == Fraction(1, 6)

    def test_growth_approaches_covolume(self, rng):
        # colength(I^n)/n^d settles on the covolume; the extrapolated
        # value of the n = 8, 16, 32 ladder lands within 2% relative
        for _ in range(8):
            dim = rng.randint(1, 2)
            I = random_primary_ideal(rng, dim, 3)
            seq = [
                (n, Fraction(I.power(n).colength(), n ** dim))
                for n in (8, 16, 32)
            ]
            target = I.covolume()
            est = limit_estimate(seq)
            assert abs(est.value - target) <= Fraction(2, 100) * target
            diffs = [abs(v - target) for _, v in seq]
            tol = Fraction(2, 100) * target
            assert all(
                b <= a + tol for a, b in zip(diffs, diffs[1:])
            ), "ladder should be monotone within tolerance"

    def test_geometry_dim_cap(self):
        m5 = maximal_ideal(5)
        with pytest.raises(ValueError):
            m5.covolume()
        with pytest.raises(ValueError):
            m5.newton_vertices()


class TestNewtonPolyhedron:
    def test_vertices_are_extreme_generators(self):
        I = ideal(2, [(3, 0), (1, 1), (0, 2)])
        assert I.newton_vertices().vertices == (
            (0, 2),
            (1, 1),
            (3, 0),
        )

    def test_interior_generator_dropped(self):
        # (2, 2) sits inside the hull spanned by the axis powers
        I = ideal(2, [(3, 0), (2, 2), (0, 3)])
        verts = I.newton_vertices().vertices
        assert (2, 2) not in verts

    def test_product_matches_minkowski_sum(self, rng):
        # polyhedra agree modulo the orthant recession cone, so compare
        # orthant extremes rather than finite hulls (a sum vertex can be
        # extreme in the polytope yet swallowed by the cone)
        for _ in range(20):
            I = random_primary_ideal(rng, 2, 4)
            J = random_primary_ideal(rng, 2, 4)
            lhs = (I * J).newton_vertices().vertices
            summed = polytope.minkowski_sum(
                I.newton_vertices(), J.newton_vertices()
            )
            rhs = tuple(sorted(polytope.orthant_extremes(summed.vertices)))
            assert lhs == rhs
