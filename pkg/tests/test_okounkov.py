"""Value semigroups, bodies, and the volume and containment checks."""

import random
from fractions import Fraction as F

import pytest

from filtmult import filtration as ft
from filtmult import monomial as mo
from filtmult import okounkov as ok
from filtmult import polytope as pt


def maximal_adic():
    return ft.adic(mo.maximal_ideal(2))


def parabola_adic():
    return ft.adic(mo.ideal(2, [(2, 0), (0, 1)]))


def line_plus_powers():
    return ft.fixed_plus_adic(mo.ideal(2, [(1, 0)]), mo.maximal_ideal(2))


def sqrt2_filtration():
    return ft.rounded_valuation((1,), ft.root_scale(2))


class TestValuation:
    def test_default_tags_distinct(self):
        v = ok.default_valuation(4)
        assert len(set(v.prime_tags)) == 4

    def test_duplicate_tags_rejected(self):
        with pytest.raises(ValueError):
            ok.MonomialValuation((2, 2))

    def test_dimension_cap(self):
        with pytest.raises(ValueError):
            ok.default_valuation(11)


class TestDegreeBound:
    def test_builtin_bounds(self):
        assert ok.degree_bound([maximal_adic()], (1,)) == 1
        assert ok.degree_bound([sqrt2_filtration()], (1,)) == 2
        assert ok.degree_bound([parabola_adic()], (1,)) == 2
        assert ok.degree_bound([line_plus_powers()], (1,)) == 1

    def test_unit_product_floors_at_one(self):
        assert ok.degree_bound([maximal_adic()], (0,)) == 1

    def test_validation(self):
        with pytest.raises(ValueError):
            ok.degree_bound([maximal_adic()], (1, 1))
        with pytest.raises(ValueError):
            ok.degree_bound([maximal_adic()], (-1,))

    def test_shared_bound_doubles_the_max(self):
        got = ok.shared_degree_bound([maximal_adic()], [(1,), (2,), (3,)])
        assert got == 2 * ok.degree_bound([maximal_adic()], (3,)) == 6


class TestValueSemigroup:
    def test_maximal_adic_levels(self):
        sem = ok.value_semigroup([maximal_adic()], (1,), 1, 4)
        assert sorted(sem.points_at(2)) == [(0, 2), (1, 1), (2, 0)]
        assert sem.level_contains((2, 0), 2)
        assert not sem.level_contains((1, 0), 2)
        # above the degree cap, even though inside the ideal
        assert not sem.level_contains((3, 0), 2)

    def test_level_range_checked(self):
        sem = ok.value_semigroup([maximal_adic()], (1,), 1, 4)
        with pytest.raises(ValueError):
            sem.level_contains((1, 1), 0)
        with pytest.raises(ValueError):
            sem.level_contains((1, 1), 5)

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            ok.value_semigroup([maximal_adic()], (1,), 1, 0)
        with pytest.raises(ValueError):
            ok.value_semigroup([maximal_adic()], (1,), 0, 4)

    def test_closed_under_addition(self):
        cutoff = 8
        rng = random.Random(99)
        for f in (parabola_adic(), line_plus_powers()):
            bound = ok.degree_bound([f], (1,))
            sem = ok.value_semigroup([f], (1,), bound, cutoff)
            pools = {i: list(sem.points_at(i)) for i in range(1, cutoff + 1)}
            for _ in range(100):
                i = rng.randint(1, cutoff - 1)
                j = rng.randint(1, cutoff - i)
                a = rng.choice(pools[i])
                b = rng.choice(pools[j])
                s = tuple(x + y for x, y in zip(a, b))
                if sum(s) <= bound * (i + j):
                    assert sem.level_contains(s, i + j)

    def test_three_variables_stored_explicitly(self):
        sem = ok.value_semigroup([ft.adic(mo.maximal_ideal(3))], (1,), 1, 3)
        assert sorted(sem.points_at(2)) == [
            (0, 0, 2), (0, 1, 1), (0, 2, 0), (1, 0, 1), (1, 1, 0), (2, 0, 0),
        ]
        assert sem.level_contains((1, 1, 0), 2)
        assert not sem.level_contains((1, 0, 0), 2)


class TestBody:
    def test_maximal_adic_body_is_flat(self):
        sem = ok.value_semigroup([maximal_adic()], (1,), 1, 4)
        b = ok.body(sem)
        assert b.volume() == F(0)
        assert sorted(b.body.vertices) == [(F(0), F(1)), (F(1), F(0))]
        assert b.inner

    def test_zero_sigma_fills_the_simplex(self):
        sem = ok.value_semigroup([maximal_adic()], (0,), 1, 2)
        assert ok.body(sem).volume() == F(1, 2)
        assert ok.full_simplex_body(2, 1).volume() == F(1, 2)

    def test_sqrt2_interval_at_depth_64(self):
        sem = ok.value_semigroup([sqrt2_filtration()], (1,), 2, 64)
        b = ok.body(sem)
        assert b.body.vertices == ((F(58, 41),), (F(2),))
        assert b.volume() == F(24, 41)

    @pytest.mark.xfail(
        reason="the left endpoint at depth 64 is attained at level 41, where"
        " the rounded slope is 58/41, not at level 64 with slope 91/64",
        strict=True,
    )
    def test_sqrt2_left_endpoint_from_deepest_level(self):
        sem = ok.value_semigroup([sqrt2_filtration()], (1,), 2, 64)
        assert ok.body(sem).body.vertices[0] == (F(91, 64),)

    def test_deeper_cutoff_only_grows(self):
        for f in (sqrt2_filtration(), line_plus_powers()):
            bound = ok.degree_bound([f], (1,))
            small = ok.body(ok.value_semigroup([f], (1,), bound, 8))
            large = ok.body(ok.value_semigroup([f], (1,), bound, 16))
            for v in small.body.vertices:
                assert pt.contains_point(large.body, v)


class TestVolumeIdentity:
    def test_exact_for_noetherian_examples(self):
        for f in (maximal_adic(), parabola_adic()):
            rep = ok.volume_identity_report(f, 16)
            assert rep.discrepancy == F(0)

    def test_sqrt2_discrepancies_frozen(self):
        got = [ok.volume_identity_report(sqrt2_filtration(), N).discrepancy for N in (16, 32, 64)]
        assert got == [F(1, 96), F(1, 96), F(11, 1312)]

    def test_degenerate_gap_halves_with_cutoff(self):
        for N in (16, 32):
            rep = ok.volume_identity_report(line_plus_powers(), N)
            assert rep.discrepancy == F(1, 2 * N)
            assert rep.hat_volume == F(1, 2)
            assert rep.limit.value == F(0)

    def test_discrepancy_not_increasing_along_cutoffs(self):
        seq = [ok.volume_identity_report(sqrt2_filtration(), N).discrepancy for N in (16, 32, 64)]
        assert all(b <= a for a, b in zip(seq, seq[1:]))


class TestOriginCollapse:
    def test_degenerate_filtration_triggers(self):
        rep = ok.origin_collapse_check(line_plus_powers(), 8, F(1, 4))
        assert rep.triggered
        assert rep.witness == ((1, 0), 4)
        assert rep.gap_at_half == F(1, 8)
        assert rep.gap_at_full == F(1, 16)
        assert rep.gap_decreasing

    def test_positive_multiplicity_does_not_trigger(self):
        rep = ok.origin_collapse_check(maximal_adic(), 8, F(1, 4))
        assert not rep.triggered
        assert rep.witness is None
        assert rep.gap_at_half is None and rep.gap_at_full is None


class TestContainmentBound:
    def test_positive_builtins_found_at_one(self):
        for f, bound in ((maximal_adic(), 1), (parabola_adic(), 2), (sqrt2_filtration(), 2)):
            got = ok.containment_bound_search(f, 32)
            assert got.found and got.b == 1
            assert got.bound == bound
            assert got.verified_through == 32

    def test_certificate_meaning(self):
        got = ok.containment_bound_search(parabola_adic(), 8)
        f, mx = parabola_adic(), mo.maximal_ideal(2)
        step = got.b * got.bound
        for i in range(1, 9):
            assert mx.power(i).contains_ideal(f.ideal_at(i * step))

    def test_degenerate_search_fails_honestly(self):
        got = ok.containment_bound_search(line_plus_powers(), 2, b_cap=3)
        assert not got.found
        assert got.b is None


class TestMinkowski:
    def test_positive_pair(self):
        rep = ok.minkowski_checks([maximal_adic(), parabola_adic()], (1, 0), (0, 1), 16)
        assert rep.containment_pass
        assert rep.unresolved_vertices == ()
        assert rep.collapse_proxy == F(1)
        assert not rep.collapse_triggered
        assert rep.tolerance == F(1, 16)
        assert rep.sum_volume is None and rep.volume_agreement is None

    def test_degenerate_pair_volume_agreement(self):
        rep = ok.minkowski_checks([line_plus_powers(), maximal_adic()], (1, 0), (0, 1), 32)
        assert rep.bound == 4
        assert rep.collapse_triggered
        assert rep.sum_volume == F(957, 128)
        assert rep.tau_volume == F(15, 2)
        assert rep.volume_agreement
        assert rep.containment_pass

    def test_zero_sigma_collapses_trivially(self):
        rep = ok.minkowski_checks([maximal_adic(), parabola_adic()], (0, 0), (0, 1), 8)
        assert rep.collapse_triggered
        assert rep.sum_volume == rep.tau_volume
        assert rep.volume_agreement
        assert rep.containment_pass
