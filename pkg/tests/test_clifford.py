import random
from fractions import Fraction

import pytest

from k3cliff.clifford import (
    FamilyError,
    SearchBounds,
    custom_family,
    f_quadratic,
    family_feasibility,
    feasible_prop33,
    feasible_thm41,
    gonality,
    min_clifford,
    prop33_family,
    thm41_family,
)
from k3cliff.lattice import DivisorClass, PicardLattice


class TestFeasibility:
    def test_elliptic_difference_is_feasible(self):
        flags = feasible_prop33(1, 5, -1, 1)
        assert flags.ok
        fam = prop33_family(1, 5)
        D = fam.divisor(-1, 1)
        assert fam.lattice.pair(D, fam.curve) - fam.lattice.square(D) - 2 == 5

    def test_hyperplane_fails_degree_bound(self):
        flags = feasible_prop33(1, 5, 1, 0)
        # condition (degree): 13 <= 10 fails
        assert not flags.degree_ok and not flags.ok

    def test_zero_divisor_fails_moving_bound(self):
        flags = feasible_prop33(1, 5, 0, 0)
        assert not flags.moving_ok and not flags.ok

    def test_prop33_domain(self):
        with pytest.raises(FamilyError):
            feasible_prop33(1, 4, 0, 0)

    def test_thm41_isotropic_branch(self):
        flags = feasible_thm41(3, 4, -3, 1)
        assert flags.ok and flags.branch == "isotropic"
        fam = thm41_family(3, 4)
        E = fam.divisor(-3, 1)
        assert fam.lattice.pair(E, fam.curve) == 12  # ab

    def test_thm41_positive_branch(self):
        flags = feasible_thm41(3, 4, 1, 0)
        assert flags.ok and flags.branch == "positive"
        assert f_quadratic(3, 4, 1, 0) == 16  # 6a + b - 6

    def test_thm41_curve_multiple_fails(self):
        flags = feasible_thm41(3, 4, 0, 1)
        assert not flags.degree_ok

    def test_feasibility_flags_match_definitions(self):
        rng = random.Random(50)
        for _ in range(300):
            p, a = rng.randint(1, 3), 0
            a = rng.randint(2 * p + 3, 2 * p + 12)
            m, n = rng.randint(-30, 30), rng.randint(-10, 10)
            fam = prop33_family(p, a)
            D = fam.divisor(m, n)
            lat = fam.lattice
            flags = feasible_prop33(p, a, m, n)
            assert flags.degree_ok == (lat.pair(D, fam.curve) <= fam.genus - 1)
            assert flags.square_ok == (lat.square(D) >= 0)
            assert flags.moving_ok == (lat.pair(D, fam.aux) > 2)


class TestQuadraticForm:
    def test_diagonal_isotropic_value(self):
        # f(-an, n) = n a b
        for a in range(3, 8):
            for b in range(4, 8):
                for n in range(-4, 5):
                    assert f_quadratic(a, b, -a * n, n) == n * a * b

    def test_residuation_symmetry(self):
        rng = random.Random(51)
        for _ in range(300):
            a, b = rng.randint(3, 9), rng.randint(1, 9)
            m, n = rng.randint(-20, 20), rng.randint(-20, 20)
            assert f_quadratic(a, b, m, n) == f_quadratic(a, b, -m, 1 - n)

    def test_rational_probe_point(self):
        # f(-(3a+b)n/3, n) = -n (ab + b^2/3) at integer specialisations
        a, b, n = 3, 4, -3
        m = -(3 * a + b) * n // 3
        assert (3 * a + b) * n % 3 == 0
        assert m == 13
        expected = -n * (Fraction(a * b) + Fraction(b * b, 3))
        assert expected == 52
        assert f_quadratic(a, b, m, n) == 52

    def test_agrees_with_gram_on_box(self):
        for a, b in [(3, 4), (4, 6), (5, 5)]:
            fam = thm41_family(a, b)
            lat = fam.lattice
            for m in range(-15, 16):
                for n in range(-6, 7):
                    D = fam.divisor(m, n)
                    assert f_quadratic(a, b, m, n) == lat.pair(D, fam.curve) - lat.square(D)


class TestResiduationInvariance:
    def test_cliff_value_symmetric_via_gram(self):
        rng = random.Random(52)
        fams = [prop33_family(1, 5), prop33_family(2, 9), thm41_family(3, 4), thm41_family(5, 6)]
        for fam in fams:
            lat = fam.lattice
            for _ in range(200):
                m, n = rng.randint(-25, 25), rng.randint(-12, 12)
                D = fam.divisor(m, n)
                R = fam.divisor(-m, 1 - n)
                vD = lat.pair(D, fam.curve) - lat.square(D)
                vR = lat.pair(R, fam.curve) - lat.square(R)
                assert vD == vR


class TestMinClifford:
    def test_prop33_base_case(self):
        rep = min_clifford(prop33_family(1, 5))
        assert rep.min_cliff == 5
        assert [x.coords for x in rep.argmin] == [(-1, 1)]
        assert rep.clifford_index == 5
        assert rep.verdict is True

    def test_prop33_sweep(self):
        for p in range(1, 5):
            for a in range(2 * p + 3, 2 * p + 19):
                rep = min_clifford(prop33_family(p, a))
                assert rep.min_cliff == 2 * a - 2 * p - 3
                assert DivisorClass([-1, 1]) in rep.argmin
                assert rep.clifford_index == a
                assert rep.verdict is True

    def test_thm41_base_case(self):
        rep = min_clifford(thm41_family(3, 4))
        assert rep.min_cliff == 10
        assert rep.clifford_index == 10
        assert rep.gonality == 12
        assert [x.coords for x in rep.argmin] == [(-3, 1)]

    def test_thm41_sweep(self):
        for a in range(3, 11):
            for b in (4, 5, 6):
                rep = min_clifford(thm41_family(a, b))
                assert rep.min_cliff == a * b - 2, (a, b)
                assert DivisorClass([-a, 1]) in rep.argmin
                assert rep.gonality == a * b
                assert rep.verdict is True

    def test_thm41_boundary_fails_as_predicted(self):
        for a in range(3, 11):
            rep = min_clifford(thm41_family(a, 7))
            assert rep.min_cliff == 6 * a + 7 - 8
            assert DivisorClass([1, 0]) in rep.argmin
            assert rep.verdict is False

    def test_gonality_values(self):
        assert gonality(thm41_family(3, 4)) == 12
        assert gonality(thm41_family(3, 6)) == 18
        assert gonality(prop33_family(1, 5)) == 7

    def test_isotropic_report(self):
        rep = min_clifford(thm41_family(3, 5))
        coords = {r.cls.coords for r in rep.isotropic_classes}
        assert coords == {(14, -3), (-3, 1)}
        by_coords = {r.cls.coords: r for r in rep.isotropic_classes}
        assert by_coords[(-3, 1)].dot_curve == 15
        assert by_coords[(14, -3)].dot_curve > 15

    def test_empty_feasible_set_falls_back_to_generic(self):
        # genus 2 with an isotropic auxiliary class: D.H > 2 forces n >= 3,
        # D.C <= 1 then forces m <= 1 - 2n, and D^2 >= 0 needs m >= -n
        lat = PicardLattice([[0, 1], [1, 2]], ["H", "C"])
        fam = custom_family(lat, DivisorClass([0, 1]))
        rep = min_clifford(fam, SearchBounds(n_max=6, m_cap=40))
        assert rep.min_cliff is None
        assert rep.clifford_index == rep.generic_bound
        assert rep.verdict is None

    def test_custom_family_via_rr_proxy(self):
        lat = PicardLattice([[6, 13], [13, 20]], ["H", "C"])
        fam = custom_family(lat, DivisorClass([0, 1]), g=11)
        rep = min_clifford(fam)
        assert rep.clifford_index == 5
        assert any("Riemann-Roch" in note for note in rep.notes)

    def test_custom_family_validation(self):
        lat = PicardLattice([[6, 13], [13, 20]], ["H", "C"])
        with pytest.raises(FamilyError):
            custom_family(lat, DivisorClass([0, 1]), g=12)
        with pytest.raises(FamilyError):
            custom_family(lat, DivisorClass([1, 1]))  # needs explicit aux
        with pytest.raises(FamilyError):
            custom_family(
                PicardLattice([[6, -13], [-13, 20]], ["H", "C"]), DivisorClass([0, 1])
            )  # aux pairs negatively

    def test_unverified_feasibility_note(self):
        lat = PicardLattice([[-2, 3], [3, 20]], ["R", "C"])
        fam = custom_family(lat, DivisorClass([0, 1]), aux=DivisorClass([1, 0]))
        rep = min_clifford(fam, SearchBounds(n_max=4, m_cap=30))
        assert any("unverified" in note for note in rep.notes)


class TestOracleEquivalence:
    def test_enumeration_matches_full_box(self):
        rng = random.Random(53)
        n_max, m_cap = 5, 40
        for _ in range(20):
            fam = _random_family(rng)
            rep = min_clifford(fam, SearchBounds(n_max=n_max, m_cap=m_cap))
            got = sorted((c.m, c.n) for c in rep.candidates)
            want = sorted(
                (m, n)
                for n in range(-n_max, n_max + 1)
                for m in range(-m_cap, m_cap + 1)
                if family_feasibility(fam, m, n).ok
            )
            assert got == want, (fam.kind, dict(fam.params))

    def test_candidate_values_match_gram(self):
        rng = random.Random(54)
        for _ in range(10):
            fam = _random_family(rng)
            rep = min_clifford(fam, SearchBounds(n_max=4, m_cap=30))
            for c in rep.candidates:
                D = fam.divisor(c.m, c.n)
                assert c.dot_curve == fam.lattice.pair(D, fam.curve)
                assert c.self_int == fam.lattice.square(D)
                assert c.cliff == c.dot_curve - c.self_int - 2


def _random_family(rng):
    kind = rng.choice(["prop33", "thm41", "custom"])
    if kind == "prop33":
        p = rng.randint(1, 3)
        return prop33_family(p, rng.randint(2 * p + 3, 2 * p + 10))
    if kind == "thm41":
        return thm41_family(rng.randint(3, 6), rng.randint(2, 8))
    while True:
        h2 = rng.randint(-4, 8)
        d = rng.randint(1, 12)
        c2 = 2 * rng.randint(1, 12)
        try:
            return custom_family(PicardLattice([[h2, d], [d, c2]], ["H", "C"]), DivisorClass([0, 1]))
        except FamilyError:
            continue
