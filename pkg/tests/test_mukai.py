import random
from math import gcd

import pytest

from k3cliff.lattice import DivisorClass, LatticeError, PicardLattice
from k3cliff.linalg import det_int, mat_mul
from k3cliff.mukai import (
    ExtendedLattice,
    MukaiVector,
    fm_dual,
    mukai_pair,
    nl_member,
    weakly_isometric,
)

D6 = PicardLattice([[20, 14], [14, 8]], ["l", "H"])
D9 = PicardLattice([[20, 11], [11, 4]], ["l", "H"])
D13 = PicardLattice([[20, 13], [13, 6]], ["l", "H"])
ELL = DivisorClass([1, 0])


class TestPairing:
    def test_square_of_fixed_generator(self):
        ext = ExtendedLattice(D6)
        v = MukaiVector(2, DivisorClass([1, 1]), 12)
        assert ext.square(v) == 8

    def test_hyperbolic_normalisation(self):
        ext = ExtendedLattice(D6)
        one = MukaiVector(1, DivisorClass([0, 0]), 0)
        point = MukaiVector(0, DivisorClass([0, 0]), 1)
        assert mukai_pair(ext, one, point) == -1
        assert mukai_pair(ext, point, one) == -1

    def test_pair_with_polarization(self):
        ext = ExtendedLattice(D6)
        v = MukaiVector(2, DivisorClass([1, 1]), 12)
        lhat = MukaiVector(0, ELL, 10)
        assert ext.pair(v, lhat) == 14

    def test_symmetry_and_bilinearity(self):
        rng = random.Random(21)
        for _ in range(200):
            g01 = rng.randint(-8, 8)
            ns = PicardLattice([[rng.randint(-8, 8), g01], [g01, rng.randint(-8, 8)]])
            ext = ExtendedLattice(ns)

            def rand_vec():
                return MukaiVector(
                    rng.randint(-6, 6),
                    DivisorClass([rng.randint(-6, 6), rng.randint(-6, 6)]),
                    rng.randint(-6, 6),
                )

            x, y, z = rand_vec(), rand_vec(), rand_vec()
            a, b = rng.randint(-4, 4), rng.randint(-4, 4)
            assert ext.pair(x, y) == ext.pair(y, x)
            combo = MukaiVector(
                a * x.r + b * y.r,
                DivisorClass([a * u + b * w for u, w in zip(x.c.coords, y.c.coords)]),
                a * x.s + b * y.s,
            )
            assert ext.pair(combo, z) == a * ext.pair(x, z) + b * ext.pair(y, z)

    def test_component_mismatch_rejected(self):
        ext = ExtendedLattice(D6)
        bad = MukaiVector(1, DivisorClass([1, 2, 3]), 0)
        with pytest.raises(LatticeError):
            ext.pair(bad, bad)

    def test_parse(self):
        v = MukaiVector.parse("2,1,1,12", 2)
        assert v.r == 2 and v.c.coords == (1, 1) and v.s == 12
        with pytest.raises(LatticeError):
            MukaiVector.parse("2,1,1", 2)


class TestFMDual:
    def test_fixed_lattice(self):
        res = fm_dual(D6, ELL, 2, 5)
        assert res.discriminant == -36
        assert res.polarization_coords == (1, 0)
        assert res.gram[0][0] == 20
        out = res.lattice()
        assert weakly_isometric(out, D6)
        found = nl_member(out, DivisorClass([1, 0]), 8, 14)
        assert found is not None
        assert res.distinguished is None

    @pytest.mark.parametrize(
        "ns,disc,degree",
        [(D9, -41, 1), (D13, -49, 3)],
    )
    def test_moved_lattices(self, ns, disc, degree):
        res = fm_dual(ns, ELL, 2, 5)
        assert res.discriminant == disc
        out = res.lattice()
        assert nl_member(out, DivisorClass([1, 0]), -2, degree) is not None
        assert res.distinguished is not None
        assert res.distinguished.square == -2
        assert res.distinguished.degree == degree

    def test_frozen_canonical_grams(self):
        # canonical form: polarization first, second generator reduced
        assert fm_dual(D6, ELL, 2, 5).gram == ((20, 6), (6, 0))
        assert fm_dual(D9, ELL, 2, 5).gram == ((20, 1), (1, -2))
        assert fm_dual(D13, ELL, 2, 5).gram == ((20, 3), (3, -2))

    def test_basis_lifts_are_orthogonal_to_v(self):
        for ns in (D6, D9, D13):
            ext = ExtendedLattice(ns)
            v = MukaiVector(2, ELL, 5)
            res = fm_dual(ns, ELL, 2, 5)
            assert ext.pair(res.polarization, v) == 0
            for vec in res.basis:
                assert ext.pair(vec, v) == 0
            # the induced pairings match the lifted representatives
            for i, x in enumerate(res.basis):
                for j, y in enumerate(res.basis):
                    assert ext.pair(x, y) == res.gram[i][j]

    def test_polarization_square_is_degree(self):
        rng = random.Random(31)
        for _ in range(100):
            r, s, ns, ell = _random_isotropic_input(rng)
            res = fm_dual(ns, ell, r, s)
            out = res.lattice()
            pol = DivisorClass(res.polarization_coords)
            assert out.square(pol) == 2 * (1 + r * s) - 2

    def test_discriminant_preserved_on_random_inputs(self):
        rng = random.Random(32)
        for _ in range(100):
            r, s, ns, ell = _random_isotropic_input(rng)
            res = fm_dual(ns, ell, r, s)
            assert res.discriminant == ns.determinant()

    def test_basis_change_invariance(self):
        rng = random.Random(33)
        for _ in range(40):
            r, s, ns, ell = _random_isotropic_input(rng)
            base = fm_dual(ns, ell, r, s)
            U = _random_gl2(rng)
            Uinv = [[U[1][1], -U[0][1]], [-U[1][0], U[0][0]]]
            det = det_int(U)
            if det == -1:
                Uinv = [[-x for x in row] for row in Uinv]
            gram2 = mat_mul(mat_mul(U, [list(r_) for r_ in ns.gram]), _transpose(U))
            ns2 = PicardLattice(gram2)
            # coordinates of ell transform by the inverse transpose
            ell2 = DivisorClass(
                [sum(Uinv[j][i] * ell.coords[j] for j in range(2)) for i in range(2)]
            )
            assert ns2.square(ell2) == ns.square(ell)
            res2 = fm_dual(ns2, ell2, r, s)
            assert weakly_isometric(res2.lattice(), base.lattice(), value_cap=60, coord_box=25)

    def test_rejects_bad_inputs(self):
        with pytest.raises(LatticeError):
            fm_dual(D13, ELL, 2, 4)  # not coprime
        with pytest.raises(LatticeError):
            fm_dual(D13, ELL, 3, 5)  # ell^2 != 2rs
        with pytest.raises(LatticeError):
            fm_dual(D13, DivisorClass([2, 0]), 2, 5)  # imprimitive ell
        with pytest.raises(LatticeError):
            fm_dual(D13, ELL, -2, -5)


def _transpose(M):
    return [list(col) for col in zip(*M)]


def _random_gl2(rng):
    while True:
        U = [[rng.randint(-3, 3), rng.randint(-3, 3)] for _ in range(2)]
        if abs(det_int(U)) == 1:
            return U


def _random_isotropic_input(rng):
    """Random coprime (r, s) with a rank-2 lattice where ell = (1,0) has square 2rs."""
    while True:
        r, s = rng.randint(1, 4), rng.randint(1, 5)
        if gcd(r, s) == 1:
            break
    t = rng.randint(-6, 6)
    u = rng.randint(-6, 6)
    ns = PicardLattice([[2 * r * s, t], [t, u]])
    return r, s, ns, DivisorClass([1, 0])


class TestNLMember:
    def test_hyperplane_in_d13(self):
        assert nl_member(D13, ELL, 6, 13).coords == (0, 1)

    def test_rank_one_absent(self):
        L = PicardLattice([[20]], ["l"])
        assert nl_member(L, DivisorClass([1]), 6, 13) is None

    def test_dual_image_of_d9(self):
        out = fm_dual(D9, ELL, 2, 5).lattice()
        assert nl_member(out, DivisorClass([1, 0]), -2, 1) is not None

    def test_matches_box_scan(self):
        rng = random.Random(41)
        bound = 6
        import itertools

        for _ in range(80):
            g01 = rng.randint(-5, 5)
            L = PicardLattice([[rng.randint(-5, 5), g01], [g01, rng.randint(-5, 5)]])
            ell = DivisorClass([rng.randint(-2, 2), rng.randint(-2, 2)])
            hsq = rng.randint(-6, 8)
            hdot = rng.randint(-8, 8)
            got = nl_member(L, ell, hsq, hdot, bound)
            box = [
                DivisorClass(c)
                for c in itertools.product(range(-bound, bound + 1), repeat=2)
                if L.pair(DivisorClass(c), ell) == hdot
                and L.square(DivisorClass(c)) == hsq
            ]
            if got is None:
                assert not box, (L.gram, ell.coords, hsq, hdot)
            else:
                assert got in box
