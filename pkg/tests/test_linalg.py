import random
from fractions import Fraction

import pytest
import sympy

from k3cliff.linalg import (
    column_echelon,
    complete_to_basis,
    det_int,
    identity,
    kernel_basis,
    mat_mul,
    mat_vec,
    rat_inv,
    rat_rank,
    rat_solve,
    solve_int,
    vec_gcd,
    xgcd,
)


def test_xgcd_basic():
    for a, b in [(12, 18), (-12, 18), (0, 0), (0, 7), (7, 0), (-5, -15)]:
        g, x, y = xgcd(a, b)
        assert g >= 0
        assert x * a + y * b == g


def test_column_echelon_transform_and_inverse():
    rng = random.Random(1)
    for _ in range(200):
        m, n = rng.randint(1, 4), rng.randint(1, 5)
        A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        E, V, W = column_echelon(A, track_inverse=True)
        assert mat_mul(A, V) == E
        assert mat_mul(V, W) == identity(n)
        assert abs(det_int(V)) == 1


def test_kernel_and_solve():
    rng = random.Random(2)
    for _ in range(200):
        m, n = rng.randint(1, 4), rng.randint(1, 5)
        A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        for row in kernel_basis(A):
            assert mat_vec(A, row) == [0] * m
        x = [rng.randint(-5, 5) for _ in range(n)]
        b = mat_vec(A, x)
        sol = solve_int(A, b)
        assert sol is not None
        assert mat_vec(A, sol) == b


def test_kernel_is_saturated():
    # any integer solution must be an integer combination of the basis
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(2, 5)
        w = [rng.randint(-9, 9) for _ in range(n)]
        if not any(w):
            continue
        K = kernel_basis([w])
        assert len(K) == n - 1
        # a random kernel element expands integrally over the basis
        coeffs = [rng.randint(-4, 4) for _ in K]
        target = [sum(c * row[i] for c, row in zip(coeffs, K)) for i in range(n)]
        back = solve_int([list(col) for col in zip(*K)], target)
        assert back is not None


def test_solve_int_detects_unsolvable():
    assert solve_int([[2]], [3]) is None
    assert solve_int([[2, 0], [0, 2]], [1, 2]) is None
    assert solve_int([[1, 1]], [5]) is not None


def test_complete_to_basis():
    rng = random.Random(4)
    for _ in range(150):
        n = rng.randint(1, 6)
        vec = [rng.randint(-9, 9) for _ in range(n)]
        if vec_gcd(vec) != 1:
            continue
        U = complete_to_basis(vec)
        assert U[0] == vec
        assert abs(det_int(U)) == 1


def test_complete_to_basis_rejects_imprimitive():
    with pytest.raises(ValueError):
        complete_to_basis([2, 4])


def test_det_int_against_sympy():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 5)
        A = [[rng.randint(-7, 7) for _ in range(n)] for _ in range(n)]
        assert det_int(A) == int(sympy.Matrix(A).det())


def test_rat_rank_against_sympy():
    rng = random.Random(6)
    for _ in range(100):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        A = [
            [Fraction(rng.randint(-6, 6), rng.choice([1, 1, 2, 3])) for _ in range(n)]
            for _ in range(m)
        ]
        want = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in A]).rank()
        assert rat_rank(A) == want


def test_rat_solve_roundtrip_and_inconsistency():
    rng = random.Random(7)
    for _ in range(100):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        A = [[Fraction(rng.randint(-5, 5)) for _ in range(n)] for _ in range(m)]
        x = [Fraction(rng.randint(-4, 4), rng.choice([1, 2])) for _ in range(n)]
        b = [sum(a * t for a, t in zip(row, x)) for row in A]
        sol = rat_solve(A, b)
        assert sol is not None
        assert [sum(a * t for a, t in zip(row, sol)) for row in A] == b
    assert rat_solve([[1, 1], [1, 1]], [Fraction(0), Fraction(1)]) is None


def test_rat_inv():
    M = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    inv = rat_inv(M)
    assert inv == [[Fraction(1), Fraction(-1)], [Fraction(-1), Fraction(2)]]
    assert rat_inv([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]) is None
