"""Shared builders for randomized test instances (seeded, deterministic)."""

from __future__ import annotations

import random
from fractions import Fraction

from k3cliff.koszul import GradedRingData, projective_ring_data, zeta_tensor
from k3cliff.linalg import rat_inv


def poly_product(max_deg: int):
    """Coefficient-vector multiplication for polynomials of degree <= max_deg.

    Returns (product_fn, product_dim) landing in degree <= 2 * max_deg.
    """
    dim = 2 * max_deg + 1

    def product(u, v):
        out = [Fraction(0)] * dim
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        out[i + j] += a * b
        return out

    return product, dim


def _pmul(u, v, dim):
    out = [Fraction(0)] * dim
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                if b:
                    out[i + j] += a * b
    return out


def random_rank2_zeta(p: int, deg: int, rng: random.Random):
    """Syzygy tensor of a random rank-2 section family over polynomials.

    Sections are pairs of degree <= deg polynomials; the pair coefficients
    are the 2x2 determinants, so the tensor is always a cocycle for honest
    polynomial multiplication.
    """
    k = p + 3
    dim = 2 * deg + 1
    while True:
        secs = [
            (
                [Fraction(rng.randint(-4, 4)) for _ in range(deg + 1)],
                [Fraction(rng.randint(-4, 4)) for _ in range(deg + 1)],
            )
            for _ in range(k)
        ]
        rows = []
        for i in range(k):
            for j in range(i + 1, k):
                f, g = secs[i]
                F, G = secs[j]
                lam = [x - y for x, y in zip(_pmul(f, G, dim), _pmul(F, g, dim))]
                rows.append(lam)
        try:
            return zeta_tensor(rows)
        except Exception:
            continue


def decomposable_zeta(p: int, rng: random.Random):
    """Syzygy tensor of a split family: a pencil plus p+1 complementary sections.

    Sections: e_1 = (alpha, beta_1), e_2 = (alpha', 0), e_j = (0, beta_{j-2}).
    All pair coefficients with i, j >= 3 vanish, so the tensor lives in the
    wedge of the last p+1 spanning vectors: the rank bound must find p+1.
    """
    da, db = 2, p + 1
    dim = da + db + 1
    while True:
        alpha = [Fraction(rng.randint(-4, 4)) for _ in range(da + 1)]
        alphap = [Fraction(rng.randint(-4, 4)) for _ in range(da + 1)]
        betas = [
            [Fraction(rng.randint(-4, 4)) for _ in range(db + 1)] for _ in range(p + 1)
        ]
        zero_a = [Fraction(0)] * (da + 1)
        zero_b = [Fraction(0)] * (db + 1)
        secs = [(alpha, betas[0]), (alphap, zero_b)] + [(zero_a, b) for b in betas]
        rows = []
        k = p + 3
        for i in range(k):
            for j in range(i + 1, k):
                f, g = secs[i]
                F, G = secs[j]
                rows.append([x - y for x, y in zip(_pmul(f, G, dim), _pmul(F, g, dim))])
        try:
            return zeta_tensor(rows)
        except Exception:
            continue


def random_monomial_ring(rng: random.Random) -> GradedRingData:
    """A small honest polynomial multiplication datum."""
    nvars = rng.choice([1, 2, 3])
    l_degree = rng.choice([1, 2]) if nvars < 3 else 1
    f_degree = rng.choice([0, 1])
    return projective_ring_data(nvars, l_degree, f_degree, -1, 2)


def _random_invertible(n: int, rng: random.Random):
    while True:
        M = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        inv = rat_inv(M)
        if inv is not None:
            return M, inv


def conjugate_ring(ring: GradedRingData, rng: random.Random) -> GradedRingData:
    """Rewrite the multiplication tables in random new bases of every space."""
    n = ring.section_dim
    S, _ = _random_invertible(n, rng)
    T = {}
    T_inv = {}
    for q, d in ring.pieces.items():
        if d == 0:
            T[q], T_inv[q] = [], []
        else:
            T[q], T_inv[q] = _random_invertible(d, rng)
    new_mult = {}
    for q in ring.mult:
        dim_q = ring.piece(q)
        dim_q1 = ring.piece(q + 1)
        if dim_q == 0 or dim_q1 == 0:
            new_mult[q] = [[] for _ in range(dim_q1)]
            continue
        rows = [[Fraction(0)] * (n * dim_q) for _ in range(dim_q1)]
        for i_new in range(n):
            # the new i-th basis vector of V in old coordinates
            v_old = [S[t][i_new] for t in range(n)]
            for j_new in range(dim_q):
                m_old = [T[q][t][j_new] for t in range(dim_q)]
                prod_old = [Fraction(0)] * dim_q1
                for t, coef in enumerate(v_old):
                    if coef:
                        part = ring.multiply(q, t, m_old)
                        for r, x in enumerate(part):
                            if x:
                                prod_old[r] += coef * x
                # convert back to the new basis of M_{q+1}
                col = i_new * dim_q + j_new
                for r in range(dim_q1):
                    val = sum(
                        T_inv[q + 1][r][t] * prod_old[t] for t in range(dim_q1)
                    )
                    rows[r][col] = val
        new_mult[q] = rows
    return GradedRingData(n, dict(ring.pieces), new_mult)
