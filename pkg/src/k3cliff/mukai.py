"""Arithmetic in the extended lattice Z + NS + Z.

The extended pairing of two triples (r, c, s) and (r', c', s') is
c.c' - s r' - r s'.  For a primitive isotropic vector v = (r, ell, s) the
dual lattice is the quotient v-perp / Zv with the induced form;
``fm_dual`` computes an integral basis of that quotient, normalised so the
image of (0, ell, 2s) is the first generator whenever it is primitive.
Membership tests for prescribed (square, degree) pairs live here too.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, isqrt

from .lattice import (
    DivisorClass,
    LatticeError,
    PicardLattice,
    classes_with_square,
    int_jsonable,
)
from .linalg import (
    complete_to_basis,
    det_int,
    kernel_basis,
    mat_vec,
    solve_int,
    vec_gcd,
    xgcd,
)


@dataclass(frozen=True)
class MukaiVector:
    """Triple (r, c, s): rank, a divisor class, and the degree-4 component."""

    r: int
    c: DivisorClass
    s: int

    def components(self) -> tuple[int, ...]:
        return (self.r, *self.c.coords, self.s)

    @classmethod
    def from_components(cls, vec) -> "MukaiVector":
        vec = list(vec)
        if len(vec) < 3:
            raise LatticeError("a Mukai vector needs at least three components")
        return cls(vec[0], DivisorClass(vec[1:-1]), vec[-1])

    @classmethod
    def parse(cls, text: str, rank: int) -> "MukaiVector":
        parts = DivisorClass.parse(text).coords
        if len(parts) != rank + 2:
            raise LatticeError(
                f"expected {rank + 2} components for rank-{rank} coefficients, got {len(parts)}"
            )
        return cls.from_components(parts)


class ExtendedLattice:
    """Z + NS + Z with the hyperbolic extension of the NS pairing."""

    def __init__(self, ns: PicardLattice):
        self.ns = ns

    @property
    def rank(self) -> int:
        return self.ns.rank + 2

    def pair(self, x: MukaiVector, y: MukaiVector) -> int:
        return self.ns.pair(x.c, y.c) - x.s * y.r - x.r * y.s

    def square(self, x: MukaiVector) -> int:
        return self.pair(x, x)

    def gram(self) -> list[list[int]]:
        """Gram matrix on components (r, c_1..c_k, s)."""
        k = self.ns.rank
        n = k + 2
        G = [[0] * n for _ in range(n)]
        for i in range(k):
            for j in range(k):
                G[1 + i][1 + j] = self.ns.gram[i][j]
        G[0][n - 1] = G[n - 1][0] = -1
        return G


def mukai_pair(extended: ExtendedLattice, x: MukaiVector, y: MukaiVector) -> int:
    return extended.pair(x, y)


@dataclass(frozen=True)
class DistinguishedClass:
    """A located class of square -2, with its degree against the polarization."""

    coords: tuple[int, ...]
    square: int
    degree: int

    def to_dict(self) -> dict:
        return {
            "coords": [int_jsonable(c) for c in self.coords],
            "square": self.square,
            "degree": self.degree,
        }


@dataclass(frozen=True)
class FMDualResult:
    """Quotient lattice v-perp / Zv with lifted generators.

    ``basis`` holds one extended-lattice representative per generator;
    ``gram`` is the induced pairing matrix, and ``polarization_coords`` are
    the quotient coordinates of the class of (0, ell, 2s).
    """

    basis: tuple[MukaiVector, ...]
    gram: tuple[tuple[int, ...], ...]
    polarization: MukaiVector
    polarization_coords: tuple[int, ...]
    distinguished: DistinguishedClass | None

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def discriminant(self) -> int:
        return det_int([list(row) for row in self.gram])

    def lattice(self) -> PicardLattice:
        labels = ["lhat"] + [f"w{i}" for i in range(2, self.rank + 1)]
        return PicardLattice(self.gram, labels)

    def to_dict(self) -> dict:
        return {
            "basis": [[int_jsonable(c) for c in v.components()] for v in self.basis],
            "gram": [[int_jsonable(x) for x in row] for row in self.gram],
            "polarization": [int_jsonable(c) for c in self.polarization.components()],
            "polarization_coords": [int_jsonable(c) for c in self.polarization_coords],
            "distinguished": self.distinguished.to_dict() if self.distinguished else None,
            "discriminant": int_jsonable(self.discriminant),
        }


def fm_dual(
    ns: PicardLattice,
    ell: DivisorClass,
    r: int,
    s: int,
    *,
    search_bound: int = 50,
) -> FMDualResult:
    """Dual lattice of the moduli space attached to v = (r, ell, s).

    Requires r, s >= 1 coprime, ell primitive, and ell^2 = 2 r s (which makes
    v isotropic).  The quotient v-perp / Zv is computed by an integer kernel
    plus a unimodular completion of v inside it, so the result is an honest
    Z-basis; tie-breaking is fixed by the echelon reduction, making the
    output reproducible.
    """
    if r < 1 or s < 1:
        raise LatticeError("the moduli parameters r and s must be positive")
    if gcd(r, s) != 1:
        raise LatticeError("the moduli parameters r and s must be coprime")
    if not ell.is_primitive:
        raise LatticeError("the polarization class must be primitive")
    if ns.square(ell) != 2 * r * s:
        raise LatticeError(
            f"ell^2 = {ns.square(ell)} != 2rs = {2 * r * s}: the vector (r, ell, s) is not isotropic"
        )

    ext = ExtendedLattice(ns)
    G = ext.gram()
    v = MukaiVector(r, ell, s)
    v_vec = list(v.components())
    lhat = MukaiVector(0, ell, 2 * s)
    lhat_vec = list(lhat.components())

    # v-perp is the kernel of the single linear form x -> x . v
    w = mat_vec(G, v_vec)
    kernel = kernel_basis([w])  # rank ns.rank + 1

    def in_kernel_coords(target):
        coords = solve_int([list(col) for col in zip(*kernel)], target)
        if coords is None:
            raise LatticeError("internal error: vector not in the orthogonal lattice")
        return coords

    v_coords = in_kernel_coords(v_vec)
    if vec_gcd(v_coords) != 1:
        raise LatticeError("internal error: isotropic vector not primitive in its orthogonal")
    U = complete_to_basis(v_coords)  # rows: first is v, rest complete it
    lifts = [mat_vec([[row[i] for row in kernel] for i in range(len(v_vec))], u) for u in U[1:]]
    # each lift is sum_j u_j * kernel[j], expressed back in ambient components

    def epair(x, y):
        return sum(a * b for a, b in zip(mat_vec(G, x), y))

    # normalise: put the class of (0, ell, 2s) first when it is primitive
    quot_rank = len(lifts)
    lhat_in_kernel = in_kernel_coords(lhat_vec)
    # quotient coordinates = coefficients on U[1:], dropping the v component
    lhat_q = solve_int([list(col) for col in zip(*U)], lhat_in_kernel)
    assert lhat_q is not None
    lhat_quot = lhat_q[1:]
    if vec_gcd(lhat_quot) == 1:
        M = complete_to_basis(lhat_quot)
        lifts = [
            [sum(M[i][j] * lifts[j][t] for j in range(quot_rank)) for t in range(len(v_vec))]
            for i in range(quot_rank)
        ]
        lifts[0] = lhat_vec  # same class mod v; use the nominal representative
        lhat_quot = [1] + [0] * (quot_rank - 1)
        # reduce the remaining generators against the polarization degree
        deg = epair(lhat_vec, lhat_vec)
        if deg > 0:
            for i in range(1, quot_rank):
                t = epair(lifts[i], lhat_vec)
                t_pos, t_neg = t % deg, (-t) % deg
                if t_neg < t_pos or (t_neg == t_pos and _prefer_negation(lifts[i])):
                    lifts[i] = [-x for x in lifts[i]]
                    t = -t
                shift = -((t - t % deg) // deg)
                if shift:
                    lifts[i] = [a + shift * b for a, b in zip(lifts[i], lhat_vec)]

    gram_out = tuple(
        tuple(epair(lifts[i], lifts[j]) for j in range(quot_rank)) for i in range(quot_rank)
    )
    basis = tuple(MukaiVector.from_components(lift) for lift in lifts)
    out_lattice = PicardLattice(gram_out)
    pol_class = DivisorClass(lhat_quot)

    distinguished = None
    candidates = classes_with_square(out_lattice, -2, search_bound, ref=pol_class)
    if candidates:
        scored = sorted(
            (abs(out_lattice.pair(x, pol_class)), out_lattice.pair(x, pol_class), x.coords)
            for x in candidates
        )
        _, degree, coords = scored[0]
        distinguished = DistinguishedClass(coords=coords, square=-2, degree=degree)

    return FMDualResult(
        basis=basis,
        gram=gram_out,
        polarization=lhat,
        polarization_coords=tuple(lhat_quot),
        distinguished=distinguished,
    )


def _prefer_negation(vec) -> bool:
    for x in vec:
        if x != 0:
            return x < 0
    return False


def nl_member(
    lattice: PicardLattice,
    ell: DivisorClass,
    h_square: int,
    h_dot_ell: int,
    bound: int = 50,
) -> DivisorClass | None:
    """A class x with x^2 = h_square and x . ell = h_dot_ell, if one exists.

    Searches the coordinate box |coord| <= bound; rank-2 lattices are solved
    exactly along the solution line of the linear condition.
    """
    if bound < 1:
        raise LatticeError("bound must be >= 1")
    if lattice.rank == 2:
        found = _nl_rank2(lattice, ell, h_square, h_dot_ell, bound)
    else:
        found = []
        for coords in itertools.product(range(-bound, bound + 1), repeat=lattice.rank):
            x = DivisorClass(coords)
            if lattice.pair(x, ell) == h_dot_ell and lattice.square(x) == h_square:
                found.append(x)
    if not found:
        return None
    return min(found, key=lambda x: (max(abs(c) for c in x.coords), x.coords))


def _nl_rank2(lattice, ell, h_square, h_dot_ell, bound):
    a, b = lattice.gram_times(ell)
    if a == 0 and b == 0:
        if h_dot_ell != 0:
            return []
        return [
            DivisorClass(coords)
            for coords in itertools.product(range(-bound, bound + 1), repeat=2)
            if lattice.square(DivisorClass(coords)) == h_square
        ]
    g, xg, yg = xgcd(a, b)
    if h_dot_ell % g != 0:
        return []
    k = h_dot_ell // g
    x0 = DivisorClass([xg * k, yg * k])
    step = DivisorClass([-(b // g), a // g])
    # square(x0 + t step) = h_square: quadratic in t
    qa = lattice.square(step)
    qb = 2 * lattice.pair(x0, step)
    qc = lattice.square(x0) - h_square
    sols = []
    if qa != 0:
        disc = qb * qb - 4 * qa * qc
        if disc < 0:
            return []
        root = isqrt(disc)
        if root * root != disc:
            return []
        for signed in ((root,) if root == 0 else (root, -root)):
            num = -qb + signed
            if num % (2 * qa) == 0:
                sols.append(num // (2 * qa))
    elif qb != 0:
        if qc % qb == 0:
            sols.append(-qc // qb)
    elif qc == 0:
        # the whole line solves the quadratic; intersect it with the box
        window = _line_box_window(x0.coords, step.coords, bound)
        if window is None:
            return []
        sols.extend(range(window[0], window[1] + 1))
    return [
        x0 + t * step
        for t in sols
        if all(abs(c) <= bound for c in (x0 + t * step).coords)
    ]


def _ceil_div(p: int, q: int) -> int:
    return -((-p) // q)


def _line_box_window(base, step, bound):
    """Integer t-range with |base_i + t step_i| <= bound for all i, or None."""
    lo, hi = None, None
    for x0, st in zip(base, step):
        if st == 0:
            if abs(x0) > bound:
                return None
            continue
        # -bound <= x0 + t*st <= bound
        if st > 0:
            cand_lo = _ceil_div(-bound - x0, st)
            cand_hi = (bound - x0) // st
        else:
            cand_lo = _ceil_div(bound - x0, st)
            cand_hi = (-bound - x0) // st
        lo = cand_lo if lo is None else max(lo, cand_lo)
        hi = cand_hi if hi is None else min(hi, cand_hi)
    if lo is None or hi is None or lo > hi:
        return None
    return lo, hi


def represented_values(lattice: PicardLattice, value_cap: int, coord_box: int) -> frozenset[int]:
    """Squares of box vectors with |value| <= value_cap (isometry evidence)."""
    out = set()
    for coords in itertools.product(range(-coord_box, coord_box + 1), repeat=lattice.rank):
        if all(c == 0 for c in coords):
            continue
        q = lattice.square(DivisorClass(coords))
        if abs(q) <= value_cap:
            out.add(q)
    return frozenset(out)


def weakly_isometric(
    a: PicardLattice,
    b: PicardLattice,
    value_cap: int = 200,
    coord_box: int = 60,
) -> bool:
    """Determinant plus represented-value comparison.

    This is a sound refutation test and strong (but not complete) positive
    evidence; the caps make it deterministic.
    """
    if a.rank != b.rank:
        return False
    if a.determinant() != b.determinant():
        return False
    return represented_values(a, value_cap, coord_box) == represented_values(
        b, value_cap, coord_box
    )
