"""Exact linear algebra for Koszul-type wedge complexes.

Spaces and coordinates
----------------------
Fix a degree-one space V of dimension ``section_dim`` and graded pieces
M_q of dimensions ``pieces[q]``.  The multiplication V x M_q -> M_{q+1} is
a matrix of shape pieces[q+1] x (section_dim * pieces[q]) over exact
rationals, acting on the tensor coordinate (i, j) -> i * pieces[q] + j.

Wedge coordinates on the k-th exterior power of an n-space are the
strictly increasing 1-based index tuples in lexicographic order
(``wedge_basis``).  The differential

    d: wedge^p V (x) M_q  ->  wedge^{p-1} V (x) M_{q+1}

contracts the wedge factor with alternating signs,

    d(v_{t_1} ^ ... ^ v_{t_p} (x) f)
        = sum_j (-1)^{j-1} v_{t_1} ^ ... (drop t_j) ... ^ v_{t_p} (x) v_{t_j} f,

which composes to zero exactly when multiplications by two degree-one
elements commute.  Cohomology dimensions, the syzygy tensor of a rank-2
section family, and a representation-based syzygy rank bound are built on
top of this.  Everything is exact: no floats, ranks never wobble.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .linalg import rat_rank, rat_solve


class KoszulError(ValueError):
    """Raised for malformed graded data or tensors."""


class MissingDegreeError(KoszulError):
    """A needed graded piece or multiplication table is absent."""

    def __init__(self, degree: int, what: str):
        self.degree = degree
        super().__init__(f"missing {what} in degree q={degree}")


def wedge_basis(k: int, n: int) -> list[tuple[int, ...]]:
    """Strictly increasing 1-based k-tuples from {1..n}, lex ordered.

    Out-of-range k gives the empty list (a zero-dimensional wedge power).
    """
    if k < 0 or k > n:
        return []
    return [tuple(c) for c in combinations(range(1, n + 1), k)]


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise KoszulError(f"cannot parse rational entry {value!r}") from None
    raise KoszulError(f"cannot parse rational entry {value!r}")


def _fraction_jsonable(f: Fraction):
    return int(f) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


class GradedRingData:
    """Dimensions and multiplication tables of a graded module over V."""

    def __init__(self, section_dim: int, pieces: dict, mult: dict):
        if section_dim < 0:
            raise KoszulError("section_dim must be >= 0")
        self.section_dim = section_dim
        self.pieces = {int(q): int(d) for q, d in pieces.items()}
        for q, d in self.pieces.items():
            if d < 0:
                raise KoszulError(f"piece dimension at q={q} must be >= 0")
        self.mult = {}
        for q, table in mult.items():
            q = int(q)
            rows = [[_to_fraction(x) for x in row] for row in table]
            want_rows = self.piece(q + 1)
            want_cols = section_dim * self.piece(q)
            if want_rows == 0 or want_cols == 0:
                # degenerate tables may be written as [] or as empty rows
                if any(rows_entry for rows_entry in rows):
                    raise KoszulError(
                        f"multiplication table at q={q} must be "
                        f"{want_rows} x {want_cols}"
                    )
                rows = [[] for _ in range(want_rows)]
            elif len(rows) != want_rows or any(len(r) != want_cols for r in rows):
                raise KoszulError(
                    f"multiplication table at q={q} must be "
                    f"{want_rows} x {want_cols}"
                )
            self.mult[q] = rows

    def piece(self, q: int) -> int:
        if q not in self.pieces:
            raise MissingDegreeError(q, "piece dimension")
        return self.pieces[q]

    def mult_table(self, q: int):
        if q not in self.mult:
            raise MissingDegreeError(q, "multiplication table")
        return self.mult[q]

    def multiply(self, q: int, i: int, vec) -> list[Fraction]:
        """Product of the i-th basis vector of V (0-based) with vec in M_q."""
        table = self.mult_table(q)
        dim_q = self.piece(q)
        out = [Fraction(0)] * self.piece(q + 1)
        base = i * dim_q
        for j, x in enumerate(vec):
            if x:
                col = base + j
                for r, row in enumerate(table):
                    if row[col]:
                        out[r] += x * row[col]
        return out

    def check_commuting(self) -> None:
        """Verify v_i (v_j f) = v_j (v_i f) for all listed consecutive degrees.

        This is the associativity surrogate the differential needs; it is
        exactly the condition d o d = 0.
        """
        for q in sorted(self.mult):
            if q + 1 not in self.mult:
                continue
            dim_q = self.piece(q)
            for i in range(self.section_dim):
                for j in range(i + 1, self.section_dim):
                    for a in range(dim_q):
                        f = [Fraction(0)] * dim_q
                        f[a] = Fraction(1)
                        ij = self.multiply(q + 1, i, self.multiply(q, j, f))
                        ji = self.multiply(q + 1, j, self.multiply(q, i, f))
                        if ij != ji:
                            raise KoszulError(
                                f"multiplications by v_{i + 1} and v_{j + 1} do not "
                                f"commute on M_{q} (basis vector {a + 1})"
                            )

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "nL": self.section_dim,
            "pieces": {str(q): d for q, d in sorted(self.pieces.items())},
            "mult": {
                str(q): [[_fraction_jsonable(x) for x in row] for row in rows]
                for q, rows in sorted(self.mult.items())
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GradedRingData":
        try:
            return cls(int(data["nL"]), data["pieces"], data.get("mult", {}))
        except KeyError as exc:
            raise KoszulError(f"ring JSON is missing the {exc} field") from None

    @classmethod
    def load(cls, path: str) -> "GradedRingData":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise KoszulError(f"{path}: invalid JSON ({exc})") from None
        return cls.from_dict(data)


@dataclass
class RatMatrix:
    """Dense rational matrix with an explicit shape (rows may be empty)."""

    rows: list
    nrows: int
    ncols: int

    def rank(self) -> int:
        if self.nrows == 0 or self.ncols == 0:
            return 0
        return rat_rank(self.rows)

    def is_zero(self) -> bool:
        return all(not any(row) for row in self.rows)

    def compose(self, other: "RatMatrix") -> "RatMatrix":
        """self @ other."""
        if self.ncols != other.nrows:
            raise KoszulError("shape mismatch in composition")
        out = [[Fraction(0)] * other.ncols for _ in range(self.nrows)]
        for i in range(self.nrows):
            row = self.rows[i]
            for t in range(self.ncols):
                a = row[t]
                if a:
                    orow = other.rows[t]
                    for j in range(other.ncols):
                        if orow[j]:
                            out[i][j] += a * orow[j]
        return RatMatrix(out, self.nrows, other.ncols)


def differential(p: int, q: int, ring: GradedRingData) -> RatMatrix:
    """Matrix of d: wedge^p V (x) M_q -> wedge^{p-1} V (x) M_{q+1}.

    Coordinates follow ``wedge_basis`` on the wedge factor and the tensor
    convention (T, a) -> index(T) * piece + a.  Degenerate wedge powers give
    matrices with zero rows or columns of the correct complementary shape.
    """
    n = ring.section_dim
    src_wedge = wedge_basis(p, n)
    dst_wedge = wedge_basis(p - 1, n)
    src_piece = ring.piece(q) if src_wedge else 0
    dst_piece = ring.piece(q + 1) if dst_wedge else 0
    ncols = len(src_wedge) * src_piece
    nrows = len(dst_wedge) * dst_piece
    if nrows == 0 or ncols == 0:
        return RatMatrix([[] for _ in range(nrows)], nrows, ncols)
    table = ring.mult_table(q)
    dst_index = {T: k for k, T in enumerate(dst_wedge)}
    out = [[Fraction(0)] * ncols for _ in range(nrows)]
    for t_idx, T in enumerate(src_wedge):
        for j, tj in enumerate(T):
            sign = -1 if j % 2 else 1
            T_rest = T[:j] + T[j + 1 :]
            r_idx = dst_index[T_rest]
            base_col_in_mult = (tj - 1) * src_piece
            for a in range(src_piece):
                col = t_idx * src_piece + a
                mcol = base_col_in_mult + a
                for b in range(dst_piece):
                    val = table[b][mcol]
                    if val:
                        out[r_idx * dst_piece + b][col] += sign * val
    return RatMatrix(out, nrows, ncols)


def koszul_dim(p: int, q: int, ring: GradedRingData) -> int:
    """dim of the middle cohomology at (p, q): ker d_{p,q} / im d_{p+1,q-1}."""
    n = ring.section_dim
    if p < 0 or p > n:
        return 0
    src_dim = comb(n, p) * (ring.piece(q) if comb(n, p) else 0)
    out_rank = differential(p, q, ring).rank()
    in_rank = differential(p + 1, q - 1, ring).rank()
    value = src_dim - out_rank - in_rank
    if value < 0:
        raise KoszulError(
            "negative cohomology dimension: the multiplication tables do not "
            "commute (d o d != 0)"
        )
    return value


# ---------------------------------------------------------------------------
# syzygy tensors of rank-2 section families
# ---------------------------------------------------------------------------


@dataclass
class SyzygyTensor:
    """Element of wedge^p W (x) V with a distinguished basis of W inside V.

    ``w_basis`` lists the V-coordinates of the spanning vectors of W;
    ``coords`` holds one V-vector per element of wedge_basis(p, w_dim).
    """

    p: int
    w_basis: list
    coords: list
    section_dim: int

    @property
    def w_dim(self) -> int:
        return len(self.w_basis)

    def is_zero(self) -> bool:
        return all(not any(vec) for vec in self.coords)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "w_dim": self.w_dim,
            "section_dim": self.section_dim,
            "w_basis": [[_fraction_jsonable(x) for x in row] for row in self.w_basis],
            "wedge_index": [list(T) for T in wedge_basis(self.p, self.w_dim)],
            "coords": [[_fraction_jsonable(x) for x in vec] for vec in self.coords],
        }


def _pair_order(k: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]


def zeta_tensor(lambda_rows) -> SyzygyTensor:
    """Syzygy tensor of a rank-2 determinant family.

    ``lambda_rows`` lists the V-coordinates of the pair products
    lambda(e_i ^ e_j) for 1 <= i < j <= p+3 in lexicographic pair order.
    Rows (1, j) span the subspace W and must be linearly independent; the
    tensor is

        sum_{2 <= i < j} (-1)^{i+j} s_2 ^ .. (drop s_i, s_j) .. ^ s_{p+3}
                         (x) lambda(e_i ^ e_j)

    expressed in the wedge coordinates of W.
    """
    rows = [[_to_fraction(x) for x in row] for row in lambda_rows]
    if not rows:
        raise KoszulError("empty coefficient matrix")
    npairs = len(rows)
    # npairs = k(k-1)/2 for k = p+3
    k = int((1 + (1 + 8 * npairs) ** 0.5) / 2 + 0.5)
    if k * (k - 1) // 2 != npairs or k < 4:
        raise KoszulError(
            f"{npairs} rows is not a full pair matrix for p+3 >= 4 sections"
        )
    p = k - 3
    section_dim = len(rows[0])
    if any(len(r) != section_dim for r in rows):
        raise KoszulError("ragged coefficient matrix")
    index = {pair: t for t, pair in enumerate(_pair_order(k))}
    w_basis = [rows[index[(1, j)]] for j in range(2, k + 1)]  # s_2 .. s_{p+3}
    if rat_rank(w_basis) != k - 1:
        raise KoszulError(
            "the vectors lambda(e_1 ^ e_j) are linearly dependent; "
            "the construction needs them independent"
        )
    basis = wedge_basis(p, k - 1)
    pos = {T: t for t, T in enumerate(basis)}
    coords = [[Fraction(0)] * section_dim for _ in basis]
    for i in range(2, k + 1):
        for j in range(i + 1, k + 1):
            lam = rows[index[(i, j)]]
            if not any(lam):
                continue
            # w-indices run 1..p+2 with s_t at w-index t-1
            T = tuple(t for t in range(1, k) if t not in (i - 1, j - 1))
            sign = -1 if (i + j) % 2 else 1
            vec = coords[pos[T]]
            for c, x in enumerate(lam):
                if x:
                    vec[c] += sign * x
    return SyzygyTensor(p=p, w_basis=w_basis, coords=coords, section_dim=section_dim)


def tensor_boundary(tensor: SyzygyTensor, product, product_dim: int):
    """Apply the contraction differential to a tensor, staying inside W.

    ``product`` multiplies two V-coordinate vectors into a space of
    dimension ``product_dim``.  Returns one product-space vector per element
    of wedge_basis(p-1, w_dim).
    """
    basis_out = wedge_basis(tensor.p - 1, tensor.w_dim)
    pos = {T: t for t, T in enumerate(basis_out)}
    out = [[Fraction(0)] * product_dim for _ in basis_out]
    for T, vec in zip(wedge_basis(tensor.p, tensor.w_dim), tensor.coords):
        if not any(vec):
            continue
        for j, tj in enumerate(T):
            sign = -1 if j % 2 else 1
            prod = product(tensor.w_basis[tj - 1], vec)
            target = out[pos[T[:j] + T[j + 1 :]]]
            for c, x in enumerate(prod):
                if x:
                    target[c] += sign * x
    return out


def is_cocycle(tensor: SyzygyTensor, product, product_dim: int) -> bool:
    return all(not any(vec) for vec in tensor_boundary(tensor, product, product_dim))


def _minor(rows, col_tuple) -> Fraction:
    """Determinant of the square submatrix on 1-based columns col_tuple."""
    k = len(col_tuple)
    sub = [[rows[i][c - 1] for c in col_tuple] for i in range(k)]
    # plain expansion-free Gaussian elimination over Fractions
    det = Fraction(1)
    for c in range(k):
        piv = None
        for r in range(c, k):
            if sub[r][c]:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != c:
            sub[c], sub[piv] = sub[piv], sub[c]
            det = -det
        det *= sub[c][c]
        inv = 1 / sub[c][c]
        for r in range(c + 1, k):
            if sub[r][c]:
                factor = sub[r][c] * inv
                sub[r] = [x - factor * y for x, y in zip(sub[r], sub[c])]
    return det


def _embed_wedge_tensor(p, n, w_rows, coeffs):
    """Coordinates in wedge^p V (x) V of sum_T (w_T wedge) (x) coeff_T."""
    big = wedge_basis(p, n)
    pos = {S: s for s, S in enumerate(big)}
    out = [Fraction(0)] * (len(big) * n)
    for T, vec in coeffs:
        rows = [w_rows[t - 1] for t in T]
        if not any(any(r) for r in rows):
            continue
        for S in big:
            m = _minor(rows, S)
            if m:
                base = pos[S] * n
                for c, x in enumerate(vec):
                    if x:
                        out[base + c] += m * x
    return out


def syzygy_rank_bound(tensor: SyzygyTensor) -> int:
    """Greedy upper bound for the syzygy rank of the class of the tensor.

    Drops spanning vectors of W one at a time and keeps a drop whenever the
    tensor stays representable in the smaller wedge modulo the image of the
    top contraction wedge^{p+1} V -> wedge^p V (x) V.  The result never
    exceeds w_dim; it is an upper bound, not a claimed minimum, since only
    coordinate subspaces of the given spanning set are explored.
    """
    if tensor.is_zero():
        return 0
    p, n = tensor.p, tensor.section_dim
    big = wedge_basis(p, n)
    pos = {S: s for s, S in enumerate(big)}
    total = len(big) * n
    target = _embed_wedge_tensor(
        p, n, tensor.w_basis, list(zip(wedge_basis(p, tensor.w_dim), tensor.coords))
    )

    image_cols = []
    for U in wedge_basis(p + 1, n):
        col = [Fraction(0)] * total
        for j, uj in enumerate(U):
            sign = -1 if j % 2 else 1
            rest = U[:j] + U[j + 1 :]
            col[pos[rest] * n + (uj - 1)] += sign
        image_cols.append(col)

    def representable(indices) -> bool:
        cols = list(image_cols)
        for T in combinations(indices, p):
            rows = [tensor.w_basis[t] for t in T]
            for c in range(n):
                unit = [Fraction(0)] * n
                unit[c] = Fraction(1)
                cols.append(
                    _embed_wedge_tensor(p, n, rows, [(tuple(range(1, p + 1)), unit)])
                )
        if not cols:
            return not any(target)
        matrix = [[col[r] for col in cols] for r in range(total)]
        return rat_solve(matrix, target) is not None

    current = list(range(tensor.w_dim))
    improved = True
    while improved:
        improved = False
        for k in list(current):
            trial = [i for i in current if i != k]
            if representable(trial):
                current = trial
                improved = True
                break
    return len(current)


# ---------------------------------------------------------------------------
# polynomial model rings (exact multiplication tables for tests and demos)
# ---------------------------------------------------------------------------


def _monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    if degree < 0:
        return []
    if nvars == 1:
        return [(degree,)]
    out = []
    for head in range(degree, -1, -1):
        for tail in _monomials(nvars - 1, degree - head):
            out.append((head,) + tail)
    return out


def projective_ring_data(
    nvars: int, l_degree: int, f_degree: int, q_min: int, q_max: int
) -> GradedRingData:
    """Multiplication tables of homogeneous polynomials in ``nvars`` variables.

    V is the degree-``l_degree`` part; M_q the degree-(f_degree + q l_degree)
    part.  These tables are honestly associative, so they satisfy the
    commuting condition by construction.
    """
    if nvars < 1 or l_degree < 1:
        raise KoszulError("need nvars >= 1 and l_degree >= 1")
    v_mons = _monomials(nvars, l_degree)
    pieces = {}
    mons = {}
    for q in range(q_min, q_max + 1):
        mq = _monomials(nvars, f_degree + q * l_degree)
        mons[q] = mq
        pieces[q] = len(mq)
    mult = {}
    for q in range(q_min, q_max):
        src = mons[q]
        dst = {mon: r for r, mon in enumerate(mons[q + 1])}
        rows = [[Fraction(0)] * (len(v_mons) * len(src)) for _ in dst]
        for i, vm in enumerate(v_mons):
            for j, sm in enumerate(src):
                prod = tuple(a + b for a, b in zip(vm, sm))
                rows[dst[prod]][i * len(src) + j] = Fraction(1)
        mult[q] = rows
    return GradedRingData(len(v_mons), pieces, mult)
