"""Integer intersection arithmetic on a fixed-basis Picard lattice.

A lattice is a symmetric integer Gram matrix together with basis labels;
divisor classes are integer coordinate vectors in that basis.  All values
are arbitrary-precision Python ints, so quadratically growing genera and
degrees never overflow.

The class searches (square-zero, (-2), or any prescribed square) return one
representative per +-pair, normalised so that the representative pairs
positively with a reference class (the basis vector labelled ``C`` when one
exists, otherwise the first basis vector); ties fall back to the
lexicographically larger coordinate vector.  Effectiveness of the returned
classes is *not* decided here; callers apply their own numeric criteria.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import gcd, isqrt

from .linalg import det_int, vec_gcd


class LatticeError(ValueError):
    """Raised for malformed lattices, classes, or incompatible ranks."""


def _as_int(value) -> int:
    # JSON files may carry big integers as decimal strings
    if isinstance(value, bool):
        raise LatticeError(f"expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            raise LatticeError(f"expected an integer, got {value!r}") from None
    raise LatticeError(f"expected an integer, got {value!r}")


def int_jsonable(value: int):
    """Ints round-trip as JSON numbers while exact in double precision."""
    return value if abs(value) < 2**53 else str(value)


@dataclass(frozen=True)
class DivisorClass:
    """Integer coordinate vector of a divisor class in the lattice basis."""

    coords: tuple[int, ...]

    def __init__(self, coords):
        object.__setattr__(self, "coords", tuple(_as_int(c) for c in coords))

    @classmethod
    def parse(cls, text: str) -> "DivisorClass":
        try:
            return cls(int(part) for part in text.split(","))
        except ValueError:
            raise LatticeError(f"cannot parse divisor class from {text!r}") from None

    def __len__(self) -> int:
        return len(self.coords)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(a + b for a, b in zip(self.coords, other.coords, strict=True))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(a - b for a, b in zip(self.coords, other.coords, strict=True))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-a for a in self.coords)

    def __rmul__(self, k: int) -> "DivisorClass":
        return DivisorClass(k * a for a in self.coords)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    @property
    def content(self) -> int:
        return vec_gcd(self.coords)

    @property
    def is_primitive(self) -> bool:
        # the zero vector counts as non-primitive
        return self.content == 1

    def describe(self, basis: tuple[str, ...]) -> str:
        """Human form like ``14H - 3C``."""
        parts = []
        for c, name in zip(self.coords, basis):
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            if not parts:
                sign = "-" if c < 0 else ""
                parts.append(f"{sign}{mag}{name}")
            else:
                sign = "-" if c < 0 else "+"
                parts.append(f" {sign} {mag}{name}")
        return "".join(parts) if parts else "0"


@dataclass(frozen=True)
class PicardLattice:
    """Symmetric integer Gram matrix with named basis vectors."""

    gram: tuple[tuple[int, ...], ...]
    basis: tuple[str, ...]

    def __init__(self, gram, basis=None):
        rows = tuple(tuple(_as_int(x) for x in row) for row in gram)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise LatticeError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise LatticeError("Gram matrix must be symmetric")
        if basis is None:
            basis = tuple(f"e{i + 1}" for i in range(n))
        labels = tuple(str(b) for b in basis)
        if len(labels) != n:
            raise LatticeError("basis labels must match the rank")
        object.__setattr__(self, "gram", rows)
        object.__setattr__(self, "basis", labels)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def basis_class(self, label: str) -> DivisorClass:
        idx = self.basis.index(label)
        return DivisorClass(1 if i == idx else 0 for i in range(self.rank))

    def reference_class(self) -> DivisorClass:
        """Class used to orient +-pairs; ``C`` when labelled, else e1."""
        idx = self.basis.index("C") if "C" in self.basis else 0
        return DivisorClass(1 if i == idx else 0 for i in range(self.rank))

    def _check(self, x: DivisorClass) -> None:
        if len(x.coords) != self.rank:
            raise LatticeError(
                f"class of length {len(x.coords)} in a rank-{self.rank} lattice"
            )

    def gram_times(self, x: DivisorClass) -> tuple[int, ...]:
        self._check(x)
        return tuple(sum(g * c for g, c in zip(row, x.coords)) for row in self.gram)

    def pair(self, x: DivisorClass, y: DivisorClass) -> int:
        """Intersection number x . y  (x^T G y)."""
        self._check(x)
        self._check(y)
        return sum(gx * c for gx, c in zip(self.gram_times(x), y.coords))

    def square(self, x: DivisorClass) -> int:
        return self.pair(x, x)

    def determinant(self) -> int:
        return det_int([list(row) for row in self.gram])

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "basis": list(self.basis),
            "gram": [[int_jsonable(x) for x in row] for row in self.gram],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PicardLattice":
        if not isinstance(data, dict) or "gram" not in data:
            raise LatticeError("lattice JSON must be an object with a 'gram' field")
        lat = cls(data["gram"], data.get("basis"))
        if "rank" in data and _as_int(data["rank"]) != lat.rank:
            raise LatticeError("declared rank does not match the Gram matrix")
        return lat

    @classmethod
    def load(cls, path: str) -> "PicardLattice":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise LatticeError(f"{path}: invalid JSON ({exc})") from None
        return cls.from_dict(data)


def pair(lattice: PicardLattice, x: DivisorClass, y: DivisorClass) -> int:
    return lattice.pair(x, y)


def square(lattice: PicardLattice, x: DivisorClass) -> int:
    return lattice.square(x)


def canonical_sign(
    lattice: PicardLattice, x: DivisorClass, ref: DivisorClass | None = None
) -> DivisorClass:
    """Pick the representative of {x, -x} oriented by the reference class."""
    if ref is None:
        ref = lattice.reference_class()
    p = lattice.pair(x, ref)
    if p > 0:
        return x
    if p < 0:
        return -x
    return x if x.coords >= (-x).coords else -x


def _rank2_square_solutions(lattice: PicardLattice, value: int, bound: int):
    """Primitive rank-2 solutions of x^T G x = value inside the coordinate box.

    Solves the per-coordinate quadratic exactly (integer square root of the
    discriminant) instead of scanning the box, so large bounds stay cheap.
    """
    (a, b), (_, c) = lattice.gram
    found = set()

    def emit(m, n):
        if abs(m) > bound or abs(n) > bound or (m == 0 and n == 0):
            return
        if gcd(m, n) == 1:
            found.add((m, n))

    if a != 0 or c != 0:
        # solve for the coordinate whose diagonal entry is nonzero
        swap = a == 0
        aa, cc = (c, a) if swap else (a, c)
        for t in range(-bound, bound + 1):
            # aa u^2 + 2b t u + (cc t^2 - value) = 0
            disc = (2 * b * t) ** 2 - 4 * aa * (cc * t * t - value)
            if disc < 0:
                continue
            root = isqrt(disc)
            if root * root != disc:
                continue
            for signed in ((root,) if root == 0 else (root, -root)):
                num = -2 * b * t + signed
                if num % (2 * aa) == 0:
                    u = num // (2 * aa)
                    if swap:
                        emit(t, u)
                    else:
                        emit(u, t)
    elif b == 0:
        if value == 0:
            # zero form: every primitive vector qualifies
            for m, n in itertools.product(range(-bound, bound + 1), repeat=2):
                emit(m, n)
    elif value == 0:
        # Gram = [[0, b], [b, 0]]: 2 b m n = 0 forces m = 0 or n = 0
        emit(1, 0)
        emit(0, 1)
    else:
        q, r = divmod(value, 2 * b)
        if r == 0:
            for m in range(-bound, bound + 1):
                if m != 0 and q % m == 0:
                    emit(m, q // m)
    return found


def classes_with_square(
    lattice: PicardLattice,
    value: int,
    bound: int,
    ref: DivisorClass | None = None,
) -> list[DivisorClass]:
    """All primitive classes with prescribed self-intersection, up to sign.

    Coordinates are restricted to the box |coord| <= bound; one canonical
    representative per +-pair is returned, sorted by coordinates.
    """
    if bound < 1:
        raise LatticeError("bound must be >= 1")
    if lattice.rank == 2:
        raw = _rank2_square_solutions(lattice, value, bound)
        classes = {canonical_sign(lattice, DivisorClass(v), ref) for v in raw}
    else:
        classes = set()
        for coords in itertools.product(range(-bound, bound + 1), repeat=lattice.rank):
            x = DivisorClass(coords)
            if x.is_zero or not x.is_primitive:
                continue
            if lattice.square(x) == value:
                classes.add(canonical_sign(lattice, x, ref))
    return sorted(classes, key=lambda x: x.coords)


def square_zero_classes(
    lattice: PicardLattice, bound: int, ref: DivisorClass | None = None
) -> list[DivisorClass]:
    """Primitive isotropic classes in the box, up to sign."""
    return classes_with_square(lattice, 0, bound, ref)


def minus_two_classes(
    lattice: PicardLattice, bound: int, ref: DivisorClass | None = None
) -> list[DivisorClass]:
    """Primitive classes of square -2 in the box, up to sign."""
    return classes_with_square(lattice, -2, bound, ref)
