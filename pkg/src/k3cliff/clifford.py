"""Clifford-index minimisation over divisor classes on a K3 surface.

Given a rank-2 lattice with a curve class C and an auxiliary class H, the
search enumerates divisors D = mH + nC that satisfy a family-specific
numeric feasibility system, minimises Cliff(D) = D.C - D^2 - 2, and
concludes the Clifford index of C as the minimum of the search result and
the generic bound floor((g-1)/2).

Two built-in families carry exact feasibility systems expressed purely in
their parameters (``prop33`` in (p, a), ``thm41`` in (a, b)); custom
lattices fall back to a Riemann-Roch section-count proxy that is flagged in
the report, since its validity needs h^1 = 0 and the absence of
(-2)-curves.  Every report records the finite search box it certifies.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bn import generic_cliff
from .lattice import (
    DivisorClass,
    LatticeError,
    PicardLattice,
    int_jsonable,
    minus_two_classes,
    square_zero_classes,
)

KIND_PA = "prop33"
KIND_AB = "thm41"
KIND_CUSTOM = "custom"

MINUS_TWO_CERT_BOUND = 50


class FamilyError(LatticeError):
    """Raised for parameters outside a family's domain."""


@dataclass(frozen=True)
class SurfaceFamily:
    """A polarized K3 lattice with distinguished curve and auxiliary classes."""

    kind: str
    lattice: PicardLattice
    curve: DivisorClass
    aux: DivisorClass
    params: tuple[tuple[str, int], ...] = ()

    @property
    def params_dict(self) -> dict:
        return dict(self.params)

    @property
    def genus(self) -> int:
        c2 = self.lattice.square(self.curve)
        if c2 <= 0 or c2 % 2:
            raise FamilyError(f"curve square {c2} is not a positive even number")
        return c2 // 2 + 1

    @property
    def degree(self) -> int:
        """Pairing of the auxiliary class with the curve."""
        return self.lattice.pair(self.aux, self.curve)

    def divisor(self, m: int, n: int) -> DivisorClass:
        return m * self.aux + n * self.curve

    def expected_clifford(self) -> int | None:
        p = self.params_dict
        if self.kind == KIND_PA:
            return p["a"]
        if self.kind == KIND_AB:
            return p["a"] * p["b"] - 2
        return None


def prop33_family(p: int, a: int) -> SurfaceFamily:
    """H^2 = 4p+2, H.C = 2a+2p+1, C^2 = 4a; needs p >= 1 and a >= 2p+3."""
    if p < 1 or a < 2 * p + 3:
        raise FamilyError(f"need p >= 1 and a >= 2p+3, got p={p}, a={a}")
    d = 2 * a + 2 * p + 1
    lattice = PicardLattice([[4 * p + 2, d], [d, 4 * a]], ["H", "C"])
    return SurfaceFamily(
        kind=KIND_PA,
        lattice=lattice,
        curve=DivisorClass([0, 1]),
        aux=DivisorClass([1, 0]),
        params=(("p", p), ("a", a)),
    )


def thm41_family(a: int, b: int) -> SurfaceFamily:
    """H^2 = 6, H.C = 6a+b, C^2 = 2(3a^2+ab); needs a >= 3, b >= 1.

    The construction's own range is 4 <= b <= 6; other b are allowed here so
    the boundary behaviour can be probed, and only the verify driver treats
    b outside that window as an expected failure.
    """
    if a < 3 or b < 1:
        raise FamilyError(f"need a >= 3 and b >= 1, got a={a}, b={b}")
    d = 6 * a + b
    lattice = PicardLattice([[6, d], [d, 2 * (3 * a * a + a * b)]], ["H", "C"])
    return SurfaceFamily(
        kind=KIND_AB,
        lattice=lattice,
        curve=DivisorClass([0, 1]),
        aux=DivisorClass([1, 0]),
        params=(("a", a), ("b", b)),
    )


def custom_family(
    lattice: PicardLattice,
    curve: DivisorClass,
    aux: DivisorClass | None = None,
    g: int | None = None,
) -> SurfaceFamily:
    """Wrap an explicit lattice; the feasibility system is the RR proxy."""
    if lattice.rank != 2:
        raise FamilyError("custom families need a rank-2 lattice")
    if aux is None:
        unit_axes = {(1, 0): DivisorClass([0, 1]), (0, 1): DivisorClass([1, 0])}
        key = tuple(curve.coords)
        if key not in unit_axes:
            raise FamilyError("pass an auxiliary class when the curve is not a basis vector")
        aux = unit_axes[key]
    fam = SurfaceFamily(
        kind=KIND_CUSTOM, lattice=lattice, curve=curve, aux=aux, params=()
    )
    genus = fam.genus
    if g is not None and g != genus:
        raise FamilyError(f"declared genus {g} but the curve square gives {genus}")
    if fam.degree <= 0:
        raise FamilyError("the auxiliary class must pair positively with the curve")
    return fam


# ---------------------------------------------------------------------------
# feasibility systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Feasibility:
    """Per-condition flags for one candidate divisor.

    ``degree_ok``  : D.C <= g-1
    ``square_ok``  : the self-intersection condition of the family
    ``moving_ok``  : D.H > 2
    ``branch``     : 'positive' / 'isotropic' for the split systems, else ''
    """

    degree_ok: bool
    square_ok: bool
    moving_ok: bool
    branch: str = ""
    extra_ok: bool = True

    @property
    def ok(self) -> bool:
        return self.degree_ok and self.square_ok and self.moving_ok and self.extra_ok


def feasible_prop33(p: int, a: int, m: int, n: int) -> Feasibility:
    """System for the (p, a) family: D.C <= g-1, D^2 >= 0, D.H > 2."""
    if p < 1 or a < 2 * p + 3:
        raise FamilyError(f"need p >= 1 and a >= 2p+3, got p={p}, a={a}")
    d = 2 * a + 2 * p + 1
    gm1 = 2 * a
    return Feasibility(
        degree_ok=m * d + 2 * n * gm1 <= gm1,
        square_ok=(2 * p + 1) * m * m + m * n * d + n * n * gm1 >= 0,
        moving_ok=(4 * p + 2) * m + d * n > 2,
    )


def feasible_thm41(a: int, b: int, m: int, n: int) -> Feasibility:
    """System for the (a, b) family, split by the sign of D^2.

    D^2 factors as 2 (m + an)(3m + 3an + bn); the strictly positive branch
    uses the full three-condition system, isotropic divisors need only the
    degree and moving conditions, and negative squares are infeasible.
    """
    if a < 3:
        raise FamilyError(f"need a >= 3, got a={a}")
    d = 6 * a + b
    gm1 = 3 * a * a + a * b
    half_sq = (m + a * n) * (3 * m + 3 * a * n + b * n)
    degree_ok = d * m + (2 * n - 1) * gm1 <= 0
    moving_ok = 6 * m + d * n > 2
    if half_sq > 0:
        return Feasibility(degree_ok, True, moving_ok, branch="positive")
    if half_sq == 0:
        return Feasibility(degree_ok, True, moving_ok, branch="isotropic")
    return Feasibility(degree_ok, False, moving_ok, branch="")


def _feasible_custom(fam: SurfaceFamily, m: int, n: int) -> Feasibility:
    # RR proxy: an effective divisor with D^2 >= 0 gets h^0 = 2 + D^2/2,
    # so both section conditions reduce to sign conditions on squares.
    D = fam.divisor(m, n)
    resid = fam.curve - D
    lat = fam.lattice
    gm1 = fam.genus - 1
    return Feasibility(
        degree_ok=lat.pair(D, fam.curve) <= gm1,
        square_ok=lat.square(D) >= 0,
        moving_ok=lat.pair(D, fam.aux) > 2,
        extra_ok=lat.square(resid) >= 0,
    )


def family_feasibility(fam: SurfaceFamily, m: int, n: int) -> Feasibility:
    if fam.kind == KIND_PA:
        p = fam.params_dict
        return feasible_prop33(p["p"], p["a"], m, n)
    if fam.kind == KIND_AB:
        p = fam.params_dict
        return feasible_thm41(p["a"], p["b"], m, n)
    return _feasible_custom(fam, m, n)


def f_quadratic(a: int, b: int, m: int, n: int) -> int:
    """Closed form of D.C - D^2 on the (a, b) family."""
    d = 6 * a + b
    two_gm2 = 2 * (3 * a * a + a * b)
    return -6 * m * m + m * d * (1 - 2 * n) + (n - n * n) * two_gm2


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchBounds:
    """Finite certification box: n in [-n_max, n_max], |m| <= m_cap."""

    n_max: int = 50
    m_cap: int | None = None

    def resolve_m_cap(self, g: int) -> int:
        return self.m_cap if self.m_cap is not None else 10 * (g - 1)

    def to_dict(self, g: int) -> dict:
        return {"n_max": self.n_max, "m_cap": self.resolve_m_cap(g)}


@dataclass(frozen=True)
class GLCandidate:
    """One feasible divisor D = mH + nC with its Clifford data."""

    m: int
    n: int
    dot_curve: int
    self_int: int
    branch: str = ""

    @property
    def cliff(self) -> int:
        return self.dot_curve - self.self_int - 2

    def to_dict(self) -> dict:
        return {
            "m": int_jsonable(self.m),
            "n": int_jsonable(self.n),
            "dot_curve": int_jsonable(self.dot_curve),
            "self_int": int_jsonable(self.self_int),
            "cliff": int_jsonable(self.cliff),
            "branch": self.branch,
        }


@dataclass(frozen=True)
class IsotropicClassReport:
    cls: DivisorClass
    dot_curve: int
    satisfies_system: bool

    def to_dict(self) -> dict:
        return {
            "coords": [int_jsonable(c) for c in self.cls.coords],
            "dot_curve": int_jsonable(self.dot_curve),
            "satisfies_system": self.satisfies_system,
        }


@dataclass
class SearchReport:
    family: SurfaceFamily
    bounds: SearchBounds
    candidates: list[GLCandidate]
    min_cliff: int | None
    argmin: list[DivisorClass]
    generic_bound: int
    clifford_index: int
    expected: int | None
    verdict: bool | None
    isotropic_classes: list[IsotropicClassReport] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def gonality(self) -> int:
        return self.clifford_index + 2

    def to_dict(self) -> dict:
        fam = self.family
        return {
            "kind": fam.kind,
            "params": {k: v for k, v in fam.params},
            "lattice": fam.lattice.to_dict(),
            "curve": list(fam.curve.coords),
            "aux": list(fam.aux.coords),
            "genus": int_jsonable(fam.genus),
            "bounds": self.bounds.to_dict(fam.genus),
            "feasible_count": len(self.candidates),
            "candidates": [c.to_dict() for c in self.candidates],
            "min_cliff": None if self.min_cliff is None else int_jsonable(self.min_cliff),
            "argmin": [list(x.coords) for x in self.argmin],
            "generic_bound": int_jsonable(self.generic_bound),
            "clifford_index": int_jsonable(self.clifford_index),
            "gonality": int_jsonable(self.gonality),
            "expected": None if self.expected is None else int_jsonable(self.expected),
            "verdict": self.verdict,
            "isotropic_classes": [r.to_dict() for r in self.isotropic_classes],
            "notes": list(self.notes),
        }


def _row_m_range(fam: SurfaceFamily, n: int, m_cap: int) -> range:
    """The m-interval for one n, from the linear degree condition and the cap.

    The moving condition D.H > 2 is linear in m as well, so it prunes the
    interval further without changing the feasible set; when H^2 <= 0 it
    bounds m from above or not at all, and those cases fall back to the cap.
    """
    lat, g = fam.lattice, fam.genus
    d = fam.degree
    c_sq = lat.square(fam.curve)
    h_sq = lat.square(fam.aux)
    # degree condition: m*d <= (g-1) - n*C^2
    hi = ((g - 1) - n * c_sq) // d
    lo = -m_cap
    if h_sq > 0:
        # m > (2 - dn)/H^2: floor + 1 is the least strictly-greater integer
        lo = max(lo, (2 - d * n) // h_sq + 1)
    elif h_sq < 0:
        # dividing by H^2 < 0 flips: m < (2 - dn)/H^2
        num = 2 - d * n
        hi = min(hi, num // h_sq - 1 if num % h_sq == 0 else num // h_sq)
    else:
        if d * n <= 2:
            return range(0)
    hi = min(hi, m_cap)
    if lo > hi:
        return range(0)
    return range(lo, hi + 1)


def min_clifford(fam: SurfaceFamily, bounds: SearchBounds | None = None) -> SearchReport:
    """Enumerate feasible divisors in the box and minimise the Clifford value.

    Intersection numbers of candidates are always computed through the Gram
    matrix; the families' closed formulas are used only inside the
    feasibility predicates.
    """
    bounds = bounds or SearchBounds()
    if bounds.n_max < 0:
        raise FamilyError("n_max must be >= 0")
    lat = fam.lattice
    g = fam.genus
    m_cap = bounds.resolve_m_cap(g)
    candidates: list[GLCandidate] = []
    for n in range(-bounds.n_max, bounds.n_max + 1):
        for m in _row_m_range(fam, n, m_cap):
            flags = family_feasibility(fam, m, n)
            if not flags.ok:
                continue
            D = fam.divisor(m, n)
            candidates.append(
                GLCandidate(
                    m=m,
                    n=n,
                    dot_curve=lat.pair(D, fam.curve),
                    self_int=lat.square(D),
                    branch=flags.branch,
                )
            )
    candidates.sort(key=lambda c: (c.n, c.m))

    min_cliff: int | None = None
    argmin: list[DivisorClass] = []
    if candidates:
        min_cliff = min(c.cliff for c in candidates)
        argmin = [fam.divisor(c.m, c.n) for c in candidates if c.cliff == min_cliff]

    generic = generic_cliff(g)
    concluded = generic if min_cliff is None else min(min_cliff, generic)
    expected = fam.expected_clifford()
    verdict = None if expected is None else concluded == expected

    iso_reports = [
        IsotropicClassReport(
            cls=cls,
            dot_curve=lat.pair(cls, fam.curve),
            satisfies_system=_isotropic_in_system(fam, cls),
        )
        for cls in square_zero_classes(lat, MINUS_TWO_CERT_BOUND)
    ]

    notes = [
        f"search certified on the box n in [-{bounds.n_max}, {bounds.n_max}], |m| <= {m_cap}",
        f"isotropic classes classified up to coordinate bound {MINUS_TWO_CERT_BOUND}",
    ]
    if fam.kind == KIND_CUSTOM:
        notes.append("feasibility uses the Riemann-Roch section proxy (needs h^1 = 0)")
        if minus_two_classes(lat, MINUS_TWO_CERT_BOUND):
            notes.append(
                f"unverified feasibility: (-2)-classes exist within bound {MINUS_TWO_CERT_BOUND}, "
                "the section proxy may misclassify"
            )
    else:
        if not minus_two_classes(lat, MINUS_TWO_CERT_BOUND):
            notes.append(
                f"no (-2)-classes up to coordinate bound {MINUS_TWO_CERT_BOUND}"
            )

    return SearchReport(
        family=fam,
        bounds=bounds,
        candidates=candidates,
        min_cliff=min_cliff,
        argmin=argmin,
        generic_bound=generic,
        clifford_index=concluded,
        expected=expected,
        verdict=verdict,
        isotropic_classes=iso_reports,
        notes=notes,
    )


def _isotropic_in_system(fam: SurfaceFamily, cls: DivisorClass) -> bool:
    lat = fam.lattice
    return (
        lat.pair(cls, fam.curve) <= fam.genus - 1
        and lat.pair(cls, fam.aux) > 2
    )


def gonality(fam: SurfaceFamily, bounds: SearchBounds | None = None) -> int:
    """Concluded Clifford index plus two (Clifford dimension 1 assumed)."""
    return min_clifford(fam, bounds).gonality
