"""Brill-Noether and Clifford numerics for curves and bundles.

All rational quantities are exact ``Fraction``s; half- and third-integer
values occur routinely and are never rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def rho(g: int, r: int, d: int) -> int:
    """Brill-Noether number g - (r+1)(g - d + r)."""
    if g < 1 or r < 0:
        raise ValueError("need g >= 1 and r >= 0")
    return g - (r + 1) * (g - d + r)


def minimal_degree(g: int, r: int) -> int:
    """Least degree of an r-dimensional series with nonnegative rho."""
    if g < 2 or r < 1:
        raise ValueError("need g >= 2 and r >= 1")
    return r + (r * (g + 1)) // (r + 1)


def generic_cliff(g: int) -> int:
    """Clifford index of a general genus-g curve, floor((g-1)/2)."""
    if g < 2:
        raise ValueError("need g >= 2")
    return (g - 1) // 2


@dataclass(frozen=True)
class BundleNumerics:
    """Numerical shadow of a rank-n degree-d bundle with h0 sections."""

    n: int
    d: int
    h0: int
    g: int


@dataclass(frozen=True)
class GammaResult:
    value: Fraction
    slope_in_range: bool  # d <= n(g-1)
    enough_sections: bool  # h0 >= 2n

    @property
    def contributes(self) -> bool:
        return self.slope_in_range and self.enough_sections

    def to_dict(self) -> dict:
        return {
            "gamma": str(self.value),
            "slope_in_range": self.slope_in_range,
            "enough_sections": self.enough_sections,
            "contributes": self.contributes,
        }


def gamma(b: BundleNumerics) -> GammaResult:
    """Clifford invariant d/n - 2 h0/n + 2 with contribution flags.

    The flags record the side conditions for counting towards the rank-n
    Clifford index; out-of-range inputs are flagged, not rejected.
    """
    if b.n < 1:
        raise ValueError("rank must be positive")
    value = Fraction(b.d, b.n) - Fraction(2 * b.h0, b.n) + 2
    return GammaResult(
        value=value,
        slope_in_range=b.d <= b.n * (b.g - 1),
        enough_sections=b.h0 >= 2 * b.n,
    )


@dataclass(frozen=True)
class LMNumerics:
    """Derived numerology of the canonical-determinant bundle of rank r+1.

    Built from a minimal-degree series of dimension r on a genus-g curve;
    ``delta`` is the discriminant 6 c2 - 2 c1^2 of the elementary
    modification along the curve, and ``bogomolov_threshold`` the squared
    slope bound -delta/18 that drives the non-splitting argument (only
    validated for r <= 2).
    """

    g: int
    r: int
    d: int
    h0_bundle: int
    rank_bundle: int
    deg_bundle: int
    gamma_bundle: Fraction
    c1_sq: int
    c2: int
    delta: int
    bogomolov_threshold: Fraction
    generic_clifford: int
    mercat_violated: bool
    non_split_validated: bool
    genus_in_range: bool

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "r": self.r,
            "d": self.d,
            "h0": self.h0_bundle,
            "rank": self.rank_bundle,
            "degree": self.deg_bundle,
            "gamma": str(self.gamma_bundle),
            "c1_sq": self.c1_sq,
            "c2": self.c2,
            "delta": self.delta,
            "bogomolov_threshold": str(self.bogomolov_threshold),
            "generic_clifford": self.generic_clifford,
            "mercat_violated": self.mercat_violated,
            "non_split_validated": self.non_split_validated,
            "genus_in_range": self.genus_in_range,
        }


def lm_numerics(g: int, r: int) -> LMNumerics:
    """Numerics of the rank-(r+1) canonical-determinant bundle at minimal degree."""
    d = minimal_degree(g, r)
    h0 = g - d + 2 * r + 1
    rank = r + 1
    deg = 2 * g - 2
    gam = gamma(BundleNumerics(n=rank, d=deg, h0=h0, g=g)).value
    assert gam == Fraction(2 * d - 2 * r - 2, r + 1)
    c1_sq = 2 * g - 2
    c2 = 2 * d - 2 * g + 2
    delta = 4 * (3 * d - 4 * g + 4)
    return LMNumerics(
        g=g,
        r=r,
        d=d,
        h0_bundle=h0,
        rank_bundle=rank,
        deg_bundle=deg,
        gamma_bundle=gam,
        c1_sq=c1_sq,
        c2=c2,
        delta=delta,
        bogomolov_threshold=Fraction(-delta, 18),
        generic_clifford=generic_cliff(g),
        mercat_violated=gam < generic_cliff(g),
        non_split_validated=r <= 2,
        genus_in_range=g in (7, 9) or g >= 11,
    )


@dataclass(frozen=True)
class MercatVerdict:
    min_gamma: Fraction | None
    clifford: int
    violations: tuple[int, ...]  # indices of entries with gamma < clifford

    @property
    def holds(self) -> bool:
        return not self.violations

    @property
    def gap(self) -> Fraction | None:
        if self.min_gamma is None or self.min_gamma >= self.clifford:
            return None
        return self.clifford - self.min_gamma

    def to_dict(self) -> dict:
        return {
            "min_gamma": None if self.min_gamma is None else str(self.min_gamma),
            "clifford": self.clifford,
            "violations": list(self.violations),
            "holds": self.holds,
            "gap": None if self.gap is None else str(self.gap),
        }


def mercat_compare(gammas, clifford: int) -> MercatVerdict:
    """Compare bundle Clifford invariants against the curve's index."""
    values = [Fraction(x) for x in gammas]
    violations = tuple(i for i, v in enumerate(values) if v < clifford)
    return MercatVerdict(
        min_gamma=min(values) if values else None,
        clifford=clifford,
        violations=violations,
    )
