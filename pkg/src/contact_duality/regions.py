"""Regions of the rational line: finite unions of closed intervals.

A region is a sorted tuple of pairwise disjoint, non-touching, nondegenerate
closed intervals; endpoints are exact rationals, with the two infinities as
open ends of rays.  The normal form makes equality of regions literal tuple
equality, exactly the property floating point would destroy: whether two
regions merely touch or genuinely overlap is the whole point of the contact
relation.

These regions are the regular closed sets of the line that the calculator can
represent: join is union, meet drops degenerate touching points, complement
closes up the gaps.  Boundedness (no infinite endpoint) is the ideal of the
local contact structure this algebra models; it is the one place in the
package where a proper ideal satisfies all the boundedness axioms, so the
morphism axioms about ideals are exercised non-vacuously here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import Refusal, StructureError

NEG_INF = -math.inf
POS_INF = math.inf

Endpoint = object  # Fraction, or one of the two infinities


def _check_endpoint(value) -> Endpoint:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if value == NEG_INF or value == POS_INF:
        return value
    raise StructureError(f"endpoint must be a rational or an infinity, got {value!r}")


def parse_endpoint(text: str) -> Endpoint:
    text = text.strip()
    if text in ("-inf", "-infinity"):
        return NEG_INF
    if text in ("inf", "+inf", "infinity", "+infinity"):
        return POS_INF
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise StructureError(f"bad rational endpoint {text!r}") from exc


def endpoint_text(value: Endpoint) -> str:
    if value == NEG_INF:
        return "-inf"
    if value == POS_INF:
        return "inf"
    return str(value)


@dataclass(frozen=True)
class RationalRegion:
    intervals: tuple[tuple[Endpoint, Endpoint], ...]

    def __post_init__(self):
        previous_hi = None
        for lo, hi in self.intervals:
            _check_endpoint(lo)
            _check_endpoint(hi)
            if not lo < hi:
                raise StructureError(f"degenerate or reversed interval [{lo}, {hi}]")
            if previous_hi is not None and not previous_hi < lo:
                raise StructureError("intervals must be sorted, disjoint and non-touching")
            previous_hi = hi

    # construction ---------------------------------------------------------

    @staticmethod
    def empty() -> "RationalRegion":
        return RationalRegion(())

    @staticmethod
    def whole_line() -> "RationalRegion":
        return RationalRegion(((NEG_INF, POS_INF),))

    @staticmethod
    def of(*pairs) -> "RationalRegion":
        """Normalize arbitrary interval pairs: sort, merge touching, drop none.

        Degenerate input intervals are rejected; merging only collapses
        intervals that meet or touch.
        """
        cleaned = []
        for lo, hi in pairs:
            lo, hi = _check_endpoint(lo), _check_endpoint(hi)
            if not lo < hi:
                raise StructureError(f"degenerate or reversed interval [{lo}, {hi}]")
            cleaned.append((lo, hi))
        return _merged(cleaned)

    @staticmethod
    def from_text(text: str) -> "RationalRegion":
        """Parse the calculator syntax: "empty" or intervals joined by "u"."""
        body = text.strip()
        if body in ("empty", ""):
            return RationalRegion.empty()
        pairs = []
        for chunk in body.split("u"):
            chunk = chunk.strip()
            if not (chunk.startswith("[") and chunk.endswith("]")):
                raise StructureError(f"expected an interval like [a,b], got {chunk!r}")
            inner = chunk[1:-1].split(",")
            if len(inner) != 2:
                raise StructureError(f"expected two endpoints in {chunk!r}")
            pairs.append((parse_endpoint(inner[0]), parse_endpoint(inner[1])))
        return RationalRegion.of(*pairs)

    def to_text(self) -> str:
        if not self.intervals:
            return "empty"
        return " u ".join(f"[{endpoint_text(lo)},{endpoint_text(hi)}]"
                          for lo, hi in self.intervals)

    # structure ------------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def is_bounded(self) -> bool:
        return all(lo != NEG_INF and hi != POS_INF for lo, hi in self.intervals)

    # Boolean operations ---------------------------------------------------

    def join(self, other: "RationalRegion") -> "RationalRegion":
        return _merged(list(self.intervals) + list(other.intervals))

    def meet(self, other: "RationalRegion") -> "RationalRegion":
        """Regularized intersection: single touching points vanish."""
        pairs = []
        for alo, ahi in self.intervals:
            for blo, bhi in other.intervals:
                lo = max(alo, blo)
                hi = min(ahi, bhi)
                if lo < hi:
                    pairs.append((lo, hi))
        return _merged(pairs)

    def complement(self) -> "RationalRegion":
        """Closure of the set complement: gaps get their endpoints back."""
        if not self.intervals:
            return RationalRegion.whole_line()
        pairs = []
        cursor = NEG_INF
        for lo, hi in self.intervals:
            if cursor < lo:
                pairs.append((cursor, lo))
            cursor = hi
        if cursor < POS_INF:
            pairs.append((cursor, POS_INF))
        return _merged(pairs)

    def le(self, other: "RationalRegion") -> bool:
        """Containment as point sets; the lattice order of the region algebra."""
        return all(
            any(blo <= alo and ahi <= bhi for blo, bhi in other.intervals)
            for alo, ahi in self.intervals
        )

    def __or__(self, other):
        return self.join(other)

    def __and__(self, other):
        return self.meet(other)

    def __invert__(self):
        return self.complement()

    def __le__(self, other):
        return self.le(other)

    # contact --------------------------------------------------------------

    def touches(self, other: "RationalRegion") -> bool:
        """Nonempty intersection as point sets; shared endpoints count."""
        return any(
            max(alo, blo) <= min(ahi, bhi)
            for alo, ahi in self.intervals
            for blo, bhi in other.intervals
        )

    def well_inside(self, other: "RationalRegion") -> bool:
        """Every interval sits in the interior of one interval of the other."""
        def covered(alo, ahi) -> bool:
            for blo, bhi in other.intervals:
                left = blo < alo or (blo == NEG_INF and alo == NEG_INF)
                right = ahi < bhi or (bhi == POS_INF and ahi == POS_INF)
                if left and right:
                    return True
            return False

        return all(covered(lo, hi) for lo, hi in self.intervals)

    def well_inside_extended(self, other: "RationalRegion") -> bool:
        """Well inside for the Alexandroff extension of the bounded ideal.

        On top of the interior condition, one of the two sides must be
        algebraically bounded: the region itself, or the complement of the
        other.
        """
        if not self.well_inside(other):
            return False
        return self.is_bounded or other.complement().is_bounded


def _merged(pairs) -> RationalRegion:
    pairs = sorted(pairs)
    out: list[tuple[Endpoint, Endpoint]] = []
    for lo, hi in pairs:
        if out and lo <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    return RationalRegion(tuple(out))


def expand(region: RationalRegion, margin: Fraction) -> RationalRegion:
    """Grow every interval by a positive margin on each finite side."""
    if not isinstance(margin, Fraction):
        margin = Fraction(margin)
    if margin <= 0:
        raise StructureError("margin must be positive")
    pairs = []
    for lo, hi in region.intervals:
        new_lo = lo if lo == NEG_INF else lo - margin
        new_hi = hi if hi == POS_INF else hi + margin
        pairs.append((new_lo, new_hi))
    return _merged(pairs)


def interpolate(inner: RationalRegion, outer: RationalRegion) -> RationalRegion:
    """Bounded region strictly between a bounded region and one it sits well inside.

    Each interval grows halfway toward the interior boundary of the interval
    of the outer region that contains it; infinite margins are replaced by a
    unit step so the result stays bounded.
    """
    if not inner.is_bounded:
        raise Refusal("interpolation needs a bounded inner region")
    if not inner.well_inside(outer):
        raise Refusal("interpolation needs the inner region well inside the outer one")
    pairs = []
    for lo, hi in inner.intervals:
        blo, bhi = next(
            (b for b in outer.intervals if (b[0] < lo or b[0] == NEG_INF) and (hi < b[1] or b[1] == POS_INF))
        )
        new_lo = lo - 1 if blo == NEG_INF else (lo + blo) / 2
        new_hi = hi + 1 if bhi == POS_INF else (hi + bhi) / 2
        pairs.append((new_lo, new_hi))
    return _merged(pairs)


def affine_preimage(alpha: Fraction, beta: Fraction, region: RationalRegion) -> RationalRegion:
    """Preimage of a region under x -> alpha*x + beta, alpha nonzero.

    An affine map with nonzero slope is a homeomorphism of the line, so the
    preimage of a regular closed region is computed endpoint by endpoint with
    the inverse map, reversing orientation for negative slope.
    """
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    if alpha == 0:
        raise Refusal("slope zero is not a perfect self-map of the line")

    def pull(value):
        if value == NEG_INF:
            return NEG_INF if alpha > 0 else POS_INF
        if value == POS_INF:
            return POS_INF if alpha > 0 else NEG_INF
        return (value - beta) / alpha

    pairs = []
    for lo, hi in region.intervals:
        a, b = pull(lo), pull(hi)
        pairs.append((a, b) if a < b else (b, a))
    return _merged(pairs)
