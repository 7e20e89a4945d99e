"""Cobordism distance between torus knots of small braid index.

The distance here is the smallest genus of a connected cobordism between
two knots.  For the pairs this module covers (braid indices summing to at
most 6) the lower bound max(|tau gap|, |upsilon gap|) is attained, so
distance() returns that maximum together with the gaps and, where one
exists, an explicit witness chain through an intermediate 2-stranded torus
knot whose leg genera add up to the distance.

optimal_exists decides when a single genus-minimizing cobordism from
T(2, n) reaches a knot of braid index 3 or 4: 3n <= 5m - 1 for T(3, m)
and 2n <= 5m - 3 for T(4, m).  remark411_max_n bounds the reach of the
staircase construction from T(m, m+1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotApplicable, OutOfCoveredRange, OutOfDomain, UnsupportedPair
from .invariants import TorusKnotId, genus, tau, upsilon

__all__ = [
    "lower_bound",
    "optimal_exists",
    "WitnessLeg",
    "DistanceResult",
    "distance",
    "distance_witness",
    "remark411_max_n",
]


def lower_bound(a: TorusKnotId, b: TorusKnotId) -> int:
    """max(|tau(a) - tau(b)|, |upsilon(a) - upsilon(b)|)."""
    return max(abs(tau(a) - tau(b)), abs(upsilon(a) - upsilon(b)))


def optimal_exists(two_braid_n: int, other: TorusKnotId) -> bool:
    """Whether T(2, n) and the given index-3 or index-4 knot cobound a
    cobordism of genus exactly |g(T(2, n)) - g(other)|.

    Both knots must be positive (no mirrors); n must be odd and >= 3.
    """
    n = two_braid_n
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise OutOfDomain(f"T(2, n) needs odd n >= 3, got n={n}")
    if other.sign < 0:
        raise UnsupportedPair("mirrored knots are not covered")
    if other.braid_index == 3:
        return 3 * n <= 5 * other.q - 1
    if other.braid_index == 4:
        return 2 * n <= 5 * other.q - 3
    raise UnsupportedPair(
        f"optimal_exists covers braid index 3 and 4, got {other}")


@dataclass(frozen=True)
class WitnessLeg:
    start: str
    end: str
    genus: Fraction

    def to_json_dict(self) -> dict:
        return {"from": self.start, "to": self.end, "genus": str(self.genus)}


@dataclass(frozen=True)
class DistanceResult:
    distance: int
    tau_gap: int
    upsilon_gap: int
    witness: tuple[WitnessLeg, ...] | None

    def to_json_dict(self) -> dict:
        return {
            "distance": self.distance,
            "tau_gap": self.tau_gap,
            "upsilon_gap": self.upsilon_gap,
            "witness": None if self.witness is None
            else [leg.to_json_dict() for leg in self.witness],
        }


def _chi(p: int, q: int) -> int:
    """Euler characteristic of the fiber surface of T(p, q) (1 when p=1)."""
    return p - (p - 1) * q


def distance_witness(a: TorusKnotId, b: TorusKnotId) -> tuple[WitnessLeg, ...]:
    """A chain of cobordisms realizing the distance, via an intermediate
    T(2, j) (a link when parity forces j even).

    Applies when both knots are positive, one has braid index 2 (call it
    T(2, n)) and the other index 3 or 4, and n >= j: the chain runs from
    the index-3/4 knot to T(2, j) and on to T(2, n), degenerating to a
    single leg when n = j.  For n < j the pair is joined by a single
    optimal cobordism and this raises NotApplicable, as it does for
    mirrors, unknots, and other index patterns.  The leg genera are exact
    rationals (a leg between a knot and a 2-component link costs a
    half-integer) and sum to the distance.
    """
    if a.sign < 0 or b.sign < 0:
        raise NotApplicable("witness chains cover positive knots only")
    if a.is_unknot or b.is_unknot:
        raise NotApplicable("witness chains need two nontrivial knots")
    pair = {k.braid_index: k for k in (a, b)}
    if set(pair) not in ({2, 3}, {2, 4}):
        raise NotApplicable(
            "witness chains cover one index-2 knot against index 3 or 4")
    two, other = pair[2], pair[3] if 3 in pair else pair[4]
    n = two.q
    p, m = other.p, other.q
    if p == 3:
        k, r = divmod(m, 3)
        j = 5 * k + 1 if r == 1 else 5 * k + 3
    else:
        j = 5 * (m - 1) // 2 + 1
    if n < j:
        raise NotApplicable(
            f"{two} and {other} cobound a single optimal cobordism")
    legs = [WitnessLeg(str(other), f"T(2,{j})",
                       Fraction(abs(_chi(p, m) - _chi(2, j)), 2))]
    if j != n:
        legs.append(WitnessLeg(f"T(2,{j})", str(two),
                               Fraction(abs(_chi(2, j) - _chi(2, n)), 2)))
    return tuple(legs)


def distance(a: TorusKnotId, b: TorusKnotId) -> DistanceResult:
    """Cobordism distance between two torus knots, with gaps and witness.

    Covered when the braid indices sum to at most 6 (counting the unknot
    as index 1); OutOfCoveredRange beyond that.  Knots of opposite sign
    are always covered: the distance is the sum of the genera.
    """
    if a.braid_index + b.braid_index > 6:
        raise OutOfCoveredRange(
            f"braid indices {a.braid_index} + {b.braid_index} exceed 6")
    tau_gap = abs(tau(a) - tau(b))
    upsilon_gap = abs(upsilon(a) - upsilon(b))
    d = max(tau_gap, upsilon_gap)
    if a.sign != b.sign and not (a.is_unknot or b.is_unknot):
        # tau gap is g(a) + g(b) already; keep the explicit form as a check
        assert tau_gap == genus(a.p, a.q) + genus(b.p, b.q)
    try:
        witness = distance_witness(a, b)
    except NotApplicable:
        witness = None
    if witness is not None:
        assert sum(leg.genus for leg in witness) == d
    return DistanceResult(distance=d, tau_gap=tau_gap,
                          upsilon_gap=upsilon_gap, witness=witness)


def remark411_max_n(m: int) -> int:
    """Largest odd n such that T(2, n) is reachable from T(m, m+1) by the
    staircase construction bound (3m^2 - 2m + 4) / 4."""
    if not isinstance(m, int) or m < 2:
        raise OutOfDomain(f"need m >= 2, got {m}")
    n = (3 * m * m - 2 * m + 4) // 4
    return n if n % 2 else n - 1
