"""Concordance invariants of torus knots, computed exactly.

Everything here works from the (p, q) parameters alone.  The Alexander
polynomial comes from the standard quotient formula; its coefficient signs
alternate for torus knots, which yields a staircase sequence of exponents
alpha_k and heights m_k.  The upsilon function is the upper envelope of the
lines m_{2k} - t * alpha_{2k} on [0, 1], reflected to [1, 2]; upsilon(K) is
its value at t = 1.

Mirrors are carried as a sign: tau and upsilon negate, genus does not.
The unknot is T(1, 1) and every invariant of it is zero (Alexander 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NotCoprime, SignPatternBroken
from .exactmath import LaurentPoly, PiecewiseLinear, upper_envelope

__all__ = [
    "TorusKnotId",
    "genus",
    "tau",
    "alexander_torus",
    "Staircase",
    "staircase",
    "upsilon_function",
    "upsilon",
    "upsilon_closed_form",
]


def _validate_pq(p: int, q: int) -> tuple[int, int]:
    if not (isinstance(p, int) and isinstance(q, int)) or p < 1 or q < 1:
        raise ValueError(f"torus knot parameters must be positive integers, got ({p}, {q})")
    if p > q:
        p, q = q, p
    if gcd(p, q) != 1:
        raise NotCoprime(f"T({p},{q}) is a link, not a knot: gcd is {gcd(p, q)}")
    if p == 1:
        return (1, 1)
    return (p, q)


@dataclass(frozen=True, order=True)
class TorusKnotId:
    """A torus knot T(p, q) or its mirror (sign -1).

    Stored canonically: p <= q, coprime, and every unknot presentation
    T(1, q) collapses to T(1, 1) with sign +1.
    """

    sign: int
    p: int
    q: int

    def __init__(self, p: int, q: int, sign: int = 1):
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign}")
        p, q = _validate_pq(p, q)
        if p == 1:
            sign = 1
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def is_unknot(self) -> bool:
        return self.p == 1

    @property
    def braid_index(self) -> int:
        return self.p if self.p > 1 else 1

    def mirror(self) -> "TorusKnotId":
        if self.is_unknot:
            return self
        return TorusKnotId(self.p, self.q, -self.sign)

    def __str__(self) -> str:
        base = f"T({self.p},{self.q})"
        return base if self.sign > 0 else "-" + base

    @classmethod
    def parse(cls, text: str) -> "TorusKnotId":
        """Parse "p,q" or "-p,q" (leading minus takes the mirror)."""
        s = text.strip()
        sign = 1
        if s.startswith("-"):
            sign = -1
            s = s[1:]
        parts = s.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'p,q', got {text!r}")
        return cls(int(parts[0]), int(parts[1]), sign)


def genus(p: int, q: int) -> int:
    """Seifert genus (p-1)(q-1)/2; also the slice genus."""
    p, q = _validate_pq(p, q)
    return (p - 1) * (q - 1) // 2


def tau(knot: TorusKnotId) -> int:
    """Concordance tau: -g for the positive knot, +g for its mirror."""
    return -knot.sign * genus(knot.p, knot.q)


def alexander_torus(p: int, q: int) -> LaurentPoly:
    """Symmetric Alexander polynomial of T(p, q).

    t^-g (t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1)): palindromic with lowest
    exponent -g and highest +g.
    """
    p, q = _validate_pq(p, q)
    if p == 1:
        return LaurentPoly.one()
    num = LaurentPoly({p * q: 1, 0: -1}) * LaurentPoly({1: 1, 0: -1})
    den = LaurentPoly({p: 1, 0: -1}) * LaurentPoly({q: 1, 0: -1})
    return num.exact_div(den).shift(-genus(p, q))


@dataclass(frozen=True)
class Staircase:
    """Exponents and heights of the staircase of a torus knot.

    alpha lists the exponents of the Alexander polynomial in decreasing
    order (alpha_0 = g down to alpha_{2l} = -g); m gives the corresponding
    heights with m_0 = 0.  Both have odd length.  Heights obey
    m_{2k} = m_{2k-1} - 1 and m_{2k+1} = m_{2k} - 2(alpha_2k - alpha_2k+1) + 1.
    """

    alpha: tuple[int, ...]
    m: tuple[int, ...]

    def __post_init__(self):
        if len(self.alpha) != len(self.m) or len(self.alpha) % 2 == 0:
            raise ValueError("staircase needs matching odd-length sequences")

    def even_lines(self) -> list[tuple[Fraction, Fraction]]:
        """(slope, intercept) of the line m_{2k} - t*alpha_{2k}, per even k."""
        return [(Fraction(-self.alpha[i]), Fraction(self.m[i]))
                for i in range(0, len(self.alpha), 2)]


def staircase(p: int, q: int) -> Staircase:
    """Build the staircase of T(p, q) from its Alexander polynomial.

    Checks that the coefficients strictly alternate +1/-1 starting at +1
    and that the exponent sequence is symmetric; SignPatternBroken
    otherwise (no torus knot triggers it, but the invariant is cheap).
    """
    p, q = _validate_pq(p, q)
    if p == 1:
        return Staircase(alpha=(0,), m=(0,))
    poly = alexander_torus(p, q)
    terms = sorted(poly.items(), key=lambda ec: -ec[0])
    alpha = tuple(e for e, _ in terms)
    for k, (_, coeff) in enumerate(terms):
        if coeff != (1 if k % 2 == 0 else -1):
            raise SignPatternBroken(
                f"coefficient of t^{terms[k][0]} is {coeff}, expected {(-1) ** k}")
    if len(alpha) % 2 == 0 or any(a + b for a, b in zip(alpha, reversed(alpha))):
        raise SignPatternBroken("exponents are not symmetric about 0")
    m = [0]
    for k in range(1, len(alpha)):
        if k % 2:
            m.append(m[-1] - 2 * (alpha[k - 1] - alpha[k]) + 1)
        else:
            m.append(m[-1] - 1)
    # cross-check the closed two-step recurrence on even heights
    for k in range(2, len(alpha), 2):
        if m[k] != m[k - 2] - 2 * (alpha[k - 2] - alpha[k - 1]):
            raise SignPatternBroken("even-step height recurrence failed")
    return Staircase(alpha=alpha, m=tuple(m))


def upsilon_function(p: int, q: int) -> PiecewiseLinear:
    """The upsilon function of T(p, q) on [0, 2], exact and piecewise linear.

    On [0, 1] it is the upper envelope of the even staircase lines; the
    other half is the reflection t -> 2 - t.
    """
    p, q = _validate_pq(p, q)
    if p == 1:
        return PiecewiseLinear.constant(Fraction(0), Fraction(0), Fraction(2))
    st = staircase(p, q)
    left = upper_envelope(st.even_lines(), Fraction(0), Fraction(1))
    return left.concat(left.reflect(Fraction(1)))


def upsilon(knot: TorusKnotId) -> int:
    """upsilon(K) = the upsilon function at t = 1; integer for torus knots."""
    if knot.is_unknot:
        return 0
    st = staircase(knot.p, knot.q)
    value = max(m - a for m, a in zip(st.m[::2], st.alpha[::2]))
    return knot.sign * value


def upsilon_closed_form(knot: TorusKnotId) -> int | None:
    """upsilon via per-family formulas, or None when no formula covers K.

    Covered: braid index 2, 3, 4, and q = p + 1.  Used as an independent
    check against the staircase computation.
    """
    if knot.is_unknot:
        return 0
    p, q, sign = knot.p, knot.q, knot.sign
    if p == 2:
        return sign * (-(q - 1) // 2)
    if q == p + 1:
        return sign * (-(p * p // 4))
    if p == 3:
        k, r = divmod(q, 3)
        return sign * (-2 * k if r == 1 else -2 * k - 1)
    if p == 4:
        return sign * (-(q - 1))
    return None
