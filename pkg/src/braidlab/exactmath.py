"""Exact arithmetic: Laurent polynomials and piecewise-linear functions.

All computation in this module is exact.  Rationals are stdlib
``fractions.Fraction`` (exposed as ``Rational``); Laurent polynomials store a
map from integer exponent to nonzero integer coefficient; piecewise-linear
functions store closed segments with rational breakpoints and are continuous
by construction.  No floating point is used anywhere.

JSON conventions: a LaurentPoly serializes as ``{"exp": coeff}`` with string
keys; a PiecewiseLinear serializes as a list of ``{from, to, slope,
intercept}`` objects whose values are rational strings like ``"2/3"``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import EmptyInput, InexactDivision, OutOfDomain, ParseError

Rational = Fraction

__all__ = [
    "Rational",
    "LaurentPoly",
    "PiecewiseLinear",
    "laurent_mul",
    "laurent_exact_div",
    "upper_envelope",
    "pl_eval",
    "rational_to_str",
    "rational_from_str",
]

_RAT_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def rational_to_str(x: Fraction) -> str:
    """Serialize a rational as "p" or "p/q" (q > 1)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rational_from_str(s: str) -> Fraction:
    m = _RAT_RE.match(s.strip())
    if not m:
        raise ParseError(f"not a rational: {s!r}")
    num, den = m.group(1), m.group(2)
    return Fraction(int(num), int(den) if den else 1)


class LaurentPoly:
    """Laurent polynomial with integer coefficients.

    Immutable.  The representation is a dict mapping exponent to coefficient
    with no zero coefficients stored; the zero polynomial is the empty map.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        c: dict[int, int] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for e, v in items:
            if v:
                c[int(e)] = c.get(int(e), 0) + int(v)
                if not c[int(e)]:
                    del c[int(e)]
        self._c = c

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def term(cls, coeff: int, exp: int = 0) -> "LaurentPoly":
        """The monomial coeff * t**exp."""
        return cls({exp: coeff})

    # -- inspection ---------------------------------------------------

    def items(self) -> Iterator[tuple[int, int]]:
        """(exponent, coefficient) pairs in increasing exponent order."""
        return iter(sorted(self._c.items()))

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def is_zero(self) -> bool:
        return not self._c

    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return min(self._c)

    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return max(self._c)

    def __getitem__(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _coerce(other)
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
            if not c[e]:
                del c[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = c
        return out

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {e: -v for e, v in self._c.items()}
        return out

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: int) -> "LaurentPoly":
        return _coerce(other) + (-self)

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _coerce(other)
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {e: v for e, v in c.items() if v}
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers are not defined for polynomials")
        acc = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t**k."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {e + k: v for e, v in self._c.items()}
        return out

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient in the Laurent ring.

        Raises InexactDivision if ``other`` does not divide ``self``.
        """
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return LaurentPoly.zero()
        # shift both to ordinary polynomials and long-divide from the top
        sa, sb = self.min_exp(), other.min_exp()
        rem = {e - sa: v for e, v in self._c.items()}
        div = {e - sb: v for e, v in other._c.items()}
        db = max(div)
        lead = div[db]
        quo: dict[int, int] = {}
        while rem:
            da = max(rem)
            if da < db:
                raise InexactDivision("remainder has lower degree than divisor")
            ca, r = divmod(rem[da], lead)
            if r:
                raise InexactDivision("leading coefficient does not divide")
            qe = da - db
            quo[qe] = ca
            for e, v in div.items():
                e2 = e + qe
                rem[e2] = rem.get(e2, 0) - ca * v
                if not rem[e2]:
                    del rem[e2]
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {e + sa - sb: v for e, v in quo.items()}
        return out

    # -- normalization and evaluation -----------------------------------

    def canonical(self) -> "LaurentPoly":
        """Unit-normal form: multiply by ±t**k so the lowest exponent is 0
        and the lowest coefficient is positive."""
        if not self._c:
            return LaurentPoly.zero()
        lo = self.min_exp()
        sign = 1 if self._c[lo] > 0 else -1
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {e - lo: sign * v for e, v in self._c.items()}
        return out

    def evaluate(self, x: Fraction) -> Fraction:
        x = Fraction(x)
        total = Fraction(0)
        for e, v in self._c.items():
            total += v * x**e
        return total

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict[str, int]:
        return {str(e): v for e, v in sorted(self._c.items())}

    @classmethod
    def from_json_dict(cls, d: Mapping[str, int]) -> "LaurentPoly":
        try:
            return cls({int(e): int(v) for e, v in d.items()})
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad Laurent polynomial JSON: {exc}") from exc

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts: list[str] = []
        for e, v in sorted(self._c.items(), reverse=True):
            mag = abs(v)
            if e == 0:
                body = str(mag)
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(body if v > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if v > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(sorted(self._c.items()))!r})"


def _coerce(x: "LaurentPoly | int") -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly({0: x})
    raise TypeError(f"cannot treat {type(x).__name__} as a Laurent polynomial")


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def laurent_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a.exact_div(b)


class PiecewiseLinear:
    """Continuous piecewise-linear function on a closed rational interval.

    Stored as a tuple of segments (x0, x1, slope, intercept), contiguous and
    in increasing order, with adjacent collinear segments merged.  The value
    on a segment is slope*t + intercept.
    """

    __slots__ = ("_segs",)

    def __init__(self, segments: Iterable[tuple[Fraction, Fraction, Fraction, Fraction]]):
        segs = [tuple(Fraction(x) for x in s) for s in segments]
        if not segs:
            raise ValueError("need at least one segment")
        for s in segs:
            if len(s) != 4:
                raise ValueError("segments are (x0, x1, slope, intercept)")
            if s[0] >= s[1]:
                raise ValueError(f"empty or inverted segment at {s[0]}")
        for a, b in zip(segs, segs[1:]):
            if a[1] != b[0]:
                raise ValueError("segments must be contiguous")
            if a[2] * a[1] + a[3] != b[2] * b[0] + b[3]:
                raise ValueError(f"discontinuity at {a[1]}")
        merged: list[tuple[Fraction, Fraction, Fraction, Fraction]] = []
        for s in segs:
            if merged and merged[-1][2] == s[2] and merged[-1][3] == s[3]:
                prev = merged.pop()
                s = (prev[0], s[1], s[2], s[3])
            merged.append(s)
        self._segs = tuple(merged)

    @classmethod
    def constant(cls, value: Fraction, lo: Fraction, hi: Fraction) -> "PiecewiseLinear":
        return cls([(Fraction(lo), Fraction(hi), Fraction(0), Fraction(value))])

    @classmethod
    def line(cls, slope: Fraction, intercept: Fraction,
             lo: Fraction, hi: Fraction) -> "PiecewiseLinear":
        return cls([(Fraction(lo), Fraction(hi), Fraction(slope), Fraction(intercept))])

    @property
    def segments(self) -> tuple[tuple[Fraction, Fraction, Fraction, Fraction], ...]:
        return self._segs

    def domain(self) -> tuple[Fraction, Fraction]:
        return self._segs[0][0], self._segs[-1][1]

    def breakpoints(self) -> list[Fraction]:
        """All segment endpoints, including the domain ends."""
        return [self._segs[0][0]] + [s[1] for s in self._segs]

    def __call__(self, t: Fraction) -> Fraction:
        t = Fraction(t)
        lo, hi = self.domain()
        if not lo <= t <= hi:
            raise OutOfDomain(f"{t} outside [{lo}, {hi}]")
        for x0, x1, slope, intercept in self._segs:
            if t <= x1:
                return slope * t + intercept
        raise AssertionError("unreachable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PiecewiseLinear):
            return NotImplemented
        return self._segs == other._segs

    def __hash__(self) -> int:
        return hash(self._segs)

    def __neg__(self) -> "PiecewiseLinear":
        return PiecewiseLinear([(x0, x1, -s, -b) for x0, x1, s, b in self._segs])

    def reflect(self, center: Fraction) -> "PiecewiseLinear":
        """The function t -> f(2*center - t) on the mirrored domain."""
        c2 = 2 * Fraction(center)
        segs = [(c2 - x1, c2 - x0, -s, s * c2 + b)
                for x0, x1, s, b in reversed(self._segs)]
        return PiecewiseLinear(segs)

    def concat(self, other: "PiecewiseLinear") -> "PiecewiseLinear":
        """Join two functions whose domains share an endpoint (values must
        agree there)."""
        return PiecewiseLinear(list(self._segs) + list(other._segs))

    def to_json(self) -> list[dict[str, str]]:
        return [
            {
                "from": rational_to_str(x0),
                "to": rational_to_str(x1),
                "slope": rational_to_str(s),
                "intercept": rational_to_str(b),
            }
            for x0, x1, s, b in self._segs
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping[str, str]]) -> "PiecewiseLinear":
        try:
            segs = [
                (
                    rational_from_str(d["from"]),
                    rational_from_str(d["to"]),
                    rational_from_str(d["slope"]),
                    rational_from_str(d["intercept"]),
                )
                for d in data
            ]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad piecewise-linear JSON: {exc}") from exc
        return cls(segs)

    def __str__(self) -> str:
        lines = []
        for x0, x1, s, b in self._segs:
            if s == 0:
                expr = rational_to_str(b)
            else:
                coef = "" if s == 1 else ("-" if s == -1 else rational_to_str(s) + "*")
                expr = f"{coef}t"
                if b > 0:
                    expr += f" + {rational_to_str(b)}"
                elif b < 0:
                    expr += f" - {rational_to_str(-b)}"
            lines.append(f"[{rational_to_str(x0)}, {rational_to_str(x1)}]  {expr}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"PiecewiseLinear({list(self._segs)!r})"


def pl_eval(f: PiecewiseLinear, t: Fraction) -> Fraction:
    return f(t)


def upper_envelope(lines: Iterable[tuple[Fraction, Fraction]],
                   lo: Fraction, hi: Fraction) -> PiecewiseLinear:
    """Pointwise maximum of lines (slope, intercept) over [lo, hi].

    Exact; the result's breakpoints are the rational crossing points.  When
    several lines share a slope only the highest survives; collinear
    duplicates collapse to one representative.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo >= hi:
        raise ValueError("empty envelope domain")
    best: dict[Fraction, Fraction] = {}
    for s, b in lines:
        s, b = Fraction(s), Fraction(b)
        if s not in best or b > best[s]:
            best[s] = b
    if not best:
        raise EmptyInput("upper_envelope needs at least one line")
    cand = sorted(best.items())  # deterministic: by (slope, intercept)
    # candidate breakpoints: every pairwise crossing inside the domain
    xs = {lo, hi}
    for i in range(len(cand)):
        s1, b1 = cand[i]
        for j in range(i + 1, len(cand)):
            s2, b2 = cand[j]
            x = (b1 - b2) / (s2 - s1)
            if lo < x < hi:
                xs.add(x)
    points = sorted(xs)
    segs = []
    for x0, x1 in zip(points, points[1:]):
        mid = (x0 + x1) / 2
        s, b = max(cand, key=lambda sb: (sb[0] * mid + sb[1], -sb[0], -sb[1]))
        segs.append((x0, x1, s, b))
    return PiecewiseLinear(segs)
