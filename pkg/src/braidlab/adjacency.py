"""Subword-adjacency certificates: constructors and an independent verifier.

A certificate claims that a torus link (the source) is reachable from a
bigger one (the target) by a sequence of primitive braid moves, where the
only moves that change the closure are generator deletions.  It records the
initial word, every move, and a hash of the word after each move, so a
verifier can replay the sequence without trusting the producer: every move
must be legal, every hash must match, and the two endpoint words must close
to the claimed links (checked through closure fingerprints, or through
identify_torus2 for T(2, n) claims on positive words).

Hash algorithm "sha256-int32le-v1": sha256 over the strand count followed
by the letters, each packed as a little-endian int32.

The constructors realize explicit reductions:

- adj_grid(n, m, a, b): deletion-only, torus grid word to torus grid word.
- adj_index3(m): from T(3, m) down to T(2, n), n the largest integer with
  3n <= 5m - 1, by rewriting the word into braid-relation normal pieces
  and deleting all but one second generator.
- adj_index4(m): from T(4, m) down to T(2, n), 2n <= 5m - 3, by peeling
  half-twist pairs and walking freed letters through them.
- half_twist_reduce(m): the move fragment taking the half twist word to a
  split union of 2-braid blocks (used by adj_square), returned with the
  reduced word.
- adj_square(m): from T(m, m) down to T(2, n) with
  n = (m-1) + len(beta_{m-2}) + len(beta_m).
- adj_staircase(m): from T(m, m+1), by deleting one row and then running
  the adj_square reduction; metadata records the achieved n next to the
  conjectured bound.
"""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import dataclass
from math import gcd
from pathlib import Path
from typing import Sequence

from .braid import (
    BraidMove,
    BraidWord,
    DeleteGenerator,
    Relation,
    _apply_inplace,
    half_twist,
    move_from_json,
    move_to_json,
    torus_braid,
)
from .closure import fingerprint, identify_torus2, torus_fingerprint
from .errors import BoundViolated, IllegalMove, ParseError, ZeroDeterminantFamily

__all__ = [
    "HASH_ALG",
    "LinkTag",
    "CertStep",
    "AdjacencyCertificate",
    "Verdict",
    "verify",
    "word_hash",
    "save_certificate",
    "load_certificate",
    "adj_grid",
    "adj_index3",
    "adj_index4",
    "half_twist_reduce",
    "adj_square",
    "adj_staircase",
]

HASH_ALG = "sha256-int32le-v1"


def word_hash(strands: int, letters: Sequence[int]) -> str:
    return hashlib.sha256(
        struct.pack(f"<{len(letters) + 1}i", strands, *letters)).hexdigest()


@dataclass(frozen=True)
class LinkTag:
    """A torus link named by its parameters, links included (no coprimality
    or ordering requirement)."""

    p: int
    q: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)) \
                or self.p < 1 or self.q < 1:
            raise ValueError(f"bad torus link tag ({self.p}, {self.q})")

    @property
    def chi(self) -> int:
        """Euler characteristic of the Bennequin surface of the standard word."""
        return self.p - (self.p - 1) * self.q

    @property
    def components(self) -> int:
        return gcd(self.p, self.q) if self.p > 1 else 1

    def __str__(self) -> str:
        return f"T({self.p},{self.q})"

    def to_json_dict(self) -> dict:
        return {"p": self.p, "q": self.q}

    @classmethod
    def from_json_dict(cls, data: dict) -> "LinkTag":
        return cls(int(data["p"]), int(data["q"]))


@dataclass(frozen=True)
class CertStep:
    move: BraidMove
    hash: str


@dataclass(frozen=True)
class AdjacencyCertificate:
    version: int
    hash_alg: str
    strands: int
    source: LinkTag
    target: LinkTag
    initial_word: BraidWord
    steps: tuple[CertStep, ...]
    metadata: dict

    def final_word(self) -> BraidWord:
        """Replay the steps (without verification) and return the end word."""
        letters = list(self.initial_word.letters)
        for step in self.steps:
            _apply_inplace(self.strands, letters, step.move)
        return BraidWord(self.strands, tuple(letters))

    def deletions(self) -> int:
        return sum(isinstance(s.move, DeleteGenerator) for s in self.steps)

    def to_json_dict(self) -> dict:
        return {
            "version": self.version,
            "hash_alg": self.hash_alg,
            "strands": self.strands,
            "source": self.source.to_json_dict(),
            "target": self.target.to_json_dict(),
            "initial_word": self.initial_word.to_json_dict(),
            "steps": [{"move": move_to_json(s.move), "hash": s.hash}
                      for s in self.steps],
            "metadata": self.metadata,
        }


@dataclass(frozen=True)
class Verdict:
    """Outcome of verification: valid, a step failure, or a wrong endpoint."""

    valid: bool
    kind: str
    step_index: int | None = None
    reason: str | None = None
    which: str | None = None
    expected: str | None = None
    found: str | None = None

    def __bool__(self) -> bool:
        return self.valid

    @classmethod
    def ok(cls) -> "Verdict":
        return cls(valid=True, kind="valid")

    @classmethod
    def invalid_step(cls, index: int, reason: str) -> "Verdict":
        return cls(valid=False, kind="invalid_step", step_index=index,
                   reason=reason)

    @classmethod
    def endpoint_mismatch(cls, which: str, expected: str, found: str) -> "Verdict":
        return cls(valid=False, kind="endpoint_mismatch", which=which,
                   expected=expected, found=found)

    def describe(self) -> str:
        if self.valid:
            return "Valid"
        if self.kind == "invalid_step":
            return f"InvalidStep at step {self.step_index}: {self.reason}"
        return (f"EndpointMismatch on {self.which}: "
                f"expected {self.expected}, found {self.found}")

    def to_json_dict(self) -> dict:
        out: dict = {"status": self.kind}
        if self.kind == "invalid_step":
            out.update(step_index=self.step_index, reason=self.reason)
        elif self.kind == "endpoint_mismatch":
            out.update(which=self.which, expected=self.expected,
                       found=self.found)
        return out


def _endpoint_mismatch(which: str, word: BraidWord, tag: LinkTag) -> Verdict | None:
    if tag.p == 2 and word.is_positive():
        n = identify_torus2(word)
        if n != tag.q:
            found = f"T(2,{n})" if n is not None else "no torus T(2,*) closure"
            return Verdict.endpoint_mismatch(which, str(tag), found)
        return None
    ref = torus_fingerprint(tag.p, tag.q)
    try:
        fp = fingerprint(word)
    except ZeroDeterminantFamily:
        return Verdict.endpoint_mismatch(which, str(tag), "a split closure")
    if (fp.components != ref.components
            or fp.alexander != ref.alexander
            or (fp.bennequin_chi is not None
                and fp.bennequin_chi != ref.bennequin_chi)):
        expected = (f"{tag}: components={ref.components}, "
                    f"chi={ref.bennequin_chi}, alexander={ref.alexander}")
        found = (f"components={fp.components}, chi={fp.bennequin_chi}, "
                 f"alexander={fp.alexander}")
        return Verdict.endpoint_mismatch(which, expected, found)
    return None


def verify(cert: AdjacencyCertificate) -> Verdict:
    """Replay a certificate and check every hash and both endpoints.

    Never raises for a bad certificate: failures come back as Verdicts.
    """
    letters = list(cert.initial_word.letters)
    for i, step in enumerate(cert.steps):
        try:
            _apply_inplace(cert.strands, letters, step.move)
        except IllegalMove as exc:
            return Verdict.invalid_step(i, str(exc))
        if word_hash(cert.strands, letters) != step.hash:
            return Verdict.invalid_step(i, "word hash mismatch after move")
    final = BraidWord(cert.strands, tuple(letters))
    bad = _endpoint_mismatch("target", cert.initial_word, cert.target)
    if bad is None:
        bad = _endpoint_mismatch("source", final, cert.source)
    return Verdict.ok() if bad is None else bad


def save_certificate(cert: AdjacencyCertificate, path: str | Path) -> None:
    Path(path).write_text(json.dumps(cert.to_json_dict(), indent=1) + "\n")


def load_certificate(path: str | Path) -> AdjacencyCertificate:
    """Load and structurally validate a certificate file (ParseError on
    malformed input; semantic failures are verify()'s job)."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    return certificate_from_json(data)


def certificate_from_json(data: dict) -> AdjacencyCertificate:
    try:
        if data["version"] != 1:
            raise ParseError(f"unsupported certificate version {data['version']!r}")
        if data["hash_alg"] != HASH_ALG:
            raise ParseError(f"unsupported hash algorithm {data['hash_alg']!r}")
        strands = int(data["strands"])
        initial = BraidWord.from_json_dict(data["initial_word"])
        if initial.strands != strands:
            raise ParseError("initial word strand count disagrees with certificate")
        steps = tuple(
            CertStep(move_from_json(s["move"]), str(s["hash"]))
            for s in data["steps"])
        return AdjacencyCertificate(
            version=1,
            hash_alg=HASH_ALG,
            strands=strands,
            source=LinkTag.from_json_dict(data["source"]),
            target=LinkTag.from_json_dict(data["target"]),
            initial_word=initial,
            steps=steps,
            metadata=dict(data.get("metadata", {})),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed certificate: {exc}") from None


class _Builder:
    """Accumulates moves against a live word, hashing after each one."""

    def __init__(self, word: BraidWord):
        self.strands = word.strands
        self.initial = word
        self.letters = list(word.letters)
        self.steps: list[CertStep] = []

    def apply(self, move: BraidMove) -> None:
        _apply_inplace(self.strands, self.letters, move)
        self.steps.append(CertStep(move, word_hash(self.strands, self.letters)))

    def long(self, pos: int) -> None:
        self.apply(Relation(pos, "long"))

    def comm(self, pos: int) -> None:
        self.apply(Relation(pos, "commuting"))

    def delete(self, pos: int) -> None:
        self.apply(DeleteGenerator(pos))

    def word(self) -> BraidWord:
        return BraidWord(self.strands, tuple(self.letters))

    def certificate(self, source: LinkTag, target: LinkTag,
                    construction: str, params: dict, **extra) -> AdjacencyCertificate:
        return AdjacencyCertificate(
            version=1,
            hash_alg=HASH_ALG,
            strands=self.strands,
            source=source,
            target=target,
            initial_word=self.initial,
            steps=tuple(self.steps),
            metadata={"construction": construction, "params": params, **extra},
        )


def _sort_small_left(bld: _Builder, start: int, end: int, small: int) -> None:
    """Bubble every `small` letter in [start, end) left past the other
    letters there, which must all commute with it."""
    moved = True
    while moved:
        moved = False
        for pos in range(start, end - 1):
            if bld.letters[pos] != small and bld.letters[pos + 1] == small:
                bld.comm(pos)
                moved = True


def adj_grid(n: int, m: int, a: int, b: int) -> AdjacencyCertificate:
    """Deletion-only certificate from T(a, b) down to T(n, m).

    Works on the grid of the torus word (a_1 ... a_{a-1})^b: rows past the
    m-th go entirely, earlier rows are truncated to their first n-1 letters,
    and one full row is kept so the closure stays connected on a strands.
    """
    for name, v in (("n", n), ("m", m), ("a", a), ("b", b)):
        if not isinstance(v, int) or v < 1:
            raise BoundViolated(f"{name} must be a positive integer, got {v!r}")
    if n > a or m > b:
        raise BoundViolated(f"need n <= a and m <= b, got ({n},{m}) vs ({a},{b})")
    bld = _Builder(torus_braid(a, b))
    row = a - 1
    for pos in range(b * row - 1, m * row - 1, -1):
        bld.delete(pos)
    for r in range(m - 2, -1, -1):
        for pos in range(r * row + row - 1, r * row + n - 2, -1):
            bld.delete(pos)
    return bld.certificate(
        source=LinkTag(n, m), target=LinkTag(a, b),
        construction="grid", params={"n": n, "m": m, "a": a, "b": b})


def _index3_step_a(bld: _Builder, off: int, l: int) -> None:
    # (a1 a2)^3 -> a1 a2 a1 a1 a2 a1 in each of the l six-letter blocks
    for j in range(l):
        bld.long(off + 6 * j + 3)


def _index3_steps_bc(bld: _Builder, off: int, l: int) -> None:
    # collect each block's trailing a1 at the end of the run, then merge
    # the stripped blocks pairwise
    for i in range(l - 2, -1, -1):
        for j in range(l - 1 - i):
            bld.long(off + 6 * i + 6 + 5 * j)
            bld.long(off + 6 * i + 8 + 5 * j)
    for k in range(l - 1):
        bld.long(off + 4 + 5 * k)


def _index3_deletes(bld: _Builder, off: int, l: int) -> None:
    # delete all but the first a2
    positions = [off + 5 * k + 5 for k in range(l - 1)] + [off + 5 * l - 1]
    for pos in sorted(positions, reverse=True):
        bld.delete(pos)


def adj_index3(m: int) -> AdjacencyCertificate:
    """Certificate from T(3, m) down to T(2, n), n largest with 3n <= 5m-1."""
    if not isinstance(m, int) or m < 2:
        raise BoundViolated(f"need m >= 2, got {m!r}")
    bld = _Builder(torus_braid(3, m))
    l, r = divmod(m, 3)
    if r == 0:
        _index3_step_a(bld, 0, l)
        _index3_steps_bc(bld, 0, l)
        _index3_deletes(bld, 0, l)
        n = 5 * l - 1
    elif r == 1:
        _index3_step_a(bld, 2, l)
        _index3_steps_bc(bld, 2, l)
        bld.long(1)
        _index3_deletes(bld, 2, l)
        n = 5 * l + 1
    else:
        bld.long(1)
        if l > 0:
            _index3_step_a(bld, 4, l)
            for i in range(l):
                bld.long(4 + 6 * i)
                bld.long(6 + 6 * i)
            _index3_steps_bc(bld, 3, l)
            bld.long(2)
            _index3_deletes(bld, 3, l)
        n = 5 * l + 3
    return bld.certificate(
        source=LinkTag(2, n), target=LinkTag(3, m),
        construction="index3", params={"m": m}, achieved_n=n)


def adj_index4(m: int) -> AdjacencyCertificate:
    """Certificate from T(4, m) down to T(2, n), n largest with 2n <= 5m-3.

    The word (a1 a3 a2)^m (conjugate to the standard torus word) splits
    into half-twist pairs.  Each pair in turn is rewritten to free its last
    letter, and the freed letter walks right through the remaining pairs,
    toggling between a1 and a3 as it crosses each.  The walked-out letters
    pool after the pairs; deleting the trailing half of the a2's leaves a
    word closing to T(2, n).
    """
    if not isinstance(m, int) or m < 2:
        raise BoundViolated(f"need m >= 2, got {m!r}")
    bld = _Builder(BraidWord(4, tuple([1, 3, 2] * m)))
    pairs = m // 2
    for i in range(pairs):
        o = 5 * i
        bld.comm(o + 3)
        bld.long(o + 1)
        bld.long(o + 3)
        bld.comm(o + 2)
        pos = o + 5
        carrying_a1 = True
        for _ in range(pairs - 1 - i):
            if carrying_a1:
                bld.comm(pos + 1)
                bld.long(pos + 2)
                bld.long(pos + 4)
            else:
                bld.comm(pos)
                bld.comm(pos + 4)
                bld.long(pos + 2)
                bld.long(pos + 4)
                bld.comm(pos + 3)
            carrying_a1 = not carrying_a1
            pos += 6
    _sort_small_left(bld, 5 * pairs, 5 * pairs + pairs, small=1)
    a2_positions = [i for i, e in enumerate(bld.letters) if e == 2]
    for pos in sorted(a2_positions[len(a2_positions) - pairs:], reverse=True):
        bld.delete(pos)
    n = (5 * m - 3) // 2
    # the closed forms: 5l+1 for m = 2l+1, 5l+3 for m = 2l+2
    assert n == (5 * ((m - 1) // 2) + 1 if m % 2 else 5 * ((m - 2) // 2) + 3)
    return bld.certificate(
        source=LinkTag(2, n), target=LinkTag(4, m),
        construction="index4", params={"m": m}, achieved_n=n)


def _s_script(bld: _Builder, o: int, j: int) -> None:
    """Rewrite F(j) F(j) at offset o into a1' F(j) F(j-1), where F(j) is an
    ascending run of j letters and a1' the lowest letter of the block."""
    if j < 2:
        return
    if j == 2:
        bld.long(o + 1)
        return
    for i in range(j - 2):
        bld.comm(o + j - 1 + i)
    bld.long(o + 2 * j - 3)
    _s_script(bld, o, j - 1)
    for p in range(o + 2 * j - 3, o + j - 1, -1):
        bld.comm(p)


def _round(bld: _Builder, start: int, k: int, gen: int) -> None:
    """One reduction round on a literal half-twist block of k strands'
    letters (shifted up by gen) at positions [start, start + k(k-1)/2)."""
    bld.delete(start + k - 2)
    size = k * (k - 1) // 2 - 1
    o = start
    for j in range(k - 2, 1, -1):
        _s_script(bld, o, j)
        o += j + 1
    low2 = gen + 2
    positions = [p for p in range(start, start + size)
                 if bld.letters[p] == low2]
    assert len(positions) == k - 3, "half-twist round lost its shape"
    for pos in sorted(positions, reverse=True):
        bld.delete(pos)
    _sort_small_left(bld, start, start + size - len(positions), small=gen + 1)


def _reduce_half_twist(bld: _Builder, start: int, k: int, gen: int) -> None:
    while k >= 3:
        _round(bld, start, k, gen)
        start += 2 * (k - 2)
        gen += 2
        k -= 3


def _beta_len(m: int) -> int:
    total = 0
    while m >= 3:
        total += 2 * (m - 2)
        m -= 3
    return total + (1 if m == 2 else 0)


def half_twist_reduce(m: int) -> tuple[tuple[BraidMove, ...], BraidWord]:
    """Moves reducing the half twist on m strands to a split union of
    2-braid blocks, plus the reduced word itself.

    The reduced word is a1^(2(m-2)) a3^(2(m-5)) ... with a final lone
    letter when the leftover block has 2 strands.
    """
    if not isinstance(m, int) or m < 1:
        raise BoundViolated(f"need m >= 1, got {m!r}")
    bld = _Builder(half_twist(m))
    _reduce_half_twist(bld, 0, m, 0)
    return tuple(step.move for step in bld.steps), bld.word()


def adj_square(m: int) -> AdjacencyCertificate:
    """Certificate from T(m, m) down to T(2, n) with
    n = (m-1) + len(beta_{m-2}) + len(beta_m).

    The square of the half twist is reduced twice: the whole trailing half
    twist collapses to beta_m, and the half twist on the first m-2 strands
    embedded in the leading one collapses to beta_{m-2}.  What remains is
    a connected positive word closing to T(2, n).
    """
    if not isinstance(m, int) or m < 2:
        raise BoundViolated(f"need m >= 2, got {m!r}")
    halfw = half_twist(m)
    bld = _Builder(BraidWord(m, halfw.letters + halfw.letters))
    mid = m * (m - 1) // 2
    _reduce_half_twist(bld, mid, m, 0)
    _reduce_half_twist(bld, 2 * m - 3, m - 2, 0)
    n = (m - 1) + _beta_len(m - 2) + _beta_len(m)
    return bld.certificate(
        source=LinkTag(2, n), target=LinkTag(m, m),
        construction="square", params={"m": m}, achieved_n=n)


def adj_staircase(m: int) -> AdjacencyCertificate:
    """Certificate from T(m, m+1) down to T(2, n).

    Guaranteed floor: delete one torus row (reaching the square word for
    T(m, m)) and run the adj_square reduction.  Metadata records both the
    achieved n and the conjectured reachability bound (2m^2 - m + 5) / 3;
    for m = 2 the bound itself is achieved since T(2, 3) = T(m, m+1).
    """
    if not isinstance(m, int) or m < 2:
        raise BoundViolated(f"need m >= 2, got {m!r}")
    bound = (2 * m * m - m + 5) // 3
    if m == 2:
        bld = _Builder(torus_braid(2, 3))
        return bld.certificate(
            source=LinkTag(2, 3), target=LinkTag(2, 3),
            construction="staircase", params={"m": m},
            achieved_n=3, conjectured_n=bound)
    halfw = half_twist(m)
    row = tuple(range(1, m))
    bld = _Builder(BraidWord(m, halfw.letters + halfw.letters + row))
    mid = m * (m - 1) // 2
    for pos in range(2 * mid + m - 2, 2 * mid - 1, -1):
        bld.delete(pos)
    _reduce_half_twist(bld, mid, m, 0)
    _reduce_half_twist(bld, 2 * m - 3, m - 2, 0)
    n = (m - 1) + _beta_len(m - 2) + _beta_len(m)
    return bld.certificate(
        source=LinkTag(2, n), target=LinkTag(m, m + 1),
        construction="staircase", params={"m": m},
        achieved_n=n, conjectured_n=bound)
