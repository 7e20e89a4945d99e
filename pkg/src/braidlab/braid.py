"""Braid words, elementary moves, and combinatorial quantities.

A braid word on n strands is a sequence of nonzero letters e with
1 <= |e| <= n-1; e > 0 is the generator a_e, e < 0 its inverse.  Words
compose bottom-to-top: the first letter acts first, and fence diagrams are
read bottom-to-top.  The strand count is stored explicitly and never
inferred from the letters, so a word may omit some generator indices.

Moves address 0-based positions in the current word.  Applying a move never
changes the strand count.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .errors import IllegalMove, IndexOutOfRange, NotPositive, ParseError

__all__ = [
    "BraidWord",
    "BraidMove",
    "FreeReduce",
    "Relation",
    "CyclicShift",
    "InsertGenerator",
    "DeleteGenerator",
    "torus_braid",
    "half_twist",
    "apply_move",
    "permutation",
    "components",
    "fence_render",
    "parse_word",
    "format_word",
    "move_to_json",
    "move_from_json",
]


@dataclass(frozen=True)
class BraidWord:
    """An explicit braid word: strand count plus letter sequence."""

    strands: int
    letters: tuple[int, ...]

    def __init__(self, strands: int, letters: Iterable[int] = ()):
        letters = tuple(int(e) for e in letters)
        if strands < 1:
            raise ParseError(f"strand count must be >= 1, got {strands}")
        for e in letters:
            if e == 0 or abs(e) > strands - 1:
                raise ParseError(
                    f"letter {e} invalid on {strands} strands "
                    f"(need 1 <= |letter| <= {strands - 1})")
        object.__setattr__(self, "strands", int(strands))
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def is_positive(self) -> bool:
        return all(e > 0 for e in self.letters)

    def exponent_sum(self) -> int:
        """Algebraic length: positive letters minus negative letters."""
        return sum(1 if e > 0 else -1 for e in self.letters)

    def concat(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise ParseError("cannot concatenate words on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-e for e in reversed(self.letters)))

    def to_json_dict(self) -> dict:
        return {"strands": self.strands, "letters": list(self.letters)}

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "BraidWord":
        try:
            return cls(int(d["strands"]), [int(e) for e in d["letters"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad braid word JSON: {exc}") from exc

    def __str__(self) -> str:
        return format_word(self)


# ---------------------------------------------------------------------------
# moves

@dataclass(frozen=True)
class FreeReduce:
    """Insert or remove a cancelling pair (letter, -letter) at position."""

    position: int
    insert: bool = False
    letter: int = 0  # required when inserting; ignored on removal


@dataclass(frozen=True)
class Relation:
    """Braid relation rewrite at position.

    form "long": [x, y, x] -> [y, x, y] for adjacent indices of equal sign.
    form "commuting": swap two letters whose indices differ by >= 2.
    """

    position: int
    form: str  # "long" | "commuting"


@dataclass(frozen=True)
class CyclicShift:
    """Conjugation: rotate the word by one letter (sound for closures)."""

    direction: str  # "front_to_back" | "back_to_front"


@dataclass(frozen=True)
class InsertGenerator:
    """Insert the positive generator a_index at position."""

    position: int
    index: int


@dataclass(frozen=True)
class DeleteGenerator:
    """Delete the positive letter at position."""

    position: int


BraidMove = Union[FreeReduce, Relation, CyclicShift, InsertGenerator, DeleteGenerator]


def _apply_inplace(strands: int, letters: list[int], mv: BraidMove) -> None:
    """Apply a move to a mutable letter list (shared by builder and verifier)."""
    n = len(letters)
    if isinstance(mv, FreeReduce):
        if mv.insert:
            if not 0 <= mv.position <= n:
                raise IndexOutOfRange(f"insert position {mv.position} not in [0, {n}]")
            e = mv.letter
            if e == 0 or abs(e) > strands - 1:
                raise IllegalMove(f"letter {e} invalid on {strands} strands")
            letters[mv.position:mv.position] = [e, -e]
        else:
            if not 0 <= mv.position <= n - 2:
                raise IndexOutOfRange(f"pair position {mv.position} not in [0, {n - 2}]")
            if letters[mv.position] != -letters[mv.position + 1]:
                raise IllegalMove(
                    f"letters at {mv.position} are not a cancelling pair")
            del letters[mv.position:mv.position + 2]
    elif isinstance(mv, Relation):
        p = mv.position
        if mv.form == "long":
            if not 0 <= p <= n - 3:
                raise IndexOutOfRange(f"position {p} not in [0, {n - 3}]")
            x, y, x2 = letters[p:p + 3]
            if x != x2 or abs(abs(x) - abs(y)) != 1 or (x > 0) != (y > 0):
                raise IllegalMove(
                    f"no [x, y, x] pattern with adjacent equal-sign indices at {p}")
            letters[p:p + 3] = [y, x, y]
        elif mv.form == "commuting":
            if not 0 <= p <= n - 2:
                raise IndexOutOfRange(f"position {p} not in [0, {n - 2}]")
            x, y = letters[p:p + 2]
            if abs(abs(x) - abs(y)) < 2:
                raise IllegalMove(
                    f"letters at {p} have adjacent indices; they do not commute")
            letters[p:p + 2] = [y, x]
        else:
            raise IllegalMove(f"unknown relation form {mv.form!r}")
    elif isinstance(mv, CyclicShift):
        if mv.direction == "front_to_back":
            if letters:
                letters.append(letters.pop(0))
        elif mv.direction == "back_to_front":
            if letters:
                letters.insert(0, letters.pop())
        else:
            raise IllegalMove(f"unknown shift direction {mv.direction!r}")
    elif isinstance(mv, InsertGenerator):
        if not 0 <= mv.position <= n:
            raise IndexOutOfRange(f"insert position {mv.position} not in [0, {n}]")
        if not 1 <= mv.index <= strands - 1:
            raise IllegalMove(f"generator index {mv.index} invalid on {strands} strands")
        letters.insert(mv.position, mv.index)
    elif isinstance(mv, DeleteGenerator):
        if not 0 <= mv.position <= n - 1:
            raise IndexOutOfRange(f"position {mv.position} not in [0, {n - 1}]")
        if letters[mv.position] < 0:
            raise IllegalMove("only positive letters may be deleted")
        del letters[mv.position]
    else:
        raise IllegalMove(f"unknown move {mv!r}")


def apply_move(w: BraidWord, mv: BraidMove) -> BraidWord:
    """Apply one move and return the rewritten word.

    Raises IndexOutOfRange for positions outside the word and IllegalMove
    when the pattern does not match.
    """
    letters = list(w.letters)
    _apply_inplace(w.strands, letters, mv)
    return BraidWord(w.strands, letters)


# JSON move encoding used inside certificate files.

def move_to_json(mv: BraidMove) -> dict:
    if isinstance(mv, FreeReduce):
        return {"kind": "free", "pos": mv.position, "insert": mv.insert,
                "letter": mv.letter}
    if isinstance(mv, Relation):
        return {"kind": "relation", "pos": mv.position, "form": mv.form}
    if isinstance(mv, CyclicShift):
        return {"kind": "shift", "dir": mv.direction}
    if isinstance(mv, InsertGenerator):
        return {"kind": "insert", "pos": mv.position, "index": mv.index}
    if isinstance(mv, DeleteGenerator):
        return {"kind": "delete", "pos": mv.position}
    raise TypeError(f"not a move: {mv!r}")


def move_from_json(d: Mapping) -> BraidMove:
    try:
        kind = d["kind"]
        if kind == "free":
            return FreeReduce(int(d["pos"]), bool(d["insert"]), int(d.get("letter", 0)))
        if kind == "relation":
            return Relation(int(d["pos"]), str(d["form"]))
        if kind == "shift":
            return CyclicShift(str(d["dir"]))
        if kind == "insert":
            return InsertGenerator(int(d["pos"]), int(d["index"]))
        if kind == "delete":
            return DeleteGenerator(int(d["pos"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad move JSON: {exc}") from exc
    raise ParseError(f"unknown move kind {d.get('kind')!r}")


# ---------------------------------------------------------------------------
# constructors

def torus_braid(p: int, q: int) -> BraidWord:
    """(a_1 ... a_{p-1})^q on p strands; its closure is the (p, q) torus link."""
    if p < 1 or q < 1:
        raise ValueError("torus_braid needs p, q >= 1")
    return BraidWord(p, tuple(range(1, p)) * q)


def half_twist(m: int) -> BraidWord:
    """The half twist on m strands: (a_1...a_{m-1})(a_1...a_{m-2})...(a_1)."""
    if m < 1:
        raise ValueError("half_twist needs m >= 1")
    letters: list[int] = []
    for k in range(m - 1, 0, -1):
        letters.extend(range(1, k + 1))
    return BraidWord(m, letters)


# ---------------------------------------------------------------------------
# combinatorics

def permutation(w: BraidWord) -> tuple[int, ...]:
    """Underlying permutation, 1-based: entry k is the final position of the
    strand entering at bottom position k.

    Composition convention: for u then v (bottom-to-top concatenation),
    permutation(u.concat(v)) = permutation(v) o permutation(u).
    """
    pos = list(range(w.strands))  # pos[k] = current position of strand k
    where = list(range(w.strands))  # where[i] = strand currently at position i
    for e in w.letters:
        i = abs(e) - 1
        a, b = where[i], where[i + 1]
        where[i], where[i + 1] = b, a
        pos[a], pos[b] = i + 1, i
    return tuple(p + 1 for p in pos)


def components(w: BraidWord) -> int:
    """Number of components of the closure (cycles of the permutation)."""
    perm = permutation(w)
    seen = [False] * w.strands
    count = 0
    for start in range(w.strands):
        if seen[start]:
            continue
        count += 1
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k] - 1
    return count


def fence_render(w: BraidWord) -> str:
    """ASCII fence: one '|' column per strand, one '-' rung per letter.

    Rows print top letter first, so the word reads bottom-to-top.
    """
    if not w.is_positive():
        raise NotPositive("fence diagrams are defined for positive words")
    width = 2 * w.strands - 1
    if not w.letters:
        return "".join("|" if i % 2 == 0 else " " for i in range(width))
    rows = []
    for e in reversed(w.letters):
        row = ["|" if i % 2 == 0 else " " for i in range(width)]
        row[2 * e - 1] = "-"
        rows.append("".join(row))
    return "\n".join(rows)


# ---------------------------------------------------------------------------
# word literals: "s:3 w:1,2,-1"

_WORD_RE = re.compile(r"^\s*s:(\d+)\s+w:([\-\d,\s]*)$")


def parse_word(text: str) -> BraidWord:
    m = _WORD_RE.match(text)
    if not m:
        raise ParseError(f"not a word literal: {text!r} (expected 's:n w:1,2,-1')")
    strands = int(m.group(1))
    body = m.group(2).strip()
    try:
        letters = [int(x) for x in body.split(",")] if body else []
        return BraidWord(strands, letters)
    except ValueError as exc:
        raise ParseError(f"bad word literal {text!r}: {exc}") from exc


def format_word(w: BraidWord) -> str:
    return f"s:{w.strands} w:{','.join(str(e) for e in w.letters)}"
