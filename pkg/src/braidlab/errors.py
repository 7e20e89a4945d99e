"""Exception types shared across the library.

Everything raised on purpose by braidlab derives from BraidlabError, so
callers can catch one type at the CLI boundary.  Errors also inherit the
closest stdlib category (ValueError, ArithmeticError) so that generic
handling keeps working.
"""


class BraidlabError(Exception):
    """Base class for all braidlab errors."""


class ParseError(BraidlabError, ValueError):
    """Malformed word literal, JSON document, or certificate file."""


class NotCoprime(BraidlabError, ValueError):
    """The (p, q) pair must be coprime for this operation."""


class NotPositive(BraidlabError, ValueError):
    """Operation defined only for positive braid words."""


class OutOfDomain(BraidlabError, ValueError):
    """Argument outside the domain of a piecewise-linear function."""


class EmptyInput(BraidlabError, ValueError):
    """An envelope needs at least one line."""


class InexactDivision(BraidlabError, ArithmeticError):
    """Laurent division left a nonzero remainder."""


class SignPatternBroken(BraidlabError, ArithmeticError):
    """Alexander coefficients failed the alternating ±1 pattern."""


class ZeroDeterminantFamily(BraidlabError, ArithmeticError):
    """The closure is split or degenerate; its Alexander determinant vanishes."""


class IllegalMove(BraidlabError, ValueError):
    """Move pattern does not match the word at the stated position."""


class IndexOutOfRange(IllegalMove):
    """Move position lies outside the current word."""


class BoundViolated(BraidlabError, ValueError):
    """Construction parameter outside its allowed range (e.g. a grid
    certificate needs n <= a and m <= b)."""


class UnsupportedPair(BraidlabError, ValueError):
    """Optimal-cobordism test supports targets of braid index 3 or 4 only."""


class OutOfCoveredRange(BraidlabError, ValueError):
    """Exact distance is proven only for braid-index sum <= 6."""


class NotApplicable(BraidlabError, ValueError):
    """No witness chain for this pair (a single optimal cobordism exists,
    or the pair lies outside the chain construction)."""


class KernelConvergenceError(BraidlabError, ArithmeticError):
    """Internal: modular determinant reconstruction exhausted its primes."""
