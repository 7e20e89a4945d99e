"""Exact concordance invariants of torus knots, cobordism distance
decisions for small braid index, and machine-checkable certificates of
subword adjacency between torus links.

Everything is exact: Laurent polynomials over the integers, piecewise
linear functions with rational breakpoints, and integer determinants via
a verified modular kernel (with a compiled backend when available).
"""

__version__ = "0.1.0"

from .errors import (
    BoundViolated,
    BraidlabError,
    EmptyInput,
    IllegalMove,
    IndexOutOfRange,
    InexactDivision,
    KernelConvergenceError,
    NotApplicable,
    NotCoprime,
    NotPositive,
    OutOfCoveredRange,
    OutOfDomain,
    ParseError,
    SignPatternBroken,
    UnsupportedPair,
    ZeroDeterminantFamily,
)
from .exactmath import (
    LaurentPoly,
    PiecewiseLinear,
    pl_eval,
    rational_from_str,
    rational_to_str,
    upper_envelope,
)
from .braid import (
    BraidWord,
    CyclicShift,
    DeleteGenerator,
    FreeReduce,
    InsertGenerator,
    Relation,
    apply_move,
    components,
    fence_render,
    format_word,
    half_twist,
    move_from_json,
    move_to_json,
    parse_word,
    permutation,
    torus_braid,
)
from .closure import (
    ClosureFingerprint,
    alexander_of_closure,
    fingerprint,
    identify_torus2,
    reduced_burau,
    torus_fingerprint,
)
from .invariants import (
    Staircase,
    TorusKnotId,
    alexander_torus,
    genus,
    staircase,
    tau,
    upsilon,
    upsilon_closed_form,
    upsilon_function,
)
from .cobordism import (
    DistanceResult,
    WitnessLeg,
    distance,
    distance_witness,
    lower_bound,
    optimal_exists,
    remark411_max_n,
)
from .adjacency import (
    HASH_ALG,
    AdjacencyCertificate,
    CertStep,
    LinkTag,
    Verdict,
    adj_grid,
    adj_index3,
    adj_index4,
    adj_square,
    adj_staircase,
    certificate_from_json,
    load_certificate,
    save_certificate,
    verify,
    word_hash,
)

__all__ = [
    "__version__",
    "BraidlabError", "ParseError", "NotCoprime", "NotPositive",
    "OutOfDomain", "EmptyInput", "InexactDivision", "SignPatternBroken",
    "ZeroDeterminantFamily", "KernelConvergenceError", "IllegalMove",
    "IndexOutOfRange", "BoundViolated", "UnsupportedPair",
    "OutOfCoveredRange", "NotApplicable",
    "LaurentPoly", "PiecewiseLinear", "pl_eval", "upper_envelope",
    "rational_to_str", "rational_from_str",
    "BraidWord", "FreeReduce", "Relation", "CyclicShift",
    "InsertGenerator", "DeleteGenerator", "apply_move", "move_to_json",
    "move_from_json", "torus_braid", "half_twist", "permutation",
    "components", "fence_render", "parse_word", "format_word",
    "reduced_burau", "alexander_of_closure", "ClosureFingerprint",
    "fingerprint", "torus_fingerprint", "identify_torus2",
    "TorusKnotId", "genus", "tau", "alexander_torus", "Staircase",
    "staircase", "upsilon_function", "upsilon", "upsilon_closed_form",
    "lower_bound", "optimal_exists", "WitnessLeg", "DistanceResult",
    "distance", "distance_witness", "remark411_max_n",
    "HASH_ALG", "LinkTag", "CertStep", "AdjacencyCertificate", "Verdict",
    "word_hash", "verify", "save_certificate", "load_certificate",
    "certificate_from_json",
    "adj_grid", "adj_index3", "adj_index4", "adj_square", "adj_staircase",
]
