import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidlab.errors import NotCoprime, OutOfDomain
from braidlab.exactmath import LaurentPoly, PiecewiseLinear
from braidlab.invariants import (
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

F = Fraction

# frozen from an independent computation of the symmetric Alexander form
ALEXANDER = {
    (2, 3): {-1: 1, 0: -1, 1: 1},
    (2, 5): {-2: 1, -1: -1, 0: 1, 1: -1, 2: 1},
    (2, 7): {-3: 1, -2: -1, -1: 1, 0: -1, 1: 1, 2: -1, 3: 1},
    (3, 4): {-3: 1, -2: -1, 0: 1, 2: -1, 3: 1},
    (3, 5): {-4: 1, -3: -1, -1: 1, 0: -1, 1: 1, 3: -1, 4: 1},
    (3, 7): {-6: 1, -5: -1, -3: 1, -2: -1, 0: 1, 2: -1, 3: 1, 5: -1, 6: 1},
    (4, 5): {-6: 1, -5: -1, -2: 1, 0: -1, 2: 1, 5: -1, 6: 1},
    (5, 7): {-12: 1, -11: -1, -7: 1, -6: -1, -5: 1, -4: -1, -2: 1, -1: -1,
             0: 1, 1: -1, 2: 1, 4: -1, 5: 1, 6: -1, 7: 1, 11: -1, 12: 1},
}

STAIRCASES = {
    (2, 3): ([1, 0, -1], [0, -1, -2]),
    (2, 7): ([3, 2, 1, 0, -1, -2, -3], [0, -1, -2, -3, -4, -5, -6]),
    (3, 4): ([3, 2, 0, -2, -3], [0, -1, -2, -5, -6]),
    (3, 5): ([4, 3, 1, 0, -1, -3, -4], [0, -1, -2, -3, -4, -7, -8]),
    (3, 7): ([6, 5, 3, 2, 0, -2, -3, -5, -6],
             [0, -1, -2, -3, -4, -7, -8, -11, -12]),
    (4, 7): ([9, 8, 5, 4, 2, 0, -2, -4, -5, -8, -9],
             [0, -1, -2, -3, -4, -7, -8, -11, -12, -17, -18]),
    (5, 6): ([10, 9, 5, 3, 0, -3, -5, -9, -10],
             [0, -1, -2, -5, -6, -11, -12, -19, -20]),
}

# (x0, x1, slope, intercept) rows on [0, 1]; frozen from the line envelopes
ENVELOPES = {
    (3, 4): [("0", "2/3", -3, 0), ("2/3", "1", 0, -2)],
    (3, 7): [("0", "2/3", -6, 0), ("2/3", "1", 0, -4)],
    (3, 8): [("0", "2/3", -7, 0), ("2/3", "1", -1, -4)],
    (4, 5): [("0", "1/2", -6, 0), ("1/2", "1", -2, -2)],
    (4, 7): [("0", "1/2", -9, 0), ("1/2", "2/3", -5, -2), ("2/3", "1", -2, -4)],
    (4, 13): [("0", "1/2", -18, 0), ("1/2", "1", -6, -6)],
    (5, 6): [("0", "2/5", -10, 0), ("2/5", "4/5", -5, -2), ("4/5", "1", 0, -6)],
    (5, 7): [("0", "2/5", -12, 0), ("2/5", "4/5", -7, -2), ("4/5", "1", -2, -6)],
    (6, 7): [("0", "1/3", -15, 0), ("1/3", "2/3", -9, -2), ("2/3", "1", -3, -6)],
    (7, 8): [("0", "2/7", -21, 0), ("2/7", "4/7", -14, -2),
             ("4/7", "6/7", -7, -6), ("6/7", "1", 0, -12)],
}

SQUAREISH_UPSILON = {2: -1, 3: -2, 4: -4, 5: -6, 6: -9, 7: -12, 8: -16,
                     9: -20, 10: -25, 11: -30, 12: -36, 13: -42, 14: -49}


def test_knot_id_normalization_and_parse():
    k = TorusKnotId(7, 3)
    assert (k.p, k.q) == (3, 7)
    assert str(k) == "T(3,7)"
    assert str(TorusKnotId(3, 7, -1)) == "-T(3,7)"
    assert TorusKnotId.parse("3,7") == TorusKnotId(3, 7)
    assert TorusKnotId.parse("-3,7") == TorusKnotId(3, 7, -1)
    assert TorusKnotId.parse(" 2 , 11 ") == TorusKnotId(2, 11)


def test_knot_id_unknot_normal_form():
    for args in ((1, 1), (1, 5), (9, 1)):
        k = TorusKnotId(*args)
        assert k.is_unknot
        assert (k.p, k.q, k.sign) == (1, 1, 1)
    assert TorusKnotId(1, 4, -1).sign == 1  # the unknot is amphichiral


def test_knot_id_rejects_non_coprime():
    with pytest.raises(NotCoprime):
        TorusKnotId(2, 4)
    with pytest.raises(NotCoprime):
        TorusKnotId.parse("6,9")


def test_mirror():
    k = TorusKnotId(3, 7)
    assert k.mirror().sign == -1
    assert k.mirror().mirror() == k
    assert tau(k.mirror()) == -tau(k)
    assert upsilon(k.mirror()) == -upsilon(k)


def test_genus_and_tau():
    assert genus(2, 3) == 1
    assert genus(3, 7) == 6
    assert genus(1, 1) == 0
    assert tau(TorusKnotId(3, 7)) == -6
    assert tau(TorusKnotId(3, 7, -1)) == 6
    assert tau(TorusKnotId(1, 1)) == 0


@pytest.mark.parametrize("pq,coeffs", sorted(ALEXANDER.items()))
def test_alexander_torus_frozen(pq, coeffs):
    assert alexander_torus(*pq) == LaurentPoly(coeffs)


def test_alexander_torus_properties():
    for pq in ALEXANDER:
        d = alexander_torus(*pq)
        assert d.evaluate(F(1)) in (1, -1)
        assert d.max_exp() == genus(*pq)
        assert d.min_exp() == -genus(*pq)
        # symmetric under t -> 1/t
        assert all(d[e] == d[-e] for e, _ in d.items())


@pytest.mark.parametrize("pq,pair", sorted(STAIRCASES.items()))
def test_staircase_frozen(pq, pair):
    st_ = staircase(*pq)
    alpha, m = pair
    assert list(st_.alpha) == alpha
    assert list(st_.m) == m


def test_staircase_shape():
    for pq in STAIRCASES:
        st_ = staircase(*pq)
        assert len(st_.alpha) % 2 == 1
        assert st_.m[0] == 0
        # odd steps drop by one
        assert all(st_.m[i] - 1 == st_.m[i + 1] for i in range(1, len(st_.m) - 1, 2))
        # alpha is antisymmetric
        assert [-a for a in reversed(st_.alpha)] == list(st_.alpha)


def test_even_lines_are_slope_intercept_pairs():
    lines = staircase(3, 4).even_lines()
    assert lines == [(F(-3), F(0)), (F(0), F(-2)), (F(3), F(-6))]


@pytest.mark.parametrize("pq,rows", sorted(ENVELOPES.items()))
def test_upsilon_function_frozen(pq, rows):
    left = PiecewiseLinear(
        [(F(a), F(b), F(s), F(c)) for a, b, s, c in rows])
    got = upsilon_function(*pq)
    assert got == left.concat(left.reflect(F(1)))


def test_upsilon_function_domain_and_symmetry():
    for pq in ENVELOPES:
        f = upsilon_function(*pq)
        assert f.domain() == (F(0), F(2))
        assert f(F(0)) == 0 and f(F(2)) == 0
        for t in (F(1, 3), F(1, 2), F(2, 3)):
            assert f(t) == f(2 - t)
        with pytest.raises(OutOfDomain):
            f(F(5, 2))


def test_upsilon_function_unknot():
    f = upsilon_function(1, 1)
    assert f(F(0)) == f(F(1)) == f(F(2)) == 0


def test_upsilon_values():
    assert upsilon(TorusKnotId(3, 4)) == -2
    assert upsilon(TorusKnotId(3, 4, -1)) == 2
    assert upsilon(TorusKnotId(1, 1)) == 0
    for m, value in SQUAREISH_UPSILON.items():
        if m == 1:
            continue
        assert upsilon(TorusKnotId(m, m + 1)) == value


def test_upsilon_is_value_at_one():
    for pq in ENVELOPES:
        assert upsilon(TorusKnotId(*pq)) == upsilon_function(*pq)(F(1))


@pytest.mark.parametrize("p", [2, 3, 4])
def test_closed_form_matches_staircase(p):
    for q in range(p + 1, 62):
        if math.gcd(p, q) != 1:
            continue
        k = TorusKnotId(p, q)
        closed = upsilon_closed_form(k)
        assert closed is not None, (p, q)
        assert closed == upsilon(k), (p, q)


def test_closed_form_families():
    assert upsilon_closed_form(TorusKnotId(2, 13)) == -6
    assert upsilon_closed_form(TorusKnotId(3, 7)) == -4
    assert upsilon_closed_form(TorusKnotId(3, 8)) == -5
    assert upsilon_closed_form(TorusKnotId(4, 9)) == -8
    assert upsilon_closed_form(TorusKnotId(5, 6)) == -6
    assert upsilon_closed_form(TorusKnotId(5, 7)) is None
    assert upsilon_closed_form(TorusKnotId(5, 7, -1)) is None
    assert upsilon_closed_form(TorusKnotId(3, 7, -1)) == 4


def test_closed_form_square_family():
    for m in range(2, 15):
        assert upsilon_closed_form(TorusKnotId(m, m + 1)) == -(m * m // 4)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6), st.integers(3, 30))
def test_upsilon_profile_left_half_convex(p, q):
    """The left half is an upper envelope of lines: slopes increase."""
    if math.gcd(p, q) != 1:
        return
    f = upsilon_function(p, q)
    segs = [s for s in f.segments if s[1] <= 1]
    slopes = [s[2] for s in segs]
    assert slopes == sorted(slopes)
    assert all(s <= 0 for s in slopes)
