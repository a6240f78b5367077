import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from fpvariety.polyring import SparsePoly
from fpvariety.traces import (TraceCoordinates, TraceEngine, TraceRewriteError, basic_traces, canonical_key,
                              numeric_trace_oracle, trace_poly)
from fpvariety.words import Word
from strategies import sl2_matrices, words

X, Y, Z = SparsePoly.gens(3)


def test_basic_traces():
    assert trace_poly("") == 2
    assert trace_poly("a") == X
    assert trace_poly("BA") == Z
    assert trace_poly("aB") == X * Y - Z
    assert trace_poly("a^2") == X ** 2 - 2


def test_commutator_trace():
    assert trace_poly("abAB") == X ** 2 + Y ** 2 + Z ** 2 - X * Y * Z - 2


def test_rank3_basics():
    k = SparsePoly.gens(7)
    assert trace_poly("abc", 3) == k[6]
    assert trace_poly("acb", 3) == k[0] * k[5] + k[1] * k[4] + k[2] * k[3] - k[0] * k[1] * k[2] - k[6]


def test_rank3_results_are_linear_in_tabc():
    for w in ["abcabc", "acbacb", "abcacb", "aBCaBc", "abcABC"]:
        assert trace_poly(w, 3).degree_in(6) <= 1


def test_rank_limits():
    with pytest.raises(ValueError):
        TraceCoordinates(4)
    with pytest.raises(ValueError):
        trace_poly("c", 2)


def test_canonical_key_invariance():
    w = Word.parse("abAAB").letters
    rot = w[2:] + w[:2]
    inv = Word(w).inverse().letters
    assert canonical_key(w) == canonical_key(rot) == canonical_key(inv)


def test_oracle_rejects_bad_det():
    with pytest.raises(ValueError):
        numeric_trace_oracle("a", [[[1, 1], [1, 1]]])


def _random_sl2(rng):
    while True:
        a, b, c = rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3)
        if a and (1 + b * c) % a == 0:
            return [[a, b], [c, (1 + b * c) // a]]


@pytest.mark.parametrize("rank", [2, 3])
def test_thousand_random_words_against_integer_matrices(rank):
    rng = random.Random(1000 + rank)
    for _ in range(1000):
        w = Word(tuple(rng.choice([1, -1]) * rng.randint(1, rank) for _ in range(rng.randint(0, 14))))
        mats = [_random_sl2(rng) for _ in range(rank)]
        assert trace_poly(w, rank).evaluate(basic_traces(mats, rank)) == numeric_trace_oracle(w, mats)


@given(words(2, 16), sl2_matrices(), sl2_matrices())
def test_hypothesis_oracle_rank2(w, ma, mb):
    mats = [ma, mb]
    assert trace_poly(w).evaluate(basic_traces(mats)) == numeric_trace_oracle(w, mats)


@given(words(2), words(2))
def test_conjugation_and_inverse_invariance(u, w):
    assert trace_poly(u * w * u.inverse()) == trace_poly(w)
    assert trace_poly(w.inverse()) == trace_poly(w)


@given(words(2, 8), words(2, 8))
def test_product_identity(u, v):
    assert trace_poly(u * v) + trace_poly(u * v.inverse()) == trace_poly(u) * trace_poly(v)


# symbolic oracle: generic SL2 matrices over Q(p, q, r, s, t, u)
_P = sympy.symbols("p q r s t u")


def _generic():
    p, q, r, s, t, u = _P
    A = sympy.Matrix([[p, q], [r, (1 + q * r) / p]])
    B = sympy.Matrix([[s, t], [u, (1 + t * u) / s]])
    return A, B


@pytest.mark.parametrize("text", ["abAB", "a^2b^3", "aBaB", "abaBAb", "a^3bA^2B", "aba^-2b^2"])
def test_symbolic_cayley_hamilton_oracle(text):
    A, B = _generic()
    mats = {1: A, -1: A.inv(), 2: B, -2: B.inv()}
    M = sympy.eye(2)
    for x in Word.parse(text).letters:
        M = M * mats[x]
    x, y, z = A.trace(), B.trace(), (A * B).trace()
    poly = trace_poly(text)
    expr = sum(c * x ** e[0] * y ** e[1] * z ** e[2] for e, c in poly.terms.items())
    assert sympy.cancel(expr - M.trace()) == 0


def test_non_decreasing_rewrite_is_reported(monkeypatch):
    eng = TraceEngine(2)
    monkeypatch.setattr("fpvariety.traces._measure", lambda w, basic: (0, 0, 0, 0))
    with pytest.raises(TraceRewriteError):
        eng(Word.parse("a^2b^2aBab^3"))
