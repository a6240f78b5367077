"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from fpvariety.polyring import SparsePoly
from fpvariety.words import Word


def words(rank=2, max_len=12):
    letter = st.integers(1, rank).flatmap(lambda g: st.sampled_from([g, -g]))
    return st.lists(letter, max_size=max_len).map(lambda xs: Word(tuple(xs)))


def polys(nvars=3, max_terms=5, max_deg=3, coeff=6):
    mono = st.tuples(*[st.integers(0, max_deg) for _ in range(nvars)])
    return st.dictionaries(mono, st.integers(-coeff, coeff), max_size=max_terms).map(
        lambda d: SparsePoly(nvars, d))


def sl2_matrices():
    """Integer det-1 matrices ``[[a, b], [c, d]]`` with ``a != 0``."""
    def build(t):
        a, b, c = t
        return [[a, b], [c, (1 + b * c) // a]]

    return st.tuples(st.integers(-4, 4).filter(bool), st.integers(-4, 4), st.integers(-4, 4)).filter(
        lambda t: (1 + t[1] * t[2]) % t[0] == 0).map(build)
