import os

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fpvariety.catalog import GROUPS
from fpvariety.census import (CosetLimitError, CosetTable, low_index_census, perm_rep, schreier_generators,
                              todd_coxeter)
from fpvariety.words import Endomorphism, Presentation, Word, parse_presentation


def sigma(d):
    return sum(k for k in range(1, d + 1) if d % k == 0)


def test_hopf_sequence_is_sigma():
    assert low_index_census(GROUPS["hopf"].presentation, 8).eta == [sigma(d) for d in range(1, 9)]


def test_whitehead_and_sister_sequences():
    assert low_index_census(GROUPS["L5a1"].presentation, 6).eta == [1, 3, 6, 17, 22, 79]
    assert low_index_census(GROUPS["L13n5885"].presentation, 6).eta == [1, 3, 5, 12, 19, 60]


def test_infinite_cyclic():
    assert low_index_census(parse_presentation("a |"), 5).eta == [1, 1, 1, 1, 1]


def test_free_group_rank_two():
    # conjugacy classes of index-d subgroups of F2: 1, 3, 7, 26
    assert low_index_census(parse_presentation("a,b |"), 4).eta == [1, 3, 7, 26]


def test_modular_group():
    assert low_index_census(GROUPS["modular"].presentation, 6).eta == [1, 1, 2, 2, 1, 8]


def test_parallel_matches_serial():
    p = GROUPS["L5a1"].presentation
    assert low_index_census(p, 5, jobs=2).eta == low_index_census(p, 5).eta


def test_generator_order_does_not_matter():
    p = GROUPS["L13n5885"].presentation
    swap = Endomorphism.from_strings("b", "a")
    q = Presentation(p.gens, tuple(swap(r) for r in p.relators))
    assert low_index_census(q, 5).eta == low_index_census(p, 5).eta


@pytest.mark.parametrize("name,N", [("hopf", 6), ("L5a1", 5), ("L13n5885", 5), ("modular", 6), ("E6", 5)])
def test_every_table_is_a_closed_transitive_action(name, N):
    p = GROUPS[name].presentation
    res = low_index_census(p, N, keep_tables=True)
    for d, tables in res.tables.items():
        assert len(tables) == res.eta[d - 1]
        for t in tables:
            t.check(p)
            assert t.n == d and t.is_transitive()


def test_todd_coxeter_finite_groups():
    assert todd_coxeter(parse_presentation("a | a^3")).action == ((1, 2, 0),)
    assert todd_coxeter(parse_presentation("a,b | a^2, b^3, (ab)^5")).n == 60
    assert todd_coxeter(parse_presentation("a,b | a^2, b^3, (ab)^3")).n == 12
    s3 = parse_presentation("a,b | a^2, b^2, (ab)^3")
    assert todd_coxeter(s3, [Word.parse("a")]).n == 3


def test_todd_coxeter_budget():
    with pytest.raises(CosetLimitError):
        todd_coxeter(GROUPS["modular"].presentation, (), max_cosets=10)


def test_schreier_generators_recover_the_subgroup():
    p = GROUPS["L5a1"].presentation
    for t in low_index_census(p, 5, keep_tables=True).tables[5]:
        again = todd_coxeter(p, schreier_generators(t))
        assert again.n == 5
        assert all(again.act(0, w) == 0 for w in schreier_generators(t))


def test_modular_index_three_orders():
    tables = low_index_census(GROUPS["modular"].presentation, 3, keep_tables=True).tables[3]
    for t in tables:
        a, b = perm_rep(t)
        assert np.array_equal(a @ a, np.eye(3)) and np.array_equal(b @ b @ b, np.eye(3))


def test_perm_rep_shapes():
    t = CosetTable(3, ((1, 2, 0),))
    (m,) = perm_rep(t)
    assert np.array_equal(m, np.roll(np.eye(3, dtype=int), 1, axis=0))
    (i,) = perm_rep(CosetTable(2, ((0, 1),)))
    assert np.array_equal(i, np.eye(2))


@settings(max_examples=25)
@given(st.integers(1, 6), st.integers(1, 6))
def test_abelian_quotient_census(m, n):
    # Z_m x Z_n: every subgroup is normal, so classes = subgroups
    p = parse_presentation(f"a,b | a^{m}, b^{n}, [a,b]")
    eta = low_index_census(p, 4).eta
    order = m * n
    assert sum(eta[d - 1] for d in range(1, 5) if order % d == 0) == sum(eta)
    assert eta[0] == 1


@pytest.mark.skipif(not os.environ.get("FPVARIETY_STRETCH"), reason="long census; set FPVARIETY_STRETCH=1")
@pytest.mark.parametrize("name", ["L13n5885", "L5a1", "L6a2", "L6a1"])
def test_full_catalog_sequences(name):
    entry = GROUPS[name]
    assert low_index_census(entry.presentation, len(entry.card_seq)).eta == list(entry.card_seq)
