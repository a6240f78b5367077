from decimal import Decimal

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from fpvariety.catalog import GROUPS
from fpvariety.polyring import SparsePoly
from fpvariety.substitution import (char_poly, invariance_check, is_primitive, largest_real_root, matmul,
                                    pf_analysis, substitution_matrix)
from fpvariety.words import GOLDEN, SILVER, TRIBONACCI, Endomorphism, Word
from strategies import words


def test_matrices():
    assert substitution_matrix(GOLDEN) == [[1, 1], [1, 0]]
    assert substitution_matrix(SILVER) == [[2, 1], [1, 0]]
    assert substitution_matrix(TRIBONACCI) == [[0, 1, 1], [1, 1, 0], [0, 1, 0]]


def test_inverse_letters_count_unsigned():
    assert substitution_matrix(Endomorphism.from_strings("aB", "A")) == [[1, 1], [1, 0]]


@pytest.mark.parametrize("e,poly,root", [
    (GOLDEN, "x^2 - x - 1", (1 + sympy.sqrt(5)) / 2),
    (SILVER, "x^2 - 2*x - 1", 1 + sympy.sqrt(2)),
    (TRIBONACCI, "x^3 - x^2 - x - 1", None),
])
def test_pf_data(e, poly, root):
    d = pf_analysis(substitution_matrix(e))
    assert d.primitive
    assert d.char_poly.to_str(("x",)) == poly
    lam = sympy.Symbol("x")
    if root is None:
        root = max(r for r in sympy.Poly(sympy.sympify(poly.replace("^", "**")), lam).real_roots())
    assert abs(d.pf_eigenvalue - Decimal(str(sympy.N(root, 40)))) < Decimal("1e-25")


def test_tribonacci_root_value_and_stated_cubic():
    lam = pf_analysis(substitution_matrix(TRIBONACCI)).pf_eigenvalue
    assert abs(lam - Decimal("1.8392867552")) < Decimal("1e-9")
    # lambda^3 - 2 lambda + 1 has roots 1 and (-1 +- sqrt5)/2, none near 1.839
    other = SparsePoly.parse("x^3 - 2*x + 1", ("x",))
    assert largest_real_root(other, 3) < Decimal("1.01")


def test_non_primitive():
    assert is_primitive([[0, 1], [1, 0]]) == (False, None)
    assert is_primitive([[1, 1], [1, 0]]) == (True, 2)
    with pytest.raises(ValueError):
        pf_analysis([[0, 0], [0, 0]])


@given(st.lists(st.lists(st.integers(0, 4), min_size=3, max_size=3), min_size=3, max_size=3))
def test_char_poly_matches_sympy(m):
    ours = char_poly(m)
    x = sympy.Symbol("x")
    theirs = sympy.Matrix(m).charpoly(x).as_expr()
    assert sympy.expand(sympy.sympify(ours.to_str(("x",)).replace("^", "**")) - theirs) == 0


@given(st.lists(st.lists(st.integers(0, 3), min_size=2, max_size=2), min_size=2, max_size=2).filter(
    lambda m: any(any(r) for r in m)))
def test_root_annihilates_char_poly(m):
    d = pf_analysis(m)
    val = sum(c * d.pf_eigenvalue ** e[0] for e, c in d.char_poly.terms.items())
    assert abs(val) < Decimal("1e-10")


def _maps(rank=2):
    return st.lists(words(rank, 4).filter(bool), min_size=rank, max_size=rank).map(
        lambda ims: Endomorphism(tuple(ims)))


@given(_maps(), _maps())
def test_matrix_of_composition_is_product(e1, e2):
    # with inverse letters free reduction can cancel pairs, so the product only bounds the counts
    lhs = substitution_matrix(e1 * e2)
    rhs = matmul(substitution_matrix(e1), substitution_matrix(e2))
    assert all(a <= b for ra, rb in zip(lhs, rhs) for a, b in zip(ra, rb))
    assert all((b - a) % 2 == 0 for ra, rb in zip(lhs, rhs) for a, b in zip(ra, rb))


@given(_maps(), _maps())
def test_matrix_of_composition_positive_maps(e1, e2):
    pos = lambda e: Endomorphism(tuple(Word(tuple(abs(x) for x in im.letters)) for im in e.images))
    e1, e2 = pos(e1), pos(e2)
    assert substitution_matrix(e1 * e2) == matmul(substitution_matrix(e1), substitution_matrix(e2))


@pytest.mark.parametrize("name", ["hopf", "L5a1"])
@pytest.mark.parametrize("e", [GOLDEN, SILVER], ids=["golden", "silver"])
@pytest.mark.parametrize("repeats", [1, 2])
def test_census_invariance(name, e, repeats):
    rep = invariance_check(GROUPS[name].presentation, e, 5, repeats)
    assert rep.invariant
    assert [c.original for c in rep.invariance] == [c.substituted for c in rep.invariance]


def test_identity_map_is_trivially_invariant():
    ident = Endomorphism.from_strings("a", "b")
    rep = invariance_check(GROUPS["L13n5885"].presentation, ident, 4)
    assert rep.invariant and rep.substituted == GROUPS["L13n5885"].presentation


def test_report_json():
    doc = invariance_check(GROUPS["hopf"].presentation, GOLDEN, 3).to_json()
    assert doc["schema"] == 1 and doc["invariant"] is True
    assert doc["pf_eigenvalue"].startswith("1.6180339887")
