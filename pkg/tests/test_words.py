import pytest
from hypothesis import given

from fpvariety.words import (GOLDEN, SILVER, TRIBONACCI, Endomorphism, ParseError, Presentation, Word,
                             named_map, parse_presentation)
from strategies import words


def test_parse_and_print_round_trip():
    w = Word.parse("ab^3a^2bAB^3A^2B")
    assert len(w) == 14
    assert w.to_str() == "ab^3a^2bAB^3A^2B"
    assert Word.parse(w.to_str()) == w


def test_commutator_and_powers():
    assert Word.parse("[a,b]") == Word.parse("abAB")
    assert Word.parse("(ab)^-2") == Word.parse("BABA")
    assert Word.parse("a^-3") == Word.parse("AAA")
    assert Word.parse("1").to_str() == "1"


def test_free_reduction():
    assert Word.parse("aAbB") == Word()
    assert Word.parse("abBc").to_str() == "ac"


@pytest.mark.parametrize("bad", ["a^", "[a,b", "ab)", "a^x", "q"])
def test_bad_words(bad):
    with pytest.raises(ParseError):
        Word.parse(bad, "abc")


def test_presentation_cyclic_reduction():
    p = parse_presentation("a,b | aBabA, aA, BabA")
    assert [r.to_str() for r in p.relators] == ["a", "BabA"]
    assert p.dropped == 1


def test_presentation_parse_errors():
    for text in ["", "a,b", "ab | a", "a,a | a", "A | a", "a | b", "a,b | a,,b"]:
        with pytest.raises(ValueError):
            parse_presentation(text)


def test_free_group_presentation():
    p = parse_presentation("a |")
    assert p.rank == 1 and p.relators == ()


def test_map_examples():
    assert GOLDEN(Word.parse("abAB")).to_str() == "abaBA^2"
    assert TRIBONACCI(Word.parse("aBCaBc")).to_str() == "bCBA^2bCB"
    assert SILVER.to_str() == "a=aba,b=a"


def test_named_and_custom_maps():
    assert named_map("golden") is GOLDEN
    e = named_map("custom:a=b,b=a")
    assert e(Word.parse("ab")) == Word.parse("ba")
    with pytest.raises(ValueError):
        named_map("platinum")
    with pytest.raises(ParseError):
        named_map("custom:b=a")


def test_map_outside_domain():
    with pytest.raises(ValueError):
        GOLDEN(Word.parse("c"))


@given(words(3), words(3))
def test_group_laws(u, v):
    assert (u * v).inverse() == v.inverse() * u.inverse()
    assert u * u.inverse() == Word()
    assert Word.parse(u.to_str()) == u


@given(words(2), words(2))
def test_endomorphism_is_homomorphism(u, v):
    assert GOLDEN(u * v) == GOLDEN(u) * GOLDEN(v)
    assert SILVER(u.inverse()) == SILVER(u).inverse()


@given(words(2))
def test_composition_and_power(w):
    assert (GOLDEN * SILVER)(w) == GOLDEN(SILVER(w))
    assert (GOLDEN ** 2)(w) == GOLDEN(GOLDEN(w))
    assert (GOLDEN ** 0)(w) == w


@given(words(2))
def test_cyclic_reduction_is_conjugate(w):
    c = w.cyclically_reduced()
    if c:
        assert c.letters[0] != -c.letters[-1]
    assert len(c) <= len(w) and (len(w) - len(c)) % 2 == 0


def test_presentation_map_relators():
    p = parse_presentation("a,b | [a,b]")
    q = p.map_relators(GOLDEN, 2)
    assert q.relators[0] == GOLDEN(GOLDEN(p.relators[0])).cyclically_reduced()
    assert isinstance(q, Presentation)


def test_endomorphism_parse_round_trip():
    e = Endomorphism.parse("a=ab,b=a")
    assert e == GOLDEN
    assert Endomorphism.parse(e.to_str()) == e
