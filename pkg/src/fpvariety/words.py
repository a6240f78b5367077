"""Free-group words, finite presentations and free-group endomorphisms.

A word is stored as a tuple of nonzero ints: ``g + 1`` is generator ``g`` and
``-(g + 1)`` its inverse.  Letters print as ``a, b, c, ...`` with uppercase
for inverses, so ``abAB`` is the commutator ``[a, b]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

LETTERS = "abcdefghijklmnopqrstuvwxyz"


class ParseError(ValueError):
    """Raised for malformed presentation or word text."""


def free_reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    w = free_reduce_letters(letters)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i:j + 1]


def invert_letters(letters: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(letters))


@dataclass(frozen=True)
class Word:
    """An element of a free group, kept freely reduced."""

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if any(x == 0 for x in self.letters):
            raise ValueError("letter 0 is not a generator")
        object.__setattr__(self, "letters", free_reduce_letters(self.letters))

    @classmethod
    def parse(cls, text: str, gens: str = LETTERS) -> "Word":
        return cls(_WordParser(text, gens).parse_word_only())

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "Word":
        """Build from ``(generator index, exponent)`` pairs."""
        letters: list[int] = []
        for g, e in pairs:
            letters.extend([(g + 1) if e > 0 else -(g + 1)] * abs(e))
        return cls(tuple(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        return Word(base.letters * abs(n))

    def inverse(self) -> "Word":
        return Word(invert_letters(self.letters))

    def cyclically_reduced(self) -> "Word":
        return Word(cyclic_reduce_letters(self.letters))

    def rank_used(self) -> int:
        """One more than the largest generator index appearing."""
        return max((abs(x) for x in self.letters), default=0)

    def syllables(self) -> list[tuple[int, int]]:
        """Run-length form: list of ``(generator index, exponent)``."""
        out: list[tuple[int, int]] = []
        for x in self.letters:
            g, s = abs(x) - 1, (1 if x > 0 else -1)
            if out and out[-1][0] == g and (out[-1][1] > 0) == (s > 0):
                out[-1] = (g, out[-1][1] + s)
            else:
                out.append((g, s))
        return out

    def to_str(self, gens: str = LETTERS) -> str:
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.syllables():
            ch = gens[g] if e > 0 else gens[g].upper()
            parts.append(ch if abs(e) == 1 else f"{ch}^{abs(e)}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Word({self.to_str()!r})"


def free_reduce(w: Word | Sequence[int]) -> Word:
    letters = w.letters if isinstance(w, Word) else tuple(w)
    return Word(free_reduce_letters(letters))


@dataclass(frozen=True)
class Presentation:
    """Generators plus relators; relators are stored cyclically reduced.

    ``dropped`` counts relators that reduced to the empty word at
    construction and were discarded.
    """

    gens: str
    relators: tuple[Word, ...] = ()
    dropped: int = field(default=0, compare=False)

    def __post_init__(self):
        if not self.gens:
            raise ValueError("a presentation needs at least one generator")
        if len(set(self.gens)) != len(self.gens) or not all(c in LETTERS for c in self.gens):
            raise ValueError(f"generators must be distinct lowercase letters, got {self.gens!r}")
        kept = []
        dropped = self.dropped
        for r in self.relators:
            r = r if isinstance(r, Word) else Word(tuple(r))
            if r.rank_used() > len(self.gens):
                raise ValueError(f"relator {r} uses a generator beyond rank {len(self.gens)}")
            r = r.cyclically_reduced()
            if r:
                kept.append(r)
            else:
                dropped += 1
        object.__setattr__(self, "relators", tuple(kept))
        object.__setattr__(self, "dropped", dropped)

    @property
    def rank(self) -> int:
        return len(self.gens)

    @classmethod
    def parse(cls, text: str) -> "Presentation":
        return parse_presentation(text)

    def to_str(self) -> str:
        rels = ", ".join(r.to_str(self.gens) for r in self.relators)
        return f"{','.join(self.gens)} | {rels}"

    def __str__(self) -> str:
        return self.to_str()

    def map_relators(self, e: "Endomorphism", repeats: int = 1) -> "Presentation":
        rels = list(self.relators)
        for _ in range(repeats):
            rels = [e(r) for r in rels]
        return Presentation(self.gens, tuple(rels))


class _WordParser:
    """Recursive-descent parser for words.

    word   := factor*
    factor := atom ('^' '-'? int)?
    atom   := letter | '[' word ',' word ']' | '(' word ')' | '1'
    """

    def __init__(self, text: str, gens: str):
        self.s = re.sub(r"\s+", "", text)
        self.i = 0
        self.gens = gens

    def peek(self) -> str:
        return self.s[self.i] if self.i < len(self.s) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            raise ParseError(f"expected {ch!r} at position {self.i} in {self.s!r}, got {got!r}")
        self.i += 1

    def parse_word_only(self) -> tuple[int, ...]:
        w = self.word()
        if self.i != len(self.s):
            raise ParseError(f"unexpected {self.peek()!r} at position {self.i} in {self.s!r}")
        return w

    def word(self) -> tuple[int, ...]:
        out: list[int] = []
        while self.peek() and self.peek() not in ",])":
            out.extend(self.factor())
        return free_reduce_letters(out)

    def factor(self) -> tuple[int, ...]:
        base = self.atom()
        if self.peek() == "^":
            self.i += 1
            m = re.match(r"-?\d+", self.s[self.i:])
            if not m:
                raise ParseError(f"malformed power at position {self.i} in {self.s!r}")
            self.i += m.end()
            n = int(m.group())
            if n < 0:
                base, n = invert_letters(base), -n
            base = base * n
        return base

    def atom(self) -> tuple[int, ...]:
        ch = self.peek()
        if ch == "[":
            self.i += 1
            u = self.word()
            self.expect(",")
            v = self.word()
            self.expect("]")
            return u + v + invert_letters(u) + invert_letters(v)
        if ch == "(":
            self.i += 1
            u = self.word()
            self.expect(")")
            return u
        if ch == "1":
            self.i += 1
            return ()
        if ch.isalpha():
            self.i += 1
            g = self.gens.find(ch.lower())
            if g < 0:
                raise ParseError(f"unknown letter {ch!r}; generators are {self.gens!r}")
            return ((g + 1) if ch.islower() else -(g + 1),)
        raise ParseError(f"unexpected {ch or 'end of input'!r} at position {self.i} in {self.s!r}")


def _split_top_level(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced bracket in {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ParseError(f"unbalanced bracket in {text!r}")
    parts.append("".join(cur))
    return parts


def parse_presentation(text: str) -> Presentation:
    """Parse ``"a,b | rel, rel, ..."`` into a :class:`Presentation`."""
    if "|" not in text:
        raise ParseError(f"missing '|' separating generators from relators in {text!r}")
    head, _, body = text.partition("|")
    gens = "".join(g.strip() for g in head.split(","))
    if not gens or not all(len(g.strip()) == 1 and g.strip() in LETTERS for g in head.split(",")):
        raise ParseError(f"generators must be single lowercase letters, got {head.strip()!r}")
    if len(set(gens)) != len(gens):
        raise ParseError(f"repeated generator in {head.strip()!r}")
    rels = []
    if body.strip():
        for chunk in _split_top_level(body):
            if not chunk.strip():
                raise ParseError(f"empty relator in {body.strip()!r}")
            rels.append(Word(_WordParser(chunk, gens).parse_word_only()))
    return Presentation(gens, tuple(rels))


@dataclass(frozen=True)
class Endomorphism:
    """A free-group endomorphism given by the image of each generator."""

    images: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(
            im if isinstance(im, Word) else Word(tuple(im)) for im in self.images))

    @classmethod
    def from_strings(cls, *images: str, gens: str = LETTERS) -> "Endomorphism":
        return cls(tuple(Word.parse(s, gens) for s in images))

    @classmethod
    def parse(cls, text: str, gens: str = LETTERS) -> "Endomorphism":
        """Parse ``"a=ab,b=a"`` (every generator of ``gens`` up to the last named)."""
        mapping = {}
        for item in text.split(","):
            lhs, sep, rhs = item.partition("=")
            lhs = lhs.strip()
            if not sep or len(lhs) != 1 or lhs not in gens:
                raise ParseError(f"malformed map entry {item!r}; expected e.g. 'a=ab'")
            mapping[lhs] = Word.parse(rhs, gens)
        n = max(gens.index(g) for g in mapping) + 1
        missing = [gens[i] for i in range(n) if gens[i] not in mapping]
        if missing:
            raise ParseError(f"map does not define {', '.join(missing)}")
        return cls(tuple(mapping[gens[i]] for i in range(n)))

    @property
    def rank(self) -> int:
        return len(self.images)

    def __call__(self, w: Word) -> Word:
        return apply_endomorphism(self, w)

    def __mul__(self, other: "Endomorphism") -> "Endomorphism":
        """Composition: ``(self * other)(w) == self(other(w))``."""
        return Endomorphism(tuple(self(im) for im in other.images))

    def __pow__(self, n: int) -> "Endomorphism":
        if n < 0:
            raise ValueError("endomorphisms need not be invertible")
        out = Endomorphism(tuple(Word((g + 1,)) for g in range(self.rank)))
        for _ in range(n):
            out = self * out
        return out

    def to_str(self, gens: str = LETTERS) -> str:
        return ",".join(f"{gens[i]}={im.to_str(gens)}" for i, im in enumerate(self.images))


def apply_endomorphism(e: Endomorphism, w: Word) -> Word:
    out: list[int] = []
    for x in w.letters:
        g = abs(x) - 1
        if g >= e.rank:
            raise ValueError(f"generator {LETTERS[g]} is outside the map's domain")
        im = e.images[g].letters
        out.extend(im if x > 0 else invert_letters(im))
    return Word(tuple(out))


GOLDEN = Endomorphism.from_strings("ab", "a")
SILVER = Endomorphism.from_strings("aba", "a")
TRIBONACCI = Endomorphism.from_strings("b", "abc", "a")

NAMED_MAPS = {"golden": GOLDEN, "silver": SILVER, "tribonacci": TRIBONACCI}


def named_map(name: str, gens: str = LETTERS) -> Endomorphism:
    """Resolve ``golden``, ``silver``, ``tribonacci`` or ``custom:a=...,b=...``."""
    if name in NAMED_MAPS:
        return NAMED_MAPS[name]
    if name.startswith("custom:"):
        return Endomorphism.parse(name[len("custom:"):], gens)
    raise ValueError(f"unknown map {name!r}; use golden, silver, tribonacci or custom:<a=..,b=..>")
