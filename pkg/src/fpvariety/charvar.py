"""SL(2, C) character-variety ideals of finitely presented groups.

For each relator ``r`` and test word ``s`` the condition ``tr(r s) = tr(s)``
gives a polynomial in the Fricke coordinates.  The GCD of these generators
(the *hypersurface part*) is the codimension-one piece of the variety; known
factors are then checked against it by exact division.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .catalog import factor_library
from .polyring import SparsePoly, default_names, gcd_list
from .traces import TraceCoordinates, engine
from .words import Presentation, Word

_TEST_WORDS = {
    2: ("", "a", "b", "ab"),
    3: ("", "a", "b", "c", "ab", "ac", "bc", "abc"),
}

COORDINATE_WORDS = {
    2: ("tr a", "tr b", "tr ab"),
    3: ("tr a", "tr b", "tr c", "tr ab", "tr ac", "tr bc", "tr abc"),
}


def probe_words(rank: int) -> tuple[Word, ...]:
    TraceCoordinates(rank)
    return tuple(Word.parse(s) for s in _TEST_WORDS[rank])


def ideal_generators(p: Presentation) -> list[SparsePoly]:
    """Primitive, deduplicated ``tr(r s) - tr(s)`` over relators and test words."""
    if p.rank > 3:
        raise ValueError(f"character varieties are computed for rank 2 or 3, got rank {p.rank}")
    rank = max(p.rank, 2)
    tr = engine(rank)
    out: list[SparsePoly] = []
    seen = set()
    for r in p.relators:
        for s in probe_words(rank):
            g = tr(r * s) - tr(s)
            if g.is_zero():
                continue
            g = g.primitive()
            if g not in seen:
                seen.add(g)
                out.append(g)
    return out


def hypersurface_part(gens: Sequence[SparsePoly]) -> SparsePoly:
    nonzero = [g for g in gens if not g.is_zero()]
    if not nonzero:
        raise ValueError("hypersurface part needs at least one nonzero generator")
    return gcd_list(nonzero)


@dataclass(frozen=True)
class FactorCheck:
    name: str
    poly: SparsePoly
    multiplicity: int
    divides_generators: tuple[int, ...] = ()

    @property
    def divides(self) -> bool:
        return self.multiplicity >= 1


def multiplicity(h: SparsePoly, f: SparsePoly) -> tuple[int, SparsePoly]:
    """Largest ``m`` with ``f^m | h`` and the cofactor ``h / f^m``."""
    if f.is_constant():
        return 0, h
    m = 0
    while not h.is_zero():
        q = h.try_divide(f)
        if q is None:
            break
        h, m = q, m + 1
    return m, h


def verify_factors(h: SparsePoly, candidates: Mapping[str, SparsePoly] | Sequence[SparsePoly],
                   generators: Sequence[SparsePoly] = ()) -> tuple[list[FactorCheck], SparsePoly]:
    """Trial-divide ``h`` by each candidate; returns the checks and the residual.

    A constant candidate gets multiplicity 0.  ``divides_generators`` lists the
    generators a candidate divides, so a factor that misses ``h`` but divides
    some generator is visible.
    """
    if not isinstance(candidates, Mapping):
        candidates = {f"f{i}": c for i, c in enumerate(candidates)}
    checks = []
    residual = h
    for name, c in candidates.items():
        if c.nvars != h.nvars:
            raise ValueError(f"candidate {name} has {c.nvars} variables, expected {h.nvars}")
        m, residual = multiplicity(residual, c)
        hits = tuple(i for i, g in enumerate(generators) if not c.is_constant() and c.divides(g))
        checks.append(FactorCheck(name, c, m, hits))
    if not residual.is_zero():
        lc = residual.leading_coefficient()
        residual = residual if lc > 0 else -residual
    return checks, residual


def _linear_var(p: SparsePoly) -> int | None:
    for i in sorted(p.variables()):
        if p.degree_in(i) == 1:
            return i
    return None


def _cannot_divide(h: SparsePoly, c: SparsePoly, rng: random.Random, trials: int = 3) -> bool:
    """Cheap certificate that ``c`` does not divide ``h``.

    Solve ``c = 0`` for a variable in which ``c`` is linear at a random point;
    ``h`` nonzero there proves non-divisibility.
    """
    v = _linear_var(c)
    if v is None:
        return False
    n = c.nvars
    for _ in range(trials):
        pt = [Fraction(rng.randint(-50, 50)) for _ in range(n)]
        pt[v] = Fraction(0)
        c0 = c.evaluate(pt)
        pt[v] = Fraction(1)
        c1 = c.evaluate(pt) - c0
        if c1 == 0:
            continue
        pt[v] = -c0 / c1
        if h.evaluate(pt) != 0:
            return True
    return False


def match_variables(h: SparsePoly, candidate: SparsePoly) -> tuple[int, ...] | None:
    """First variable assignment ``perm`` with ``candidate.rename(perm) | h``.

    Variable ``i`` of the candidate is sent to variable ``perm[i]`` of ``h``;
    permutations are tried in lexicographic order.  ``None`` if none works.
    """
    if h.nvars != candidate.nvars:
        raise ValueError("h and candidate must live in the same ring")
    rng = random.Random(0)
    tried: set[SparsePoly] = set()
    for perm in itertools.permutations(range(h.nvars)):
        c = candidate.rename(perm)
        if c in tried:
            continue
        tried.add(c)
        if h.is_zero() or c.is_constant():
            return perm
        if _cannot_divide(h, c, rng):
            continue
        if c.divides(h):
            return perm
    return None


@dataclass
class VariableMatch:
    name: str
    target: str
    perm: tuple[int, ...] | None


@dataclass
class CharVarietyResult:
    presentation: Presentation
    generators: list[SparsePoly]
    hypersurface: SparsePoly
    verified_factors: list[FactorCheck]
    residual: SparsePoly
    matches: list[VariableMatch] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return max(self.presentation.rank, 2)

    @property
    def nvars(self) -> int:
        return TraceCoordinates(self.rank).nvars

    def factored_check(self) -> bool:
        """Product of verified factors times the residual reproduces the hypersurface."""
        prod = self.residual
        for f in self.verified_factors:
            prod = prod * f.poly ** f.multiplicity
        return prod.equal_up_to_sign(self.hypersurface)

    def to_json(self) -> dict:
        names = default_names(self.nvars)
        return {
            "schema": 1,
            "presentation": self.presentation.to_str(),
            "variables": dict(zip(names, COORDINATE_WORDS[self.rank])),
            "generators": [g.to_str() for g in self.generators],
            "hypersurface": self.hypersurface.to_str(),
            "factors": [
                {"name": f.name, "polynomial": f.poly.to_str(), "multiplicity": f.multiplicity,
                 "divides": f.divides, "divides_generators": list(f.divides_generators)}
                for f in self.verified_factors
            ],
            "residual": self.residual.to_str(),
            "matches": [
                {"name": m.name, "target": m.target,
                 "assignment": None if m.perm is None else {names[i]: names[j] for i, j in enumerate(m.perm)}}
                for m in self.matches
            ],
        }


def character_variety(p: Presentation, candidates: Mapping[str, SparsePoly] | None = None,
                      match: Iterable[str] = ()) -> CharVarietyResult:
    """Generators, hypersurface part and factor table for ``p``.

    ``candidates`` defaults to the bundled factor library for the rank.  Names
    in ``match`` are additionally searched with :func:`match_variables` against
    the hypersurface and then each generator.
    """
    gens = ideal_generators(p)
    rank = max(p.rank, 2)
    n = TraceCoordinates(rank).nvars
    h = hypersurface_part(gens) if gens else SparsePoly.zero(n)
    if candidates is None:
        candidates = factor_library(rank)
    checks, residual = verify_factors(h, candidates, gens) if not h.is_zero() else (
        [FactorCheck(k, c, 0) for k, c in candidates.items()], h)
    result = CharVarietyResult(p, gens, h, checks, residual)
    for name in match:
        cand = candidates[name]
        perm = match_variables(h, cand) if not h.is_constant() else None
        if perm is not None:
            result.matches.append(VariableMatch(name, "hypersurface", perm))
            continue
        for i, g in enumerate(gens):
            perm = match_variables(g, cand)
            if perm is not None:
                result.matches.append(VariableMatch(name, f"generator {i}", perm))
                break
        else:
            result.matches.append(VariableMatch(name, "none", None))
    return result
