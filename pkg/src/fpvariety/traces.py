"""Trace polynomials of free-group words in Fricke coordinates.

For rank 2 the coordinates are ``(x, y, z) = (tr a, tr b, tr ab)``.  For rank 3
they are ``(tr a, tr b, tr c, tr ab, tr ac, tr bc, tr abc)`` in that variable
order.  ``trace_poly`` rewrites a word with SL(2) trace identities:

* ``tr 1 = 2``, ``tr w^-1 = tr w``, traces are conjugation invariant;
* ``tr(UV) + tr(UV^-1) = tr U tr V``;
* ``tr(abc) + tr(acb) = t_a t_bc + t_b t_ac + t_c t_ab - t_a t_b t_c``.

Rank-3 results are reduced modulo ``t_abc^2 = P t_abc - Q`` (the product
``tr(abc) tr(acb) = Q``), which makes them canonical: at most linear in t_abc.

Every rewrite produces words strictly smaller under the measure
``(length, mixed, inverse count, non-basic)``; a rule that fails to decrease
it raises :class:`TraceRewriteError`.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Sequence

from .polyring import SparsePoly
from .words import Word, cyclic_reduce_letters, free_reduce_letters, invert_letters


class TraceRewriteError(RuntimeError):
    """Internal error: a rewrite step did not shrink the word."""


@dataclass(frozen=True)
class TraceCoordinates:
    rank: int

    def __post_init__(self):
        if self.rank not in (2, 3):
            raise ValueError(f"trace coordinates exist for rank 2 or 3 only, got rank {self.rank}")

    @property
    def basic_words(self) -> tuple[Word, ...]:
        spelled = ("a", "b", "ab") if self.rank == 2 else ("a", "b", "c", "ab", "ac", "bc", "abc")
        return tuple(Word.parse(s) for s in spelled)

    @property
    def nvars(self) -> int:
        return 3 if self.rank == 2 else 7

    @property
    def names(self) -> tuple[str, ...]:
        if self.rank == 2:
            return ("x", "y", "z")
        return ("ta", "tb", "tc", "tab", "tac", "tbc", "tabc")


def _code(x: int) -> int:
    return 2 * (abs(x) - 1) + (x < 0)


def canonical_key(letters: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least rotation of the cyclic reduction of ``w`` or ``w^-1``.

    Letters are ordered ``a < A < b < B < ...``.
    """
    w = cyclic_reduce_letters(letters)
    if not w:
        return w
    best = None
    best_codes = None
    for cand in (w, invert_letters(w)):
        for i in range(len(cand)):
            rot = cand[i:] + cand[:i]
            codes = tuple(_code(x) for x in rot)
            if best_codes is None or codes < best_codes:
                best, best_codes = rot, codes
    return best


def _measure(w: tuple[int, ...], basic: frozenset) -> tuple[int, int, int, int]:
    n = len(w)
    seen_sign: dict[int, set[int]] = {}
    same_sign = False
    for x in w:
        s = seen_sign.setdefault(abs(x), set())
        if (x > 0) in s:
            same_sign = True
        s.add(x > 0)
    repeated = any(len(s) == 2 for s in seen_sign.values()) or same_sign
    mixed = int(repeated and not same_sign)
    inv = sum(1 for x in w if x < 0)
    nonbasic = int(bool(w) and w not in basic)
    return (n, mixed, min(inv, n - inv), nonbasic)


class TraceEngine:
    """Memoising trace-polynomial evaluator for one rank.

    The cache maps canonical cyclic words to polynomials.  Inserts happen under
    a lock, so one engine may be shared between threads.
    """

    def __init__(self, rank: int):
        self.coords = TraceCoordinates(rank)
        self.rank = rank
        n = self.coords.nvars
        self._vars = SparsePoly.gens(n)
        self._cache: dict[tuple[int, ...], SparsePoly] = {(): SparsePoly.const(n, 2)}
        self._lock = threading.Lock()
        self._basic: dict[tuple[int, ...], SparsePoly] = {}
        for i, w in enumerate(self.coords.basic_words):
            self._basic[canonical_key(w.letters)] = self._vars[i]
        self._basic_keys = frozenset(self._basic)
        self._cache.update(self._basic)
        if rank == 3:
            ta, tb, tc, tab, tac, tbc, tabc = self._vars
            self._acb_sum = ta * tbc + tb * tac + tc * tab - ta * tb * tc
            self._acb_key = canonical_key(Word.parse("acb").letters)
            self._abc_product = (ta ** 2 + tb ** 2 + tc ** 2 + tab ** 2 + tac ** 2 + tbc ** 2
                                 - ta * tb * tab - ta * tc * tac - tb * tc * tbc
                                 + tab * tbc * tac - 4)

    def reduce(self, p: SparsePoly) -> SparsePoly:
        """Rank 3: rewrite ``p`` to be at most linear in ``t_abc``."""
        if self.rank != 3 or p.degree_in(6) <= 1:
            return p
        low: dict = {}
        high: dict = {}
        for e, c in p.terms.items():
            if e[6] >= 2:
                high[e[:6] + (e[6] - 2,)] = c
            else:
                low[e] = c
        sq = self._acb_sum * self._vars[6] - self._abc_product
        return self.reduce(SparsePoly(7, low) + SparsePoly(7, high) * sq)

    def __call__(self, w: Word | Sequence[int]) -> SparsePoly:
        letters = w.letters if isinstance(w, Word) else tuple(w)
        if letters and max(abs(x) for x in letters) > self.rank:
            raise ValueError(f"word uses a generator beyond rank {self.rank}")
        return self._trace(canonical_key(letters))

    def cache_size(self) -> int:
        return len(self._cache)

    def _child(self, parent_measure, letters) -> SparsePoly:
        key = canonical_key(letters)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if _measure(key, self._basic_keys) >= parent_measure:
            raise TraceRewriteError(f"rewrite of a word did not decrease its complexity: {Word(key)}")
        return self._trace(key)

    def _trace(self, w: tuple[int, ...]) -> SparsePoly:
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        m = _measure(w, self._basic_keys)
        result = self.reduce(self._rewrite(w, m))
        with self._lock:
            self._cache.setdefault(w, result)
        return result

    def _rewrite(self, w: tuple[int, ...], m) -> SparsePoly:
        n = len(w)
        child = self._child
        # g g V:  tr(g gV) = tr g tr gV - tr V
        for i in range(n):
            if w[i] == w[(i + 1) % n]:
                r = w[i:] + w[:i]
                g, v = r[:1], r[2:]
                return child(m, g) * child(m, g + v) - child(m, v)
        # g U g V with equal signs: tr(gU gV) = tr gU tr gV - tr(U V^-1)
        best = None
        for i in range(n):
            for j in range(i + 2, n):
                if w[i] == w[j]:
                    balance = abs((j - i) - (n - (j - i)))
                    if best is None or balance < best[0]:
                        best = (balance, i, j)
        if best is not None:
            _, i, j = best
            r = w[i:] + w[:i]
            k = j - i
            gu, gv = r[:k], r[k:]
            u, v = gu[1:], gv[1:]
            return child(m, gu) * child(m, gv) - child(m, free_reduce_letters(u + invert_letters(v)))
        # g U g^-1 V: tr(gU . g^-1V) = tr gU tr g^-1V - tr(gU V^-1 g)
        for i in range(n):
            for j in range(i + 1, n):
                if w[i] == -w[j]:
                    r = w[i:] + w[:i]
                    k = j - i
                    gu, gv = r[:k], r[k:]
                    return child(m, gu) * child(m, gv) - child(m, free_reduce_letters(gu + invert_letters(gv)))
        # distinct generators from here on
        if any(x < 0 for x in w):
            if 2 * sum(1 for x in w if x < 0) > n:
                w = invert_letters(w)
            i = next(i for i, x in enumerate(w) if x < 0)
            r = w[i + 1:] + w[:i + 1]
            u, g = r[:-1], r[-1:]
            return child(m, u) * child(m, (-g[0],)) - child(m, u + (-g[0],))
        if self.rank == 3 and w == self._acb_key:
            return self._acb_sum - self._vars[6]
        raise TraceRewriteError(f"no rewrite rule applies to {Word(w)}")


_ENGINES: dict[int, TraceEngine] = {}
_ENGINES_LOCK = threading.Lock()


def engine(rank: int) -> TraceEngine:
    with _ENGINES_LOCK:
        if rank not in _ENGINES:
            _ENGINES[rank] = TraceEngine(rank)
        return _ENGINES[rank]


def trace_poly(w: Word | str, rank: int | TraceCoordinates = 2) -> SparsePoly:
    """Polynomial in the Fricke coordinates equal to ``tr rho(w)`` for every SL(2) rep."""
    if isinstance(rank, TraceCoordinates):
        rank = rank.rank
    if isinstance(w, str):
        w = Word.parse(w)
    return engine(rank)(w)


# --- numeric oracle --------------------------------------------------------

Mat = tuple[int, int, int, int]


def _mul(p: Mat, q: Mat) -> Mat:
    a, b, c, d = p
    e, f, g, h = q
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def numeric_trace_oracle(w: Word | str, matrices: Sequence) -> int:
    """Exact trace of the product of integer det-1 matrices spelled by ``w``.

    ``matrices[i]`` is a 2x2 nested sequence for generator ``i``; inverses use
    the adjugate.
    """
    if isinstance(w, str):
        w = Word.parse(w)
    mats: list[Mat] = []
    invs: list[Mat] = []
    for m in matrices:
        a, b = int(m[0][0]), int(m[0][1])
        c, d = int(m[1][0]), int(m[1][1])
        if a * d - b * c != 1:
            raise ValueError(f"matrix {m} does not have determinant 1")
        mats.append((a, b, c, d))
        invs.append((d, -b, -c, a))
    acc: Mat = (1, 0, 0, 1)
    for x in w.letters:
        g = abs(x) - 1
        if g >= len(mats):
            raise ValueError(f"no matrix supplied for generator {g}")
        acc = _mul(acc, mats[g] if x > 0 else invs[g])
    return acc[0] + acc[3]


def basic_traces(matrices: Sequence, rank: int | None = None) -> list[int]:
    """Values of the Fricke coordinates at the given matrices."""
    rank = len(matrices) if rank is None else rank
    return [numeric_trace_oracle(w, matrices) for w in TraceCoordinates(rank).basic_words]
