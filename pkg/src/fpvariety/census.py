"""Coset enumeration and low-index subgroup census.

Columns of a coset table are ordered ``a, A, b, B, ...``: column ``2g`` is
generator ``g`` and ``2g + 1`` its inverse.  Cosets are 0-based internally and
coset 0 is the subgroup itself.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .words import Presentation, Word

log = logging.getLogger(__name__)

DEFAULT_MAX_COSETS = 10 ** 6


class CosetLimitError(RuntimeError):
    """Enumeration needed more cosets than allowed."""


def _col(x: int) -> int:
    return 2 * (abs(x) - 1) + (x < 0)


@dataclass(frozen=True)
class CosetTable:
    """A closed coset table; ``action[g][i]`` is the image of coset ``i`` under generator ``g``."""

    n: int
    action: tuple[tuple[int, ...], ...]
    subgroup_gens: tuple[Word, ...] = ()

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], rank: int,
                  subgroup_gens: Sequence[Word] = ()) -> "CosetTable":
        action = tuple(tuple(row[2 * g] for row in rows) for g in range(rank))
        return cls(len(rows), action, tuple(subgroup_gens))

    @property
    def rank(self) -> int:
        return len(self.action)

    def inverse_action(self, g: int) -> tuple[int, ...]:
        inv = [0] * self.n
        for i, j in enumerate(self.action[g]):
            inv[j] = i
        return tuple(inv)

    def act(self, coset: int, w: Word) -> int:
        invs = {}
        for x in w.letters:
            g = abs(x) - 1
            if x > 0:
                coset = self.action[g][coset]
            else:
                if g not in invs:
                    invs[g] = self.inverse_action(g)
                coset = invs[g][coset]
        return coset

    def is_permutation(self) -> bool:
        return all(sorted(p) == list(range(self.n)) for p in self.action)

    def satisfies(self, relators: Sequence[Word]) -> bool:
        """Every relator acts as the identity on every coset."""
        return all(self.act(c, r) == c for r in relators for c in range(self.n))

    def is_transitive(self) -> bool:
        seen, stack = {0}, [0]
        while stack:
            c = stack.pop()
            for g in range(self.rank):
                for d in (self.action[g][c], self.inverse_action(g)[c]):
                    if d not in seen:
                        seen.add(d)
                        stack.append(d)
        return len(seen) == self.n

    def check(self, p: Presentation) -> None:
        """Raise ``AssertionError`` unless closed, relator-consistent and fixing the subgroup."""
        assert self.is_permutation(), "coset table is not closed"
        assert self.satisfies(p.relators), "a relator does not act trivially"
        assert all(self.act(0, w) == 0 for w in self.subgroup_gens), "subgroup generator moves coset 1"

    def to_json(self) -> dict:
        return {"n": self.n, "action": [[i + 1 for i in perm] for perm in self.action]}


def perm_rep(t: CosetTable) -> list[np.ndarray]:
    """One permutation matrix per generator, ``M[j, i] = 1`` when coset ``i`` maps to ``j``."""
    mats = []
    for perm in t.action:
        m = np.zeros((t.n, t.n), dtype=int)
        m[list(perm), list(range(t.n))] = 1
        mats.append(m)
    return mats


def schreier_generators(t: CosetTable) -> list[Word]:
    """Generators of the subgroup fixing coset 0, read off a spanning tree."""
    rank = t.rank
    rep: dict[int, Word] = {0: Word()}
    queue = [0]
    while queue:
        c = queue.pop(0)
        for g in range(rank):
            for sign, d in ((1, t.action[g][c]), (-1, t.inverse_action(g)[c])):
                if d not in rep:
                    rep[d] = rep[c] * Word((sign * (g + 1),))
                    queue.append(d)
    gens = []
    seen = set()
    for c in range(t.n):
        for g in range(rank):
            d = t.action[g][c]
            w = rep[c] * Word((g + 1,)) * rep[d].inverse()
            if w and w not in seen and w.inverse() not in seen:
                seen.add(w)
                gens.append(w)
    return gens


# --- Todd-Coxeter -----------------------------------------------------------

class _Enumerator:
    """HLT coset enumeration with union-find coincidence processing."""

    def __init__(self, rank: int, max_cosets: int):
        self.ncols = 2 * rank
        self.max_cosets = max_cosets
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.parent = [0]
        self.live = 1

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def define(self, c: int, col: int) -> int:
        if self.live >= self.max_cosets:
            raise CosetLimitError(f"coset enumeration exceeded {self.max_cosets} cosets")
        d = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(d)
        self.live += 1
        self.table[c][col] = d
        self.table[d][col ^ 1] = c
        return d

    def merge(self, k: int, l: int, queue: list[int]) -> None:
        a, b = self.rep(k), self.rep(l)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            self.live -= 1
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for col in range(self.ncols):
                d = self.table[g][col]
                if d < 0:
                    continue
                self.table[d][col ^ 1] = -1
                mu, nu = self.rep(g), self.rep(d)
                if self.table[mu][col] >= 0:
                    self.merge(nu, self.table[mu][col], queue)
                elif self.table[nu][col ^ 1] >= 0:
                    self.merge(mu, self.table[nu][col ^ 1], queue)
                else:
                    self.table[mu][col] = nu
                    self.table[nu][col ^ 1] = mu

    def scan_and_fill(self, c: int, word: Sequence[int]) -> None:
        table = self.table
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] >= 0:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][word[j] ^ 1] >= 0:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])

    def is_live(self, c: int) -> bool:
        return self.parent[c] == c


def todd_coxeter(p: Presentation, subgroup: Sequence[Word] = (),
                 max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate the cosets of ``<subgroup>`` in ``p``; coset 0 is the subgroup."""
    for w in subgroup:
        if w.rank_used() > p.rank:
            raise ValueError(f"subgroup word {w} uses a generator outside the presentation")
    en = _Enumerator(p.rank, max_cosets)
    rels = [[_col(x) for x in r.letters] for r in p.relators]
    for w in subgroup:
        en.scan_and_fill(0, [_col(x) for x in w.letters])
    c = 0
    while c < len(en.table):
        for r in rels:
            if not en.is_live(c):
                break
            en.scan_and_fill(c, r)
        if en.is_live(c):
            for col in range(en.ncols):
                if en.table[c][col] < 0:
                    en.define(c, col)
        c += 1
    live = [c for c in range(len(en.table)) if en.is_live(c)]
    rows = _standardize([en.table[c] for c in live], live)
    return CosetTable.from_rows(rows, p.rank, subgroup)


def _standardize(rows: list[list[int]], labels: list[int]) -> list[list[int]]:
    """Relabel so cosets appear in order of first occurrence in a row-major scan."""
    index = {lab: i for i, lab in enumerate(labels)}
    new = {0: 0}
    order = [0]
    k = 0
    while k < len(order):
        old = order[k]
        for x in rows[old]:
            t = index[x]
            if t not in new:
                new[t] = len(order)
                order.append(t)
        k += 1
    return [[new[index[x]] for x in rows[old]] for old in order]


# --- low-index census -----------------------------------------------------

@dataclass
class CensusSequence:
    counts: list[int]
    index_bound: int
    tables: dict[int, list[CosetTable]] = field(default_factory=dict)
    seconds: list[float] = field(default_factory=list)

    @property
    def eta(self) -> list[int]:
        return self.counts

    def to_json(self, with_tables: bool = False) -> dict:
        out = {"schema": 1, "eta": self.counts, "N": self.index_bound}
        if with_tables:
            out["tables"] = {str(d): [t.to_json() for t in ts] for d, ts in sorted(self.tables.items())}
        return out


class _LowIndex:
    """Backtracking over standardized partial coset tables with at most ``N`` cosets.

    Each complete table that is least among its re-based relabelings stands
    for one conjugacy class of subgroups.
    """

    def __init__(self, p: Presentation, N: int, keep_tables: bool):
        self.rank = p.rank
        self.ncols = 2 * p.rank
        self.N = N
        self.keep = keep_tables
        rot: list[list[tuple[int, ...]]] = [[] for _ in range(self.ncols)]
        for r in p.relators:
            cols = [_col(x) for x in r.letters]
            seen = set()
            for w in (cols, [c ^ 1 for c in reversed(cols)]):
                for i in range(len(w)):
                    cyc = tuple(w[i:] + w[:i])
                    if cyc not in seen:
                        seen.add(cyc)
                        rot[cyc[0]].append(cyc)
        self.rotations = rot
        self.table = [[-1] * self.ncols for _ in range(N)]
        self.n = 1
        self.counts = [0] * (N + 1)
        self.found: dict[int, list[CosetTable]] = {}

    # table edits are logged so they can be undone on backtrack
    def assign(self, c: int, col: int, d: int, trail: list) -> bool:
        t = self.table
        if t[c][col] >= 0:
            return t[c][col] == d
        if t[d][col ^ 1] >= 0:
            return False
        t[c][col] = d
        t[d][col ^ 1] = c
        trail.append((c, col))
        trail.append((d, col ^ 1))
        return True

    def undo(self, trail: list, mark: int) -> None:
        t = self.table
        while len(trail) > mark:
            c, col = trail.pop()
            t[c][col] = -1

    def deduce(self, c: int, col: int, trail: list) -> bool:
        """Scan relator cycles through new entries; fill single gaps; False on conflict."""
        t = self.table
        stack = [(c, col), (t[c][col], col ^ 1)]
        while stack:
            c0, col0 = stack.pop()
            for w in self.rotations[col0]:
                f, i, j = c0, 0, len(w) - 1
                while i <= j and t[f][w[i]] >= 0:
                    f = t[f][w[i]]
                    i += 1
                if i > j:
                    if f != c0:
                        return False
                    continue
                b = c0
                while j >= i and t[b][w[j] ^ 1] >= 0:
                    b = t[b][w[j] ^ 1]
                    j -= 1
                if j < i:
                    if f != b:
                        return False
                elif i == j:
                    if t[b][w[i] ^ 1] >= 0:
                        return False
                    t[f][w[i]] = b
                    t[b][w[i] ^ 1] = f
                    trail.append((f, w[i]))
                    trail.append((b, w[i] ^ 1))
                    stack.append((f, w[i]))
                    stack.append((b, w[i] ^ 1))
        return True

    def canonical(self) -> bool:
        """False if rebasing at another coset gives a lexicographically smaller table."""
        t = self.table
        n, ncols = self.n, self.ncols
        for k in range(1, n):
            label = [-1] * n
            order = [k]
            label[k] = 0
            r = 0
            decided = False
            while r < len(order) and not decided:
                row = t[order[r]]
                orig = t[r]
                for col in range(ncols):
                    x = row[col]
                    y = orig[col]
                    if x < 0 or y < 0:
                        decided = True
                        break
                    if label[x] < 0:
                        label[x] = len(order)
                        order.append(x)
                    lx = label[x]
                    if lx < y:
                        return False
                    if lx > y:
                        decided = True
                        break
                r += 1
        return True

    def first_gap(self) -> tuple[int, int] | None:
        t = self.table
        for c in range(self.n):
            row = t[c]
            for col in range(self.ncols):
                if row[col] < 0:
                    return c, col
        return None

    def choices(self, c: int, col: int) -> list[int]:
        t = self.table
        opts = [d for d in range(self.n) if t[d][col ^ 1] < 0]
        if self.n < self.N:
            opts.append(self.n)
        return opts

    def search(self, trail: list) -> None:
        gap = self.first_gap()
        if gap is None:
            self.counts[self.n] += 1
            if self.keep:
                rows = [list(r) for r in self.table[:self.n]]
                self.found.setdefault(self.n, []).append(CosetTable.from_rows(rows, self.rank))
            return
        c, col = gap
        for d in self.choices(c, col):
            mark = len(trail)
            grew = d == self.n
            if grew:
                self.n += 1
            if self.assign(c, col, d, trail) and self.deduce(c, col, trail) and self._bounded() \
                    and self.canonical():
                self.search(trail)
            self.undo(trail, mark)
            if grew:
                self.n -= 1

    def _bounded(self) -> bool:
        return True

    def run_branch(self, first_choice: int | None = None) -> None:
        if self.ncols == 0:
            self.counts[1] = 1
            return
        if first_choice is None:
            self.search([])
            return
        trail: list = []
        c, col = 0, 0
        d = first_choice
        if d == self.n:
            self.n += 1
        if self.assign(c, col, d, trail) and self.deduce(c, col, trail) and self.canonical():
            self.search(trail)


def _branch_worker(args):
    text, N, keep, choice = args
    from .words import parse_presentation
    li = _LowIndex(parse_presentation(text), N, keep)
    li.run_branch(choice)
    return li.counts, li.found


def low_index_census(p: Presentation, N: int, keep_tables: bool = False,
                     jobs: int = 1) -> CensusSequence:
    """Number of conjugacy classes of subgroups of each index ``1..N``."""
    if N < 1:
        raise ValueError("index bound must be at least 1")
    start = time.perf_counter()
    if jobs > 1 and p.rank >= 1 and N > 1:
        # split on the image of coset 0 under the first generator
        choices = [0, 1]
        args = [(p.to_str(), N, keep_tables, ch) for ch in choices]
        counts = [0] * (N + 1)
        found: dict[int, list[CosetTable]] = {}
        with ProcessPoolExecutor(max_workers=min(jobs, len(choices))) as ex:
            for cs, fd in ex.map(_branch_worker, args):
                counts = [a + b for a, b in zip(counts, cs)]
                for d, ts in fd.items():
                    found.setdefault(d, []).extend(ts)
        for d in found:
            found[d].sort(key=lambda t: t.action)
    else:
        li = _LowIndex(p, N, keep_tables)
        li.run_branch()
        counts, found = li.counts, li.found
    elapsed = time.perf_counter() - start
    log.info("census to index %d: %s in %.2fs", N, counts[1:], elapsed)
    return CensusSequence(counts[1:], N, found, [elapsed])
