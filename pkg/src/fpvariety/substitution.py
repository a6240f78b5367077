"""Abelianized substitution matrices, Perron-Frobenius data and census invariance."""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from .census import low_index_census
from .polyring import SparsePoly
from .words import Endomorphism, Presentation

Matrix = list[list[int]]


def substitution_matrix(e: Endomorphism, n: int | None = None) -> Matrix:
    """Entry ``(i, j)`` counts generator ``i`` in the image of generator ``j`` (inverses count too)."""
    n = e.rank if n is None else n
    m = [[0] * n for _ in range(n)]
    for j, im in enumerate(e.images):
        for x in im.letters:
            i = abs(x) - 1
            if i >= n:
                raise ValueError(f"image of generator {j} leaves the {n}-letter alphabet")
            m[i][j] += 1
    return m


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, k, p = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(p)] for i in range(n)]


def _check_square(m: Sequence[Sequence[int]]) -> Matrix:
    m = [[int(v) for v in row] for row in m]
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise ValueError("substitution matrix must be square and nonempty")
    if any(v < 0 for row in m for v in row):
        raise ValueError("substitution matrix must be non-negative")
    return m


def is_primitive(m: Sequence[Sequence[int]]) -> tuple[bool, int | None]:
    """Whether some power is strictly positive, with the least such exponent.

    Wielandt's bound ``(n-1)^2 + 1`` caps the search.
    """
    m = _check_square(m)
    n = len(m)
    # only the zero pattern matters; keep entries 0/1 so powers stay small
    pat = [[1 if v else 0 for v in row] for row in m]
    p = pat
    for k in range(1, (n - 1) ** 2 + 2):
        if all(v for row in p for v in row):
            return True, k
        p = [[1 if v else 0 for v in row] for row in matmul(p, pat)]
    return False, None


def char_poly(m: Sequence[Sequence[int]]) -> SparsePoly:
    """``det(x I - m)`` by Faddeev-LeVerrier in exact rationals."""
    m = _check_square(m)
    n = len(m)
    a = [[Fraction(v) for v in row] for row in m]
    coeffs = [Fraction(1)]
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        for i in range(n):
            mk[i][i] += coeffs[-1]
        mk = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(mk[i][i] for i in range(n)) / k
        coeffs.append(c)
    terms = {}
    for k, c in enumerate(coeffs):
        assert c.denominator == 1
        if c:
            terms[(n - k,)] = int(c)
    return SparsePoly(1, terms)


def _poly_coeffs(p: SparsePoly) -> list[Fraction]:
    """Dense coefficients, highest degree first."""
    d = p.degree()
    out = [Fraction(0)] * (d + 1)
    for (e,), c in p.terms.items():
        out[d - e] = Fraction(c)
    return out


def _eval(c: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for v in c:
        acc = acc * x + v
    return acc


def _rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and a:
        q = a[0] / b[0]
        for i in range(len(b)):
            a[i] -= q * b[i]
        a.pop(0)
    while a and a[0] == 0:
        a.pop(0)
    return a


def _sturm(c: list[Fraction]) -> list[list[Fraction]]:
    d = len(c) - 1
    dc = [c[i] * (d - i) for i in range(d)]
    seq = [c, dc]
    while True:
        r = _rem(seq[-2], seq[-1])
        if not r:
            return seq
        seq.append([-v for v in r])


def _sign_changes(seq, x: Fraction) -> int:
    signs = [s for s in (_eval(p, x) for p in seq) if s != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))


def largest_real_root(p: SparsePoly, upper: int, digits: int = 30) -> Decimal:
    """Largest real root of ``p`` in ``(-1, upper]`` by Sturm-guided bisection.

    The lower end sits below 0 so a nilpotent matrix (spectral radius 0) is covered.
    """
    c = _poly_coeffs(p)
    seq = _sturm(c)
    lo, hi = Fraction(-1), Fraction(upper)
    if _sign_changes(seq, lo) - _sign_changes(seq, hi) == 0:
        raise ValueError("no real root in (-1, upper]")
    eps = Fraction(1, 10 ** (digits + 2))
    while hi - lo > eps:
        mid = (lo + hi) / 2
        if _sign_changes(seq, mid) - _sign_changes(seq, hi) > 0:
            lo = mid
        else:
            hi = mid
    with localcontext() as ctx:
        ctx.prec = digits + 5
        val = Decimal(hi.numerator) / Decimal(hi.denominator)
        return +val.quantize(Decimal(1).scaleb(-digits))


@dataclass
class PFData:
    primitive: bool
    exponent: int | None
    char_poly: SparsePoly
    pf_eigenvalue: Decimal


def pf_analysis(m: Sequence[Sequence[int]]) -> PFData:
    """Primitivity, characteristic polynomial and dominant eigenvalue (30 digits)."""
    m = _check_square(m)
    if all(v == 0 for row in m for v in row):
        raise ValueError("zero matrix has no Perron-Frobenius eigenvalue")
    prim, k = is_primitive(m)
    cp = char_poly(m)
    # max column sum bounds the spectral radius
    bound = max(sum(m[i][j] for i in range(len(m))) for j in range(len(m))) + 1
    root = largest_real_root(cp, bound)
    return PFData(prim, k, cp, root)


@dataclass
class IndexComparison:
    index: int
    original: int
    substituted: int

    @property
    def equal(self) -> bool:
        return self.original == self.substituted


@dataclass
class SubstitutionReport:
    matrix: Matrix
    primitive: bool
    char_poly: SparsePoly
    pf_eigenvalue: Decimal
    invariance: list[IndexComparison] = field(default_factory=list)
    substituted: Presentation | None = None

    @property
    def invariant(self) -> bool:
        return all(c.equal for c in self.invariance)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "matrix": self.matrix,
            "primitive": self.primitive,
            "char_poly": self.char_poly.to_str(("x",)),
            "pf_eigenvalue": str(self.pf_eigenvalue),
            "substituted": None if self.substituted is None else self.substituted.to_str(),
            "invariance": [
                {"index": c.index, "eta_original": c.original, "eta_substituted": c.substituted,
                 "equal": c.equal} for c in self.invariance],
            "invariant": self.invariant,
        }


def invariance_check(p: Presentation, e: Endomorphism, N: int, repeats: int = 1,
                     jobs: int = 1) -> SubstitutionReport:
    """Census ``p`` and its image under ``e`` (applied ``repeats`` times) to index ``N``."""
    if e.rank < p.rank:
        raise ValueError(f"map defines {e.rank} generators, presentation has {p.rank}")
    if repeats < 0:
        raise ValueError("repeats must be non-negative")
    q = p.map_relators(e, repeats)
    m = substitution_matrix(e)
    pf = pf_analysis(m)
    before = low_index_census(p, N, jobs=jobs).eta
    after = low_index_census(q, N, jobs=jobs).eta
    rows = [IndexComparison(d + 1, a, b) for d, (a, b) in enumerate(zip(before, after))]
    return SubstitutionReport(m, pf.primitive, pf.char_poly, pf.pf_eigenvalue, rows, q)
