"""Exact sparse multivariate polynomials over the integers.

Terms live in a dict mapping exponent tuples to nonzero Python ints.  The
monomial order is graded lexicographic with variable 0 largest, so for three
variables ``x > y > z``.  Canonical outputs (``primitive``, ``gcd``) have
content 1 and a positive leading coefficient.
"""

from __future__ import annotations

import heapq
import re
from fractions import Fraction
from functools import reduce
from math import gcd as igcd
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]

_DEFAULT_NAMES = {
    1: ("x",),
    2: ("x", "y"),
    3: ("x", "y", "z"),
    4: ("x", "y", "z", "t"),
    7: ("k", "x", "y", "z", "u", "v", "w"),
}


def default_names(nvars: int) -> tuple[str, ...]:
    return _DEFAULT_NAMES.get(nvars, tuple(f"x{i}" for i in range(nvars)))


class NotDivisibleError(ArithmeticError):
    """The divisor does not divide the dividend exactly."""


def _grlex_key(e: Monomial):
    return (sum(e), e)


class SparsePoly:
    """Immutable integer polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, int] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != nvars:
                        raise ValueError(f"exponent {e} does not have {nvars} entries")
                    clean[tuple(e)] = int(c)
        self.terms: dict[Monomial, int] = clean
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Monomial, int]) -> "SparsePoly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "SparsePoly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c: int) -> "SparsePoly":
        return cls._raw(nvars, {(0,) * nvars: int(c)} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "SparsePoly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): 1})

    @classmethod
    def gens(cls, nvars: int) -> tuple["SparsePoly", ...]:
        return tuple(cls.var(nvars, i) for i in range(nvars))

    @classmethod
    def parse(cls, text: str, names: Sequence[str] | None = None, nvars: int | None = None) -> "SparsePoly":
        if names is None:
            names = default_names(nvars if nvars is not None else 3)
        return _PolyParser(text, tuple(names)).parse()

    # basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=_grlex_key)

    def leading_coefficient(self) -> int:
        return self.terms[self.leading_monomial()] if self.terms else 0

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def content(self) -> int:
        return reduce(igcd, self.terms.values(), 0)

    def primitive(self) -> "SparsePoly":
        """Divide out the content and make the leading coefficient positive."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        if c == 1:
            return self
        return SparsePoly._raw(self.nvars, {e: v // c for e, v in self.terms.items()})

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, int):
            return SparsePoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return SparsePoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return SparsePoly.zero(self.nvars)
            return SparsePoly._raw(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Monomial, int] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(map(int.__add__, ea, eb))
                out[e] = get(e, 0) + ca * cb
        return SparsePoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = SparsePoly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == ({(0,) * self.nvars: other} if other else {})
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def equal_up_to_sign(self, other: "SparsePoly") -> bool:
        return self == other or self == -other

    # division -----------------------------------------------------------

    def try_divide(self, g: "SparsePoly") -> "SparsePoly | None":
        """Exact quotient ``self / g`` or ``None`` when ``g`` does not divide."""
        g = self._coerce(g)
        if not g.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return self
        eg = g.leading_monomial()
        cg = g.terms[eg]
        if len(g.terms) == 1:
            out = {}
            for e, c in self.terms.items():
                m = tuple(map(int.__sub__, e, eg))
                if min(m) < 0 or c % cg:
                    return None
                out[m] = c // cg
            return SparsePoly._raw(self.nvars, out)
        if self.degree() < g.degree():
            return None
        rest = [(e, c) for e, c in g.terms.items() if e != eg]
        r = dict(self.terms)
        heap = [(-sum(e), tuple(-k for k in e)) for e in r]
        heapq.heapify(heap)
        q: dict[Monomial, int] = {}
        while r:
            while True:
                _, neg = heapq.heappop(heap)
                e = tuple(-k for k in neg)
                if e in r:
                    break
            c = r.pop(e)
            m = tuple(map(int.__sub__, e, eg))
            if min(m) < 0 or c % cg:
                return None
            qc = c // cg
            q[m] = qc
            for eh, ch in rest:
                k = tuple(map(int.__add__, m, eh))
                old = r.get(k)
                if old is None:
                    r[k] = -qc * ch
                    heapq.heappush(heap, (-sum(k), tuple(-x for x in k)))
                else:
                    v = old - qc * ch
                    if v:
                        r[k] = v
                    else:
                        del r[k]
        return SparsePoly._raw(self.nvars, q)

    def exact_divide(self, g: "SparsePoly") -> "SparsePoly":
        q = self.try_divide(g)
        if q is None:
            raise NotDivisibleError("divisor does not divide exactly")
        return q

    def divides(self, f: "SparsePoly") -> bool:
        """True when ``self`` divides ``f``."""
        return f.try_divide(self) is not None

    # calculus and evaluation -------------------------------------------

    def diff(self, i: int) -> "SparsePoly":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable {i} out of range for {self.nvars} variables")
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                m = list(e)
                m[i] -= 1
                out[tuple(m)] = c * e[i]
        return SparsePoly._raw(self.nvars, out)

    def evaluate(self, point: Sequence) -> int | Fraction:
        """Exact value at ``point`` (ints or Fractions; other numbers pass through)."""
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        powers: list[dict[int, object]] = [{0: 1} for _ in range(self.nvars)]

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = point[i] ** k
            return cache[k]

        total = 0
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    t = t * pw(i, k)
            total = total + t
        return total

    def __call__(self, *point):
        return self.evaluate(point)

    def homogenize(self) -> "SparsePoly":
        """Append a variable ``t`` making every term of degree ``self.degree()``."""
        d = max(self.degree(), 0)
        return SparsePoly._raw(self.nvars + 1,
                               {e + (d - sum(e),): c for e, c in self.terms.items()})

    def dehomogenize(self, i: int | None = None) -> "SparsePoly":
        """Set variable ``i`` (default the last) to 1 and drop it."""
        i = self.nvars - 1 if i is None else i
        out: dict[Monomial, int] = {}
        for e, c in self.terms.items():
            m = e[:i] + e[i + 1:]
            out[m] = out.get(m, 0) + c
        return SparsePoly(self.nvars - 1, out)

    def rename(self, perm: Sequence[int], nvars: int | None = None) -> "SparsePoly":
        """Send variable ``i`` to variable ``perm[i]`` in a ring of ``nvars`` variables."""
        n = self.nvars if nvars is None else nvars
        out = {}
        for e, c in self.terms.items():
            m = [0] * n
            for i, k in enumerate(e):
                if k:
                    m[perm[i]] += k
            out[tuple(m)] = c
        return SparsePoly._raw(n, out)

    def substitute(self, i: int, value: "SparsePoly | int") -> "SparsePoly":
        """Replace variable ``i`` by ``value`` (same ring)."""
        value = self._coerce(value)
        out = SparsePoly.zero(self.nvars)
        by_deg: dict[int, dict[Monomial, int]] = {}
        for e, c in self.terms.items():
            m = list(e)
            k = m[i]
            m[i] = 0
            by_deg.setdefault(k, {})[tuple(m)] = c
        for k in sorted(by_deg):
            out = out + SparsePoly._raw(self.nvars, by_deg[k]) * value ** k
        return out

    # printing -----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = tuple(names) if names is not None else default_names(self.nvars)
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k)
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(("+ " if c > 0 else "- ") + body)
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"SparsePoly({self.nvars}, {self.to_str()!r})"


class _PolyParser:
    """expr := ['+'|'-'] term (('+'|'-') term)* ; term := factor ('*'? factor)* ;
    factor := atom ('^' int)? ; atom := int | name | '(' expr ')'"""

    def __init__(self, text: str, names: tuple[str, ...]):
        self.names = names
        pattern = "|".join(re.escape(n) for n in sorted(names, key=len, reverse=True))
        tok = re.compile(rf"\s*(?:(\d+)|({pattern})|(\*\*|[-+*^()]))")
        self.toks: list[tuple[str, str]] = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = tok.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial near {text[pos:pos + 10]!r}")
            if m.group(1):
                self.toks.append(("int", m.group(1)))
            elif m.group(2):
                self.toks.append(("name", m.group(2)))
            else:
                self.toks.append(("op", "^" if m.group(3) == "**" else m.group(3)))
            pos = m.end()
        self.i = 0
        self.n = len(names)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "")

    def parse(self) -> SparsePoly:
        if not self.toks:
            raise ValueError("empty polynomial text")
        p = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> SparsePoly:
        sign = 1
        if self.peek() in (("op", "+"), ("op", "-")):
            sign = -1 if self.toks[self.i][1] == "-" else 1
            self.i += 1
        p = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.toks[self.i][1]
            self.i += 1
            t = self.term()
            p = p + t if op == "+" else p - t
        return p

    def term(self) -> SparsePoly:
        p = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.i += 1
                p = p * self.factor()
            elif kind in ("int", "name") or (kind == "op" and val == "("):
                p = p * self.factor()
            else:
                return p

    def factor(self) -> SparsePoly:
        p = self.atom()
        if self.peek() == ("op", "^"):
            self.i += 1
            kind, val = self.peek()
            if kind != "int":
                raise ValueError("exponent must be a non-negative integer")
            self.i += 1
            p = p ** int(val)
        return p

    def atom(self) -> SparsePoly:
        kind, val = self.peek()
        self.i += 1
        if kind == "int":
            return SparsePoly.const(self.n, int(val))
        if kind == "name":
            return SparsePoly.var(self.n, self.names.index(val))
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.peek() != ("op", ")"):
                raise ValueError("missing ')'")
            self.i += 1
            return p
        raise ValueError(f"unexpected token {val!r}")


# --- GCD -------------------------------------------------------------------
#
# Recursive scheme: pick a main variable present in both inputs, split off the
# content with respect to it (a GCD in fewer variables), and run the
# subresultant PRS on the primitive parts with coefficients in the remaining
# variables.

def _coeffs_in(f: SparsePoly, v: int) -> dict[int, SparsePoly]:
    parts: dict[int, dict[Monomial, int]] = {}
    for e, c in f.terms.items():
        k = e[v]
        m = e[:v] + (0,) + e[v + 1:]
        parts.setdefault(k, {})[m] = c
    return {k: SparsePoly._raw(f.nvars, t) for k, t in parts.items()}


def _from_coeffs(cs: Mapping[int, SparsePoly], v: int, nvars: int) -> SparsePoly:
    out: dict[Monomial, int] = {}
    for k, p in cs.items():
        for e, c in p.terms.items():
            out[e[:v] + (k,) + e[v + 1:]] = c
    return SparsePoly._raw(nvars, out)


def _content_in(f: SparsePoly, v: int) -> SparsePoly:
    cs = sorted(_coeffs_in(f, v).values(), key=len)
    return gcd_list(cs)


def _prem(a: dict[int, SparsePoly], b: dict[int, SparsePoly]) -> dict[int, SparsePoly]:
    """Pseudo-remainder ``lc(b)^(deg a - deg b + 1) * a mod b`` in the main variable."""
    db = max(b)
    lcb = b[db]
    r = dict(a)
    steps = max(a) - db + 1
    while r and max(r) >= db:
        dr = max(r)
        lcr = r[dr]
        shift = dr - db
        new = {k: c * lcb for k, c in r.items() if k != dr}
        for k, c in b.items():
            if k == db:
                continue
            t = new.get(k + shift)
            val = (t if t is not None else 0) - lcr * c
            if isinstance(val, int):
                val = SparsePoly.const(lcb.nvars, val)
            if val.is_zero():
                new.pop(k + shift, None)
            else:
                new[k + shift] = val
        r = new
        steps -= 1
    if steps > 0 and r:
        m = lcb ** steps
        r = {k: c * m for k, c in r.items()}
    return r


def _prs_gcd(f: SparsePoly, g: SparsePoly, v: int) -> SparsePoly:
    """GCD of two polynomials primitive in variable ``v``."""
    a, b = _coeffs_in(f, v), _coeffs_in(g, v)
    if max(a) < max(b):
        a, b = b, a
    one = SparsePoly.const(f.nvars, 1)
    g_, h = one, one
    while True:
        delta = max(a) - max(b)
        r = _prem(a, b)
        if not r:
            break
        if max(r) == 0:
            return one
        div = g_ * h ** delta
        a, b = b, {k: c.exact_divide(div) for k, c in r.items()}
        g_ = a[max(a)]
        if delta:
            h = (g_ ** delta).exact_divide(h ** (delta - 1))
    res = _from_coeffs(b, v, f.nvars)
    return res.exact_divide(_content_in(res, v)).primitive()


def gcd(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    """Primitive greatest common divisor, positive leading coefficient."""
    if f.nvars != g.nvars:
        raise ValueError(f"variable count mismatch: {f.nvars} vs {g.nvars}")
    n = f.nvars
    if f.is_zero():
        return g.primitive() if not g.is_zero() else g
    if g.is_zero():
        return f.primitive()
    if f.is_constant() or g.is_constant():
        return SparsePoly.const(n, 1)
    if len(f) > len(g):
        f, g = g, f
    if g.try_divide(f) is not None:
        return f.primitive()
    vf, vg = f.variables(), g.variables()
    for v in sorted(vf - vg):
        return gcd(_content_in(f, v), g)
    for v in sorted(vg - vf):
        return gcd(f, _content_in(g, v))
    v = min(vf, key=lambda i: (max(f.degree_in(i), g.degree_in(i)), i))
    cf, cg = _content_in(f, v), _content_in(g, v)
    pf, pg = f.exact_divide(cf), g.exact_divide(cg)
    c = gcd(cf, cg)
    p = _prs_gcd(pf, pg, v)
    return (c * p).primitive()


def gcd_list(polys: Iterable[SparsePoly]) -> SparsePoly:
    """GCD of many polynomials, folding smallest first with a divisibility shortcut."""
    polys = sorted((p for p in polys if not p.is_zero()), key=len)
    if not polys:
        raise ValueError("gcd of an empty or all-zero list")
    acc = polys[0].primitive()
    for p in polys[1:]:
        if acc.is_constant():
            break
        if p.try_divide(acc) is None:
            acc = gcd(acc, p)
    return acc
